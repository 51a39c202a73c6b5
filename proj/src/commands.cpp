#include "specenh/commands.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <numbers>
#include <vector>

#include "specenh/bounds.hpp"
#include "specenh/enhance.hpp"
#include "specenh/errors.hpp"
#include "specenh/experiments.hpp"
#include "specenh/fitting.hpp"
#include "specenh/grid.hpp"

namespace specenh {

namespace {

constexpr std::uint64_t default_seed = 20090101;

std::string num(double value) {
  char buffer[40];
  std::snprintf(buffer, sizeof(buffer), "%.17g", value);
  return buffer;
}

std::filesystem::path ensure_dir(const std::string& out_dir) {
  const std::filesystem::path dir(out_dir);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec)
    throw ConfigError("io: cannot create directory " + dir.string() + ": " +
                      ec.message());
  return dir;
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out)
    throw ConfigError("io: cannot open " + path.string() + " for writing");
  return out;
}

const json& require(const json& config, const char* key, const char* context) {
  if (!config.contains(key))
    throw ConfigError(std::string(context) + ": missing required field \"" +
                      key + "\"");
  return config.at(key);
}

Grid grid_or_default(const json& config) {
  return config.contains("grid") ? config.at("grid").get<Grid>() : Grid{};
}

LineSpectrum lines_or_default(const json& config) {
  return config.contains("lines") ? config.at("lines").get<LineSpectrum>()
                                  : LineSpectrum::make({{0.0, 1.0}});
}

KernelSpec broadening_or_default(const json& config) {
  return config.contains("broadening")
             ? config.at("broadening").get<KernelSpec>()
             : KernelSpec::gaussian_unit();
}

std::uint64_t resolve_seed(const json& config,
                           std::optional<std::uint64_t> seed) {
  if (seed) return *seed;
  return config.value("seed", default_seed);
}

// The matched source condition for a known data shape under a given
// enhancement, when the pair belongs to one of the covered families.
std::optional<SourceCondition> derive_condition(const KernelSpec& shape,
                                                const KernelSpec& enhancement) {
  const bool gaussian_data = shape.family == KernelFamily::GaussianUnit;
  const bool voigt_data = shape.family == KernelFamily::Voigt;
  switch (enhancement.family) {
  case KernelFamily::LorentzWidth:
    if (gaussian_data)
      return SourceCondition::lorentz_on_gaussian(enhancement.kappa);
    if (voigt_data)
      return SourceCondition::lorentz_on_voigt(enhancement.kappa, shape.theta);
    return std::nullopt;
  case KernelFamily::LorentzUnit:
    if (gaussian_data)
      return SourceCondition::lorentz_on_gaussian(std::numbers::sqrt2);
    if (voigt_data)
      return SourceCondition::lorentz_on_voigt(std::numbers::sqrt2,
                                               shape.theta);
    return std::nullopt;
  case KernelFamily::EddingtonInverse:
    if (gaussian_data && enhancement.k >= 1)
      return SourceCondition::eddington_gaussian(enhancement.k);
    return std::nullopt;
  default:
    return std::nullopt;
  }
}

} // namespace

void cmd_synth(const json& config, const std::string& out_dir,
               std::optional<std::uint64_t> seed) {
  const auto dir = ensure_dir(out_dir);
  const Grid grid = grid_or_default(config);
  const LineSpectrum lines = lines_or_default(config);
  const KernelSpec broadening = broadening_or_default(config);
  const double noise_level = config.value("noise_level", 0.05);
  if (!(noise_level >= 0.0))
    throw DomainError("synth: noise_level must be >= 0, got " +
                      std::to_string(noise_level));

  const auto spectrum = broaden(lines, broadening, grid);
  write_lines_csv((dir / "truth.csv").string(), lines);
  write_spectrum_csv((dir / "spectrum.csv").string(), spectrum);
  if (noise_level > 0.0)
    write_spectrum_csv(
        (dir / "noisy.csv").string(),
        add_noise(spectrum, noise_level, resolve_seed(config, seed)));
}

json cmd_enhance(const json& config, const std::string& out_dir,
                 std::optional<std::uint64_t> seed) {
  const auto dir = ensure_dir(out_dir);

  SampledSpectrum data;
  std::optional<KernelSpec> data_shape;
  if (config.contains("input")) {
    data = read_spectrum_csv(config.at("input").get<std::string>());
    if (config.contains("broadening"))
      data_shape = config.at("broadening").get<KernelSpec>();
  } else {
    const KernelSpec broadening = broadening_or_default(config);
    data_shape = broadening;
    data = broaden(lines_or_default(config), broadening,
                   grid_or_default(config));
    const double noise_level = config.value("noise_level", 0.0);
    if (noise_level > 0.0)
      data = add_noise(data, noise_level, resolve_seed(config, seed));
  }

  const KernelSpec enhancement =
      require(config, "enhancement", "enhance").get<KernelSpec>();

  const json& reg_json = require(config, "reg", "enhance");
  RegularizationConfig reg =
      json{{"method", require(reg_json, "method", "enhance reg")},
           {"alpha", 0.0}}
          .get<RegularizationConfig>();
  if (reg_json.contains("alpha")) {
    reg.alpha = reg_json.at("alpha").get<double>();
  } else if (reg_json.contains("delta") || reg_json.contains("noise_level")) {
    const double delta =
        reg_json.contains("delta")
            ? reg_json.at("delta").get<double>()
            : reg_json.at("noise_level").get<double>() * data.l2_norm();
    reg.alpha = choose_alpha_discrepancy(data, enhancement, reg.method, delta,
                                         reg_json.value("tau", 1.1));
  } else {
    throw ConfigError("enhance reg: provide \"alpha\" for a fixed choice or "
                      "\"delta\"/\"noise_level\" for the discrepancy choice");
  }

  std::optional<SourceCondition> condition;
  if (config.contains("condition"))
    condition = config.at("condition").get<SourceCondition>();
  else if (data_shape)
    condition = derive_condition(*data_shape, enhancement);

  const auto result =
      deconvolve(data, enhancement, reg, condition ? &*condition : nullptr);

  const double before = fwhm(data);
  json after = nullptr;
  json ratio = nullptr;
  try {
    const double width = fwhm(result.enhanced);
    after = width;
    ratio = width / before;
  } catch (const MeasurementError&) {
    // no clean half-height crossing: keep the fields null
  }

  const json report{
      {"alpha", result.alpha},
      {"residual", result.residual},
      {"psi_norm", result.psi_norm ? json(*result.psi_norm) : json(nullptr)},
      {"bound", result.bound ? json(*result.bound) : json(nullptr)},
      {"fwhm", json{{"before", before}, {"after", after}, {"ratio", ratio}}}};

  write_spectrum_csv((dir / "enhanced.csv").string(), result.enhanced);
  save_json((dir / "report.json").string(), report);
  return report;
}

void cmd_experiment(const std::string& name, const std::string& out_dir,
                    std::optional<std::uint64_t> seed) {
  const std::uint64_t used_seed = seed.value_or(default_seed);
  if (name == "fig1") {
    write_narrowing_sweep(out_dir, run_narrowing_sweep());
  } else if (name == "fig2") {
    write_damping_sweep(out_dir, run_damping_sweep(0.0, used_seed));
  } else if (name == "fig3") {
    write_damping_sweep(out_dir, run_damping_sweep(0.05, used_seed));
  } else if (name == "rates") {
    const auto dir = ensure_dir(out_dir);
    for (const auto& study : run_rate_studies(used_seed))
      write_rate_study((dir / study.label).string(), study);
  } else {
    throw ConfigError("experiment: unknown name \"" + name +
                      "\" (expected fig1, fig2, fig3, or rates)");
  }
}

void cmd_bound(const json& config, const std::string& out_dir) {
  const auto dir = ensure_dir(out_dir);
  const SourceCondition cond =
      require(config, "condition", "bound").get<SourceCondition>();
  const double stability = config.value("stability_plus_data", 1.0);
  std::vector<double> epsilons;
  if (config.contains("epsilons"))
    epsilons = config.at("epsilons").get<std::vector<double>>();

  auto out = open_out(dir / "bounds.csv");
  out << "epsilon,deficit,exponent,bound\n";
  constexpr double nan_value = std::numeric_limits<double>::quiet_NaN();
  for (double eps : epsilons) {
    double deficit = nan_value;
    double exponent = nan_value;
    double bound = nan_value;
    std::string note;
    try {
      deficit = rate_deficit_value(cond, eps);
    } catch (const DomainError&) {
      note = "epsilon outside (0, 1/e)";
    }
    if (std::isfinite(deficit)) {
      if (deficit < 1.0) {
        exponent = 1.0 - deficit;
        try {
          bound = enhancement_error_bound(eps, stability, cond);
        } catch (const Error& e) {
          note = e.what();
        }
      } else {
        note = "rate deficit " + std::to_string(deficit) +
               " >= 1, no convergence exponent";
      }
    }
    if (!note.empty())
      std::cerr << "warning: epsilon " << num(eps) << ": " << note << "\n";
    out << num(eps) << "," << num(deficit) << "," << num(exponent) << ","
        << num(bound) << "\n";
  }
}

json cmd_fit(const json& config, const std::string& out_dir) {
  const auto dir = ensure_dir(out_dir);
  const auto data =
      read_spectrum_csv(require(config, "input", "fit").get<std::string>());
  const auto initial =
      require(config, "initial_locations", "fit").get<std::vector<double>>();
  FitOptions options;
  options.max_iterations = config.value("max_iterations", 50);
  options.gradient_tolerance = config.value("gradient_tolerance", 1e-10);

  FitResult result;
  if (config.contains("shape")) {
    const auto shape =
        read_spectrum_csv(config.at("shape").get<std::string>());
    result = varpro_fit_shape(data, shape, initial, options);
  } else if (config.contains("kernel")) {
    result = varpro_fit(data, config.at("kernel").get<KernelSpec>(), initial,
                        options);
  } else {
    throw ConfigError(
        "fit: provide a \"kernel\" spec or a sampled \"shape\" CSV");
  }

  auto out = open_out(dir / "lines.csv");
  out << "line,location,intensity\n";
  int index = 1;
  for (const auto& line : result.lines.lines)
    out << index++ << "," << num(line.location) << "," << num(line.intensity)
        << "\n";

  const json report{{"residual_norm", result.residual_norm},
                    {"condition", result.condition},
                    {"iterations", result.iterations},
                    {"converged", result.converged}};
  save_json((dir / "report.json").string(), report);
  return report;
}

} // namespace specenh
