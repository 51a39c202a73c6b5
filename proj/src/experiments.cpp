#include "specenh/experiments.hpp"

#include <cmath>
#include <complex>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <numbers>

#include "specenh/errors.hpp"
#include "specenh/io.hpp"

namespace specenh {

namespace {

constexpr double nan_value = std::numeric_limits<double>::quiet_NaN();

std::string num(double value) {
  char buffer[40];
  std::snprintf(buffer, sizeof(buffer), "%.17g", value);
  return buffer;
}

std::string short_num(double value) {
  char buffer[40];
  std::snprintf(buffer, sizeof(buffer), "%g", value);
  return buffer;
}

// Damping just above the transform roundoff floor: strong enough to pin the
// amplified roundoff beyond the live band of exp(-w^2/2 + kappa w), weak
// enough to leave every bin with relative amplitude above ~1% untouched.
double floor_damping_alpha(double kappa) {
  return 0.01 * std::exp(-2.0 * kappa * (kappa + std::sqrt(10.0)));
}

SampledSpectrum unit_line(const Grid& grid) {
  return broaden(LineSpectrum::make({{0.0, 1.0}}), KernelSpec::gaussian_unit(),
                 grid);
}

double off_peak_amplitude(const SampledSpectrum& g, double window) {
  double worst = 0.0;
  for (int j = 0; j < g.grid.n; ++j)
    if (std::abs(g.grid.point(j)) > window)
      worst = std::max(worst, std::abs(g.values[j]));
  return worst;
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out)
    throw ConfigError("io: cannot open " + path.string() + " for writing");
  return out;
}

} // namespace

NarrowingSweep run_narrowing_sweep() {
  NarrowingSweep sweep;
  sweep.grid = Grid{2048, 64.0};
  sweep.input = unit_line(sweep.grid);
  sweep.fwhm_before = fwhm(sweep.input);
  for (double kappa :
       {std::numbers::sqrt2, 2.0, 3.0, 4.0}) {
    const double alpha = floor_damping_alpha(kappa);
    const auto result = deconvolve(sweep.input, KernelSpec::lorentz_width(kappa),
                                   {RegMethod::Tikhonov, alpha});
    NarrowingPoint point;
    point.kappa = kappa;
    point.alpha = alpha;
    point.fwhm_ratio = fwhm(result.enhanced) / sweep.fwhm_before;
    for (double v : result.enhanced.values)
      point.lowest_value = std::min(point.lowest_value, v);
    sweep.points.push_back(point);
    sweep.profiles.push_back(result.enhanced);
  }
  return sweep;
}

DampingSweep run_damping_sweep(double noise_level, std::uint64_t seed) {
  if (!(noise_level >= 0.0))
    throw DomainError("damping sweep: noise level must be >= 0, got " +
                      std::to_string(noise_level));
  DampingSweep sweep;
  sweep.grid = Grid{2048, 64.0};
  sweep.kappa = 2.0;
  sweep.noise_level = noise_level;
  sweep.seed = seed;
  const auto clean = unit_line(sweep.grid);
  sweep.input = noise_level > 0.0 ? add_noise(clean, noise_level, seed) : clean;
  sweep.fwhm_before = fwhm(clean);
  const double window = 3.0 * sweep.fwhm_before;
  std::vector<double> ladder = {1e-1, 1e-2, 1e-3, 1e-4};
  // Noiseless sweeps close with the unregularized limit: damping pinned at
  // the transform roundoff floor stands in for zero damping, which the grid
  // cannot realize without amplifying roundoff into the live band.
  if (noise_level == 0.0)
    ladder.push_back(floor_damping_alpha(sweep.kappa));
  for (double alpha : ladder) {
    const auto result = deconvolve(sweep.input, KernelSpec::lorentz_width(sweep.kappa),
                                   {RegMethod::Tikhonov, alpha});
    DampingPoint point;
    point.alpha = alpha;
    point.residual = result.residual;
    try {
      point.fwhm_ratio = fwhm(result.enhanced) / sweep.fwhm_before;
    } catch (const MeasurementError&) {
      point.fwhm_ratio = nan_value;
    }
    point.off_peak_amplitude = off_peak_amplitude(result.enhanced, window);
    sweep.points.push_back(point);
    sweep.profiles.push_back(result.enhanced);
  }
  return sweep;
}

namespace {

// Log symbol of the sharpened target each condition family aims at: the
// matched data shape with the enhancement factor removed.
double truth_log_symbol(const SourceCondition& cond,
                        const KernelSpec& enhancement, double w) {
  if (cond.kind == ConditionKind::LorentzOnVoigt)
    return log_fourier_symbol(KernelSpec::voigt(cond.theta), w) -
           log_fourier_symbol(enhancement, w);
  return log_fourier_symbol(KernelSpec::gaussian_unit(), w);
}

// Frequency-domain synthesis of the target keeps the enhancement's growing
// symbol away from transform roundoff; dividing broadened samples instead
// would amplify that roundoff by exp(kappa * w) at the band edge.
SampledSpectrum sharpened_target(const LineSpectrum& lines, const Grid& grid,
                                 const SourceCondition& cond,
                                 const KernelSpec& enhancement) {
  const double inv_sqrt_two_pi = 1.0 / std::sqrt(2.0 * std::numbers::pi);
  std::vector<std::complex<double>> freq(grid.n);
  for (int k = 0; k < grid.n; ++k) {
    const double w = grid.angular_frequency(k);
    std::complex<double> u(0.0, 0.0);
    for (const Line& line : lines.lines)
      u += line.intensity *
           std::complex<double>(std::cos(w * line.location),
                                -std::sin(w * line.location));
    freq[k] = u * (std::exp(truth_log_symbol(cond, enhancement, w)) *
                   inv_sqrt_two_pi);
  }
  return freq_to_spectrum(grid, freq);
}

RateStudy run_rate_study_for(const std::string& label,
                             const SourceCondition& cond,
                             std::uint64_t seed) {
  RateStudy study;
  study.label = label;
  study.grid = Grid{512, 64.0};
  study.condition = cond;
  study.kernel = cond.kind == ConditionKind::EddingtonGaussian
                     ? KernelSpec::eddington_inverse(cond.k)
                     : KernelSpec::lorentz_width(cond.kappa);
  study.tau = 1.1;
  study.seed = seed;

  const auto truth_lines =
      LineSpectrum::make({{-4.0, 1.5}, {0.0, 1.0}, {3.0, 0.8}});
  const auto truth = sharpened_target(truth_lines, study.grid, cond, study.kernel);
  const auto clean = convolve(truth, study.kernel);
  const double clean_norm = clean.l2_norm();
  const auto qf_data = psi_norm(clean, cond, study.kernel);

  const double targets[] = {1e-2, 3.16e-3, 1e-3, 3.16e-4, 1e-4,
                            3.16e-5, 1e-5, 3.16e-6, 1e-6};
  int run = 0;
  for (double target : targets) {
    const auto noisy = add_noise(clean, target, seed + run++);
    const double delta = target * clean_norm;
    const double alpha = choose_alpha_discrepancy(
        noisy, study.kernel, RegMethod::SpectralCutoff, delta, study.tau);
    const auto result = deconvolve(noisy, study.kernel,
                                   {RegMethod::SpectralCutoff, alpha});
    const auto reconvolved = convolve(result.enhanced, study.kernel);

    RatePoint point;
    point.target_noise = target;
    point.alpha = alpha;
    point.epsilon = l2_distance(reconvolved, clean);
    point.error = l2_distance(result.enhanced, truth);
    const auto qf_stable = psi_norm(reconvolved, cond, study.kernel);
    if (qf_data.finite && qf_stable.finite && point.epsilon > 0.0)
      point.bound = enhancement_error_bound(
          point.epsilon, std::sqrt(qf_stable.value) + std::sqrt(qf_data.value),
          cond);
    else
      point.bound = std::numeric_limits<double>::infinity();
    try {
      point.predicted_exponent = 1.0 - rate_deficit(cond, point.epsilon);
      point.rate_reference = std::pow(point.epsilon, point.predicted_exponent);
    } catch (const BoundInvalidError&) {
      point.predicted_exponent = nan_value;
      point.rate_reference = nan_value;
    }
    study.points.push_back(point);
  }

  // least-squares slope of log error against log epsilon
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  const double m = static_cast<double>(study.points.size());
  for (const auto& point : study.points) {
    const double x = std::log(point.epsilon);
    const double y = std::log(point.error);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  study.slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
  return study;
}

} // namespace

RateStudy run_rate_study(std::uint64_t seed) {
  return run_rate_study_for("lorentz_on_gaussian",
                            SourceCondition::lorentz_on_gaussian(1.0), seed);
}

std::vector<RateStudy> run_rate_studies(std::uint64_t seed) {
  std::vector<RateStudy> studies;
  studies.push_back(run_rate_study(seed));
  studies.push_back(run_rate_study_for(
      "eddington_gaussian", SourceCondition::eddington_gaussian(1), seed));
  studies.push_back(run_rate_study_for(
      "lorentz_on_voigt", SourceCondition::lorentz_on_voigt(1.0, 0.5), seed));
  return studies;
}

void write_narrowing_sweep(const std::string& out_dir,
                           const NarrowingSweep& sweep) {
  const std::filesystem::path dir(out_dir);
  std::filesystem::create_directories(dir);
  write_spectrum_csv((dir / "input.csv").string(), sweep.input);
  auto summary = open_out(dir / "summary.csv");
  summary << "kappa,alpha,fwhm_ratio,lowest_value\n";
  for (std::size_t i = 0; i < sweep.points.size(); ++i) {
    const auto& p = sweep.points[i];
    summary << num(p.kappa) << "," << num(p.alpha) << "," << num(p.fwhm_ratio)
            << "," << num(p.lowest_value) << "\n";
    write_spectrum_csv(
        (dir / ("enhanced_kappa_" + short_num(p.kappa) + ".csv")).string(),
        sweep.profiles[i]);
  }
  save_json((dir / "meta.json").string(),
            json{{"grid", sweep.grid}, {"fwhm_before", sweep.fwhm_before}});
}

void write_damping_sweep(const std::string& out_dir, const DampingSweep& sweep) {
  const std::filesystem::path dir(out_dir);
  std::filesystem::create_directories(dir);
  write_spectrum_csv((dir / "input.csv").string(), sweep.input);
  auto summary = open_out(dir / "summary.csv");
  summary << "alpha,fwhm_ratio,residual,off_peak_amplitude\n";
  for (std::size_t i = 0; i < sweep.points.size(); ++i) {
    const auto& p = sweep.points[i];
    summary << num(p.alpha) << "," << num(p.fwhm_ratio) << ","
            << num(p.residual) << "," << num(p.off_peak_amplitude) << "\n";
    write_spectrum_csv(
        (dir / ("enhanced_alpha_" + short_num(p.alpha) + ".csv")).string(),
        sweep.profiles[i]);
  }
  save_json((dir / "meta.json").string(),
            json{{"grid", sweep.grid},
                 {"kappa", sweep.kappa},
                 {"noise_level", sweep.noise_level},
                 {"seed", sweep.seed},
                 {"fwhm_before", sweep.fwhm_before}});
}

void write_rate_study(const std::string& out_dir, const RateStudy& study) {
  const std::filesystem::path dir(out_dir);
  std::filesystem::create_directories(dir);
  auto points = open_out(dir / "points.csv");
  points << "target_noise,alpha,epsilon,error,bound,predicted_exponent,"
            "rate_reference\n";
  for (const auto& p : study.points)
    points << num(p.target_noise) << "," << num(p.alpha) << ","
           << num(p.epsilon) << "," << num(p.error) << "," << num(p.bound)
           << "," << num(p.predicted_exponent) << ","
           << num(p.rate_reference) << "\n";
  save_json((dir / "study.json").string(),
            json{{"label", study.label},
                 {"grid", study.grid},
                 {"kernel", study.kernel},
                 {"condition", study.condition},
                 {"tau", study.tau},
                 {"seed", study.seed},
                 {"slope", study.slope}});
}

} // namespace specenh
