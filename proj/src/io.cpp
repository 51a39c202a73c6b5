#include "specenh/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

#include "specenh/errors.hpp"

namespace specenh {

namespace {

std::string full_precision(double value) {
  char buffer[40];
  std::snprintf(buffer, sizeof(buffer), "%.17g", value);
  return buffer;
}

KernelFamily parse_family(const std::string& name) {
  if (name == "gaussian_unit" || name == "GaussianUnit")
    return KernelFamily::GaussianUnit;
  if (name == "gaussian_width" || name == "GaussianWidth")
    return KernelFamily::GaussianWidth;
  if (name == "lorentz_unit" || name == "LorentzUnit")
    return KernelFamily::LorentzUnit;
  if (name == "lorentz_width" || name == "LorentzWidth")
    return KernelFamily::LorentzWidth;
  if (name == "voigt" || name == "Voigt") return KernelFamily::Voigt;
  if (name == "eddington_inverse" || name == "EddingtonInverse")
    return KernelFamily::EddingtonInverse;
  throw ConfigError("config: unknown kernel family \"" + name + "\"");
}

std::string family_json_name(KernelFamily family) {
  switch (family) {
  case KernelFamily::GaussianUnit: return "gaussian_unit";
  case KernelFamily::GaussianWidth: return "gaussian_width";
  case KernelFamily::LorentzUnit: return "lorentz_unit";
  case KernelFamily::LorentzWidth: return "lorentz_width";
  case KernelFamily::Voigt: return "voigt";
  case KernelFamily::EddingtonInverse: return "eddington_inverse";
  }
  return "unknown";
}

ConditionKind parse_condition_kind(const std::string& name) {
  if (name == "eddington_gaussian" || name == "EddingtonGaussian")
    return ConditionKind::EddingtonGaussian;
  if (name == "lorentz_on_gaussian" || name == "LorentzOnGaussian")
    return ConditionKind::LorentzOnGaussian;
  if (name == "lorentz_on_voigt" || name == "LorentzOnVoigt")
    return ConditionKind::LorentzOnVoigt;
  throw ConfigError("config: unknown source condition kind \"" + name + "\"");
}

std::string condition_json_name(ConditionKind kind) {
  switch (kind) {
  case ConditionKind::EddingtonGaussian: return "eddington_gaussian";
  case ConditionKind::LorentzOnGaussian: return "lorentz_on_gaussian";
  case ConditionKind::LorentzOnVoigt: return "lorentz_on_voigt";
  }
  return "unknown";
}

template <typename T>
T require_field(const json& j, const char* key, const char* context) {
  if (!j.contains(key))
    throw ConfigError(std::string("config: ") + context +
                      " is missing the field \"" + key + "\"");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config: field \"") + key + "\" of " +
                      context + " has the wrong type (" + e.what() + ")");
  }
}

} // namespace

void to_json(json& j, const KernelSpec& spec) {
  j = json{{"family", family_json_name(spec.family)}};
  switch (spec.family) {
  case KernelFamily::GaussianWidth:
  case KernelFamily::LorentzWidth:
    j["kappa"] = spec.kappa;
    break;
  case KernelFamily::Voigt:
    j["theta"] = spec.theta;
    break;
  case KernelFamily::EddingtonInverse:
    j["k"] = spec.k;
    break;
  default:
    break;
  }
}

void from_json(const json& j, KernelSpec& spec) {
  spec = KernelSpec{};
  spec.family = parse_family(require_field<std::string>(j, "family", "kernel"));
  switch (spec.family) {
  case KernelFamily::GaussianWidth:
  case KernelFamily::LorentzWidth:
    spec.kappa = require_field<double>(j, "kappa", "kernel");
    break;
  case KernelFamily::Voigt:
    spec.theta = require_field<double>(j, "theta", "kernel");
    break;
  case KernelFamily::EddingtonInverse:
    spec.k = require_field<int>(j, "k", "kernel");
    break;
  default:
    break;
  }
  spec.validate();
}

void to_json(json& j, const Grid& grid) {
  j = json{{"n", grid.n}, {"length", grid.length}};
}

void from_json(const json& j, Grid& grid) {
  grid.n = require_field<int>(j, "n", "grid");
  grid.length = require_field<double>(j, "length", "grid");
  grid.validate();
}

void to_json(json& j, const SourceCondition& cond) {
  j = json{{"kind", condition_json_name(cond.kind)}};
  switch (cond.kind) {
  case ConditionKind::EddingtonGaussian:
    j["k"] = cond.k;
    break;
  case ConditionKind::LorentzOnGaussian:
    j["kappa"] = cond.kappa;
    break;
  case ConditionKind::LorentzOnVoigt:
    j["kappa"] = cond.kappa;
    j["theta"] = cond.theta;
    break;
  }
}

void from_json(const json& j, SourceCondition& cond) {
  const auto kind =
      parse_condition_kind(require_field<std::string>(j, "kind", "condition"));
  switch (kind) {
  case ConditionKind::EddingtonGaussian:
    cond = SourceCondition::eddington_gaussian(
        require_field<int>(j, "k", "condition"));
    return;
  case ConditionKind::LorentzOnGaussian:
    cond = SourceCondition::lorentz_on_gaussian(
        require_field<double>(j, "kappa", "condition"));
    return;
  case ConditionKind::LorentzOnVoigt:
    cond = SourceCondition::lorentz_on_voigt(
        require_field<double>(j, "kappa", "condition"),
        require_field<double>(j, "theta", "condition"));
    return;
  }
}

void to_json(json& j, const RegularizationConfig& reg) {
  j = json{{"method", reg_method_name(reg.method)}, {"alpha", reg.alpha}};
}

void from_json(const json& j, RegularizationConfig& reg) {
  const auto name = require_field<std::string>(j, "method", "regularization");
  if (name == "tikhonov" || name == "Tikhonov")
    reg.method = RegMethod::Tikhonov;
  else if (name == "cutoff" || name == "SpectralCutoff")
    reg.method = RegMethod::SpectralCutoff;
  else
    throw ConfigError("config: unknown regularization method \"" + name +
                      "\"");
  reg.alpha = require_field<double>(j, "alpha", "regularization");
  reg.validate();
}

void to_json(json& j, const Line& line) {
  j = json{{"location", line.location}, {"intensity", line.intensity}};
}

void from_json(const json& j, Line& line) {
  line.location = require_field<double>(j, "location", "line");
  line.intensity = require_field<double>(j, "intensity", "line");
}

void to_json(json& j, const LineSpectrum& lines) { j = lines.lines; }

void from_json(const json& j, LineSpectrum& lines) {
  lines = LineSpectrum::make(j.get<std::vector<Line>>());
}

json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("io: cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw ConfigError("io: " + path + " is not valid JSON (" + e.what() + ")");
  }
}

void save_json(const std::string& path, const json& value) {
  std::ofstream out(path);
  if (!out) throw ConfigError("io: cannot open " + path + " for writing");
  out << value.dump(2) << "\n";
  if (!out) throw ConfigError("io: failed while writing " + path);
}

namespace {

std::vector<std::pair<double, double>> read_two_columns(
    const std::string& path, const std::string& expected_header) {
  std::ifstream in(path);
  if (!in) throw ConfigError("io: cannot open " + path);
  std::string line;
  if (!std::getline(in, line) || line != expected_header)
    throw ConfigError("io: " + path + " must start with the header \"" +
                      expected_header + "\"");
  std::vector<std::pair<double, double>> rows;
  std::size_t line_number = 1;
  while (std::getline(in, line)) {
    ++line_number;
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos)
      throw ConfigError("io: " + path + " line " +
                        std::to_string(line_number) + " has no comma");
    char* end = nullptr;
    const double a = std::strtod(line.c_str(), &end);
    const double b = std::strtod(line.c_str() + comma + 1, &end);
    rows.emplace_back(a, b);
  }
  return rows;
}

} // namespace

void write_spectrum_csv(const std::string& path, const SampledSpectrum& g) {
  g.grid.validate();
  std::ofstream out(path);
  if (!out) throw ConfigError("io: cannot open " + path + " for writing");
  out << "x,value\n";
  for (int j = 0; j < g.grid.n; ++j)
    out << full_precision(g.grid.point(j)) << ","
        << full_precision(g.values[j]) << "\n";
  if (!out) throw ConfigError("io: failed while writing " + path);
}

SampledSpectrum read_spectrum_csv(const std::string& path) {
  const auto rows = read_two_columns(path, "x,value");
  if (rows.size() < 8)
    throw ConfigError("io: " + path + " holds fewer than 8 samples");
  Grid grid;
  grid.n = static_cast<int>(rows.size());
  const double dx = rows[1].first - rows[0].first;
  grid.length = grid.n * dx;
  grid.validate();
  if (std::abs(rows[0].first + 0.5 * grid.length) > 1e-9 * grid.length)
    throw ConfigError("io: " + path +
                      " does not start at the left edge -length/2");
  SampledSpectrum g{grid, {}};
  g.values.reserve(rows.size());
  for (const auto& [x, value] : rows) g.values.push_back(value);
  return g;
}

void write_lines_csv(const std::string& path, const LineSpectrum& lines) {
  std::ofstream out(path);
  if (!out) throw ConfigError("io: cannot open " + path + " for writing");
  out << "location,intensity\n";
  for (const auto& line : lines.lines)
    out << full_precision(line.location) << ","
        << full_precision(line.intensity) << "\n";
  if (!out) throw ConfigError("io: failed while writing " + path);
}

LineSpectrum read_lines_csv(const std::string& path) {
  const auto rows = read_two_columns(path, "location,intensity");
  std::vector<Line> lines;
  lines.reserve(rows.size());
  for (const auto& [location, intensity] : rows)
    lines.push_back({location, intensity});
  return LineSpectrum::make(std::move(lines));
}

} // namespace specenh
