#include "specenh/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "specenh/errors.hpp"

namespace specenh {

namespace {

constexpr double sqrt2 = std::numbers::sqrt2;
constexpr double sqrt8 = 2.0 * std::numbers::sqrt2;
// log(DBL_MAX), with a little headroom
constexpr double log_overflow = 709.0;
// relative floor below which transform bins are treated as roundoff
constexpr double trust_floor = 1e-13;
// a trusted-boundary share larger than this flags divergence
constexpr double boundary_dominance = 100.0;

double log_sum_exp(const std::vector<double>& logs) {
  if (logs.empty()) return -std::numeric_limits<double>::infinity();
  const double m = *std::max_element(logs.begin(), logs.end());
  if (!std::isfinite(m)) return m;
  double acc = 0.0;
  for (double v : logs) acc += std::exp(v - m);
  return m + std::log(acc);
}

void check_condition_matches(const SourceCondition& cond,
                             const KernelSpec& enhancement) {
  const bool lorentz_like =
      enhancement.family == KernelFamily::LorentzWidth ||
      enhancement.family == KernelFamily::LorentzUnit;
  const double enhancement_kappa =
      enhancement.family == KernelFamily::LorentzUnit ? sqrt2
                                                      : enhancement.kappa;
  switch (cond.kind) {
  case ConditionKind::EddingtonGaussian:
    if (enhancement.family != KernelFamily::EddingtonInverse ||
        enhancement.k != cond.k)
      throw ConfigError(
          "psi_norm: EddingtonGaussian(k=" + std::to_string(cond.k) +
          ") requires the EddingtonInverse kernel of the same order");
    return;
  case ConditionKind::LorentzOnGaussian:
  case ConditionKind::LorentzOnVoigt:
    if (!lorentz_like ||
        std::abs(enhancement_kappa - cond.kappa) >
            1e-12 * std::max(1.0, cond.kappa))
      throw ConfigError("psi_norm: condition width kappa=" +
                        std::to_string(cond.kappa) +
                        " does not match the enhancement kernel");
    return;
  }
  throw ConfigError("psi_norm: unknown condition kind");
}

} // namespace

SourceCondition SourceCondition::eddington_gaussian(int k) {
  SourceCondition cond{ConditionKind::EddingtonGaussian, 0.0, 0.0, k};
  cond.validate();
  return cond;
}

SourceCondition SourceCondition::lorentz_on_gaussian(double kappa) {
  SourceCondition cond{ConditionKind::LorentzOnGaussian, kappa, 0.0, 0};
  cond.validate();
  return cond;
}

SourceCondition SourceCondition::lorentz_on_voigt(double kappa, double theta) {
  SourceCondition cond{ConditionKind::LorentzOnVoigt, kappa, theta, 0};
  cond.validate();
  return cond;
}

void SourceCondition::validate() const {
  switch (kind) {
  case ConditionKind::EddingtonGaussian:
    if (k < 1)
      throw DomainError("condition: correction order k must be >= 1, got " +
                        std::to_string(k));
    return;
  case ConditionKind::LorentzOnGaussian:
    if (!(kappa > 0.0) || !std::isfinite(kappa))
      throw DomainError("condition: kappa must be positive, got " +
                        std::to_string(kappa));
    return;
  case ConditionKind::LorentzOnVoigt:
    if (!(kappa > 0.0) || !std::isfinite(kappa))
      throw DomainError("condition: kappa must be positive, got " +
                        std::to_string(kappa));
    if (!(theta > 0.0) || !(theta <= 1.0))
      throw DomainError("condition: theta must lie in (0, 1], got " +
                        std::to_string(theta));
    return;
  }
  throw DomainError("condition: unknown kind");
}

std::string condition_name(ConditionKind kind) {
  switch (kind) {
  case ConditionKind::EddingtonGaussian: return "EddingtonGaussian";
  case ConditionKind::LorentzOnGaussian: return "LorentzOnGaussian";
  case ConditionKind::LorentzOnVoigt: return "LorentzOnVoigt";
  }
  return "Unknown";
}

double psi_log_at(const SourceCondition& cond, double log_lambda) {
  cond.validate();
  if (!(log_lambda >= 0.0))
    throw DomainError("psi: defined for lambda >= 1, got log lambda = " +
                      std::to_string(log_lambda));
  switch (cond.kind) {
  case ConditionKind::EddingtonGaussian: {
    const double root = std::exp(0.5 * log_lambda);
    if (!std::isfinite(root))
      throw OverflowError("psi: sqrt(lambda) exceeds the representable range "
                          "(log lambda = " +
                          std::to_string(log_lambda) + ")");
    return 2.0 * taylor_inverse(cond.k, root);
  }
  case ConditionKind::LorentzOnGaussian: {
    const double q = log_lambda / (2.0 * cond.kappa);
    return q * q;
  }
  case ConditionKind::LorentzOnVoigt: {
    const double q = log_lambda / (2.0 * cond.kappa);
    return cond.theta * q * q + sqrt8 * (1.0 - cond.theta) * q;
  }
  }
  throw DomainError("psi: unknown condition kind");
}

double big_psi_log_at(const SourceCondition& cond, double log_eta) {
  cond.validate();
  if (!(log_eta >= 0.0))
    throw DomainError("Psi: defined for eta >= 1, got log eta = " +
                      std::to_string(log_eta));
  switch (cond.kind) {
  case ConditionKind::EddingtonGaussian:
    return 2.0 * std::log(taylor_eval(cond.k, 0.5 * log_eta));
  case ConditionKind::LorentzOnGaussian:
    return 2.0 * cond.kappa * std::sqrt(log_eta);
  case ConditionKind::LorentzOnVoigt: {
    const double off = 1.0 - cond.theta;
    return (2.0 * cond.kappa / cond.theta) *
           (std::sqrt(2.0 * off * off + cond.theta * log_eta) -
            sqrt2 * off);
  }
  }
  throw DomainError("Psi: unknown condition kind");
}

namespace {

double exp_guarded(double log_value, const char* what) {
  if (log_value > log_overflow)
    throw OverflowError(std::string(what) +
                        " overflows the representable range (log value = " +
                        std::to_string(log_value) + ")");
  return std::exp(log_value);
}

} // namespace

double psi_eval(const SourceCondition& cond, double lambda) {
  if (!(lambda >= 1.0))
    throw DomainError("psi: defined for lambda >= 1, got " +
                      std::to_string(lambda));
  return exp_guarded(psi_log_at(cond, std::log(lambda)), "psi");
}

double big_psi_eval(const SourceCondition& cond, double eta) {
  if (!(eta >= 1.0))
    throw DomainError("Psi: defined for eta >= 1, got " + std::to_string(eta));
  return exp_guarded(big_psi_log_at(cond, std::log(eta)), "Psi");
}

double ConcavityRegion::min_log_eta() const {
  if (unconditional || !log_eta_threshold) return 0.0;
  return std::max(0.0, *log_eta_threshold);
}

ConcavityRegion concavity_region(const SourceCondition& cond) {
  cond.validate();
  ConcavityRegion region;
  switch (cond.kind) {
  case ConditionKind::EddingtonGaussian:
    return region;
  case ConditionKind::LorentzOnGaussian: {
    if (cond.kappa <= sqrt2) return region;
    // Concavity requires 2 s^2 - 2 kappa s + 1 >= 0 with s = sqrt(log eta);
    // above the larger root the requirement always holds.
    const double s_plus =
        0.5 * (cond.kappa + std::sqrt(cond.kappa * cond.kappa - 2.0));
    region.unconditional = false;
    region.log_eta_threshold = s_plus * s_plus;
    region.eta_threshold = std::exp(s_plus * s_plus);
    return region;
  }
  case ConditionKind::LorentzOnVoigt: {
    const double a = 2.0 * cond.kappa * std::pow(cond.theta, -1.5);
    if (a <= sqrt8) return region; // kappa <= sqrt(2) theta^(3/2)
    // Concavity requires 2 z^2 - a z + 1 >= 0 with
    // z = sqrt(log eta + 2 (1-theta)^2 theta).
    const double b = 2.0 * (1.0 - cond.theta) * (1.0 - cond.theta) * cond.theta;
    const double z_plus = 0.25 * (a + std::sqrt(a * a - 8.0));
    const double log_eta = std::max(0.0, z_plus * z_plus - b);
    region.unconditional = false;
    region.log_eta_threshold = log_eta;
    region.eta_threshold = std::exp(log_eta);
    return region;
  }
  }
  throw DomainError("concavity_region: unknown condition kind");
}

PsiNormResult psi_norm(const SampledSpectrum& g, const SourceCondition& cond,
                       const KernelSpec& enhancement, double roundoff_scale) {
  cond.validate();
  enhancement.validate();
  check_condition_matches(cond, enhancement);
  if (!(roundoff_scale >= 0.0) || !std::isfinite(roundoff_scale))
    throw DomainError("psi_norm: roundoff scale must be finite and >= 0");

  const auto freq = spectrum_to_freq(g);
  const Grid& grid = g.grid;
  const double log_domega =
      std::log(2.0 * std::numbers::pi / grid.length);

  double peak = 0.0;
  for (const auto& c : freq) peak = std::max(peak, std::abs(c));
  PsiNormResult result;
  if (peak == 0.0) {
    result.log_value = -std::numeric_limits<double>::infinity();
    return result;
  }
  const double floor = trust_floor * std::max(peak, roundoff_scale);

  double trusted_max_w = 0.0;
  std::vector<double> abs_w(grid.n, -1.0);
  for (int k = 0; k < grid.n; ++k) {
    if (std::abs(freq[k]) < floor) continue;
    abs_w[k] = std::abs(grid.angular_frequency(k));
    trusted_max_w = std::max(trusted_max_w, abs_w[k]);
  }

  std::vector<double> inner, outer;
  for (int k = 0; k < grid.n; ++k) {
    if (abs_w[k] < 0.0) continue;
    const double log_lambda =
        -2.0 * log_fourier_symbol(enhancement, grid.angular_frequency(k));
    const double term = psi_log_at(cond, std::max(0.0, log_lambda)) +
                        2.0 * std::log(std::abs(freq[k])) + log_domega;
    if (abs_w[k] <= 0.5 * trusted_max_w)
      inner.push_back(term);
    else
      outer.push_back(term);
  }

  const double log_inner = log_sum_exp(inner);
  const double log_outer = log_sum_exp(outer);
  const double total = log_sum_exp({log_inner, log_outer});

  // Growth toward the trusted frequency boundary flags divergence, but only
  // when that boundary is the edge of the grid itself: then the sum is
  // truncated and would keep growing on a wider grid.  A band that dies out
  // in the interior (a cut-off reconstruction, say) is summed completely.
  const bool truncated_by_grid = trusted_max_w >= 0.75 * grid.max_frequency();
  const bool dominated =
      truncated_by_grid && std::isfinite(log_outer) &&
      (log_outer > log_inner + std::log(boundary_dominance));
  if (dominated || total > log_overflow) {
    result.finite = false;
    result.value = std::numeric_limits<double>::infinity();
    result.log_value = total;
    return result;
  }
  result.finite = true;
  result.log_value = total;
  result.value = std::exp(total);
  return result;
}

double enhancement_error_bound(double epsilon, double stability_plus_data,
                               const SourceCondition& cond) {
  cond.validate();
  if (!(epsilon > 0.0) || !std::isfinite(epsilon))
    throw DomainError("error bound: epsilon must be positive, got " +
                      std::to_string(epsilon));
  if (!(stability_plus_data > 0.0) || !std::isfinite(stability_plus_data))
    throw DomainError("error bound: the norm constant must be positive, got " +
                      std::to_string(stability_plus_data));
  const double log_eta =
      2.0 * (std::log(stability_plus_data) - std::log(epsilon));
  const auto region = concavity_region(cond);
  if (log_eta < region.min_log_eta())
    throw BoundInvalidError(
        "error bound: argument eta = exp(" + std::to_string(log_eta) +
        ") lies below the concavity region (needs log eta >= " +
        std::to_string(region.min_log_eta()) + ")");
  return exp_guarded(std::log(epsilon) +
                         0.5 * big_psi_log_at(cond, log_eta),
                     "error bound");
}

double rate_deficit_value(const SourceCondition& cond, double epsilon) {
  cond.validate();
  if (!(epsilon > 0.0) || !(epsilon < std::exp(-1.0)))
    throw DomainError("rate deficit: epsilon must lie in (0, 1/e), got " +
                      std::to_string(epsilon));
  const double magnitude = -std::log(epsilon); // > 1
  switch (cond.kind) {
  case ConditionKind::EddingtonGaussian:
    return cond.k * std::log(magnitude) / magnitude;
  case ConditionKind::LorentzOnGaussian:
    return 2.0 * cond.kappa / std::sqrt(magnitude);
  case ConditionKind::LorentzOnVoigt: {
    const double off = 1.0 - cond.theta;
    return 2.0 * cond.kappa / std::sqrt(cond.theta * magnitude + off * off);
  }
  }
  throw DomainError("rate deficit: unknown condition kind");
}

double rate_deficit(const SourceCondition& cond, double epsilon) {
  const double deficit = rate_deficit_value(cond, epsilon);
  if (deficit >= 1.0)
    throw BoundInvalidError(
        "rate deficit: " + std::to_string(deficit) +
        " >= 1; the enhancement is too aggressive for noise level " +
        std::to_string(epsilon));
  return deficit;
}

} // namespace specenh
