#include "specenh/enhance.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "specenh/errors.hpp"

namespace specenh {

std::string reg_method_name(RegMethod method) {
  switch (method) {
  case RegMethod::Tikhonov: return "tikhonov";
  case RegMethod::SpectralCutoff: return "cutoff";
  }
  return "unknown";
}

void RegularizationConfig::validate() const {
  if (!(alpha >= 0.0) || !std::isfinite(alpha))
    throw ConfigError("regularization: alpha must be finite and >= 0, got " +
                      std::to_string(alpha));
}

namespace {

std::vector<double> symbol_on_grid(const KernelSpec& kernel, const Grid& grid) {
  std::vector<double> b(grid.n);
  for (int k = 0; k < grid.n; ++k)
    b[k] = fourier_symbol(kernel, grid.angular_frequency(k));
  return b;
}

void fill_condition_fields(EnhancementResult& result,
                           const SampledSpectrum& data,
                           const SampledSpectrum& reconvolved,
                           const KernelSpec& kernel,
                           const SourceCondition& condition) {
  const auto qf_estimate = psi_norm(reconvolved, condition, kernel);
  if (qf_estimate.finite)
    result.psi_norm = std::sqrt(qf_estimate.value);
  const auto qf_data = psi_norm(data, condition, kernel);
  if (!qf_estimate.finite || !qf_data.finite) return;
  try {
    result.bound = enhancement_error_bound(
        result.residual, std::sqrt(qf_estimate.value) + std::sqrt(qf_data.value),
        condition);
  } catch (const NumericError&) {
    // below the concavity region or overflowing: no bound to report
  } catch (const DomainError&) {
    // residual of zero: the bound degenerates
  }
}

} // namespace

EnhancementResult deconvolve(const SampledSpectrum& data,
                             const KernelSpec& kernel,
                             const RegularizationConfig& reg,
                             const SourceCondition* condition) {
  data.grid.validate();
  kernel.validate();
  reg.validate();

  // order zero with no damping is the identity: hand the data back untouched
  if (kernel.family == KernelFamily::EddingtonInverse && kernel.k == 0 &&
      reg.alpha == 0.0) {
    EnhancementResult result{data, 0.0, 0.0, {}, {}};
    if (condition)
      fill_condition_fields(result, data, data, kernel, *condition);
    return result;
  }

  const Grid& grid = data.grid;
  const auto freq = spectrum_to_freq(data);
  const auto b = symbol_on_grid(kernel, grid);

  std::vector<std::complex<double>> fhat(grid.n);
  std::vector<std::complex<double>> rhat(grid.n);
  for (int k = 0; k < grid.n; ++k) {
    switch (reg.method) {
    case RegMethod::Tikhonov: {
      const double denom = b[k] * b[k] + reg.alpha;
      if (denom == 0.0)
        throw SingularInversionError(
            "deconvolve: kernel symbol vanishes at frequency " +
            std::to_string(grid.angular_frequency(k)) +
            " and alpha = 0 leaves nothing to divide by");
      fhat[k] = b[k] * freq[k] / denom;
      break;
    }
    case RegMethod::SpectralCutoff:
      if (b[k] > 0.0 && b[k] * b[k] >= reg.alpha)
        fhat[k] = freq[k] / b[k];
      else
        fhat[k] = 0.0;
      break;
    }
    rhat[k] = b[k] * fhat[k];
  }

  EnhancementResult result;
  result.enhanced = freq_to_spectrum(grid, fhat);
  result.alpha = reg.alpha;
  const auto reconvolved = freq_to_spectrum(grid, rhat);
  result.residual = l2_distance(reconvolved, data);
  if (condition)
    fill_condition_fields(result, data, reconvolved, kernel, *condition);
  return result;
}

EnhancementResult eddington_correct(const SampledSpectrum& data, int order,
                                    const RegularizationConfig& reg,
                                    const SourceCondition* condition) {
  return deconvolve(data, KernelSpec::eddington_inverse(order), reg, condition);
}

double choose_alpha_discrepancy(const SampledSpectrum& data,
                                const KernelSpec& kernel, RegMethod method,
                                double delta, double tau) {
  data.grid.validate();
  kernel.validate();
  if (!(delta > 0.0) || !std::isfinite(delta))
    throw DomainError("discrepancy: delta must be positive, got " +
                      std::to_string(delta));
  if (!(tau >= 1.0) || !std::isfinite(tau))
    throw DomainError("discrepancy: tau must be at least 1, got " +
                      std::to_string(tau));

  const Grid& grid = data.grid;
  const auto freq = spectrum_to_freq(data);
  const auto b = symbol_on_grid(kernel, grid);
  const double domega = 2.0 * std::numbers::pi / grid.length;

  const auto residual_at = [&](double alpha) {
    double r2 = 0.0;
    for (int k = 0; k < grid.n; ++k) {
      const double power = std::norm(freq[k]) * domega;
      switch (method) {
      case RegMethod::Tikhonov: {
        const double factor = alpha / (b[k] * b[k] + alpha);
        r2 += factor * factor * power;
        break;
      }
      case RegMethod::SpectralCutoff:
        if (!(b[k] > 0.0 && b[k] * b[k] >= alpha)) r2 += power;
        break;
      }
    }
    return std::sqrt(r2);
  };

  const double target = tau * delta;
  double lo = 1e-16;
  double hi = 1e4;
  const double r_lo = residual_at(lo);
  if (r_lo > 1.01 * target)
    throw DataIncompatibleError(
        "discrepancy: weakest damping already leaves residual " +
        std::to_string(r_lo) + " above the target " + std::to_string(target) +
        "; the data cannot be explained at this noise level");
  if (r_lo >= 0.99 * target) return lo;
  if (residual_at(hi) < 0.99 * target) return hi;

  // bisection on log alpha; the low side always satisfies r <= target
  for (int iter = 0; iter < 200 && hi / lo > 1.0 + 1e-12; ++iter) {
    const double mid = std::sqrt(lo * hi);
    const double r = residual_at(mid);
    if (r >= 0.99 * target && r <= 1.01 * target) return mid;
    if (r > target)
      hi = mid;
    else
      lo = mid;
  }
  // step-like residuals can skip the band entirely; settle on the safe side
  return lo;
}

} // namespace specenh
