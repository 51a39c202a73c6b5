#pragma once

#include <optional>
#include <string>

#include "specenh/bounds.hpp"
#include "specenh/grid.hpp"
#include "specenh/kernels.hpp"

namespace specenh {

enum class RegMethod { Tikhonov, SpectralCutoff };

std::string reg_method_name(RegMethod method);

struct RegularizationConfig {
  RegMethod method = RegMethod::Tikhonov;
  double alpha = 0.0;

  void validate() const;
};

// One deconvolution run.  The weighted norm of the reconvolved estimate and
// the a-priori error bound are filled only when a source condition was
// supplied and the corresponding quantity is finite and valid.
struct EnhancementResult {
  SampledSpectrum enhanced;
  double alpha = 0.0;
  // distance between the reconvolved estimate and the input data
  double residual = 0.0;
  std::optional<double> psi_norm;
  std::optional<double> bound;
};

// Removes the kernel from the data by damped division of Fourier symbols.
// With alpha = 0 the division is exact and throws SingularInversionError
// wherever the symbol underflows to zero.
EnhancementResult deconvolve(const SampledSpectrum& data,
                             const KernelSpec& kernel,
                             const RegularizationConfig& reg,
                             const SourceCondition* condition = nullptr);

// Sharpens a spectrum with the truncated-exponential inverse of the given
// order; order 1 is the classic second-derivative correction and order 0
// with alpha = 0 returns the data unchanged.
EnhancementResult eddington_correct(const SampledSpectrum& data, int order,
                                    const RegularizationConfig& reg,
                                    const SourceCondition* condition = nullptr);

// Picks the damping strength whose residual sits at tau * delta, by bisection
// on log alpha.  Throws DataIncompatibleError when the target residual is
// unreachable even with the weakest damping.
double choose_alpha_discrepancy(const SampledSpectrum& data,
                                const KernelSpec& kernel, RegMethod method,
                                double delta, double tau = 1.1);

} // namespace specenh
