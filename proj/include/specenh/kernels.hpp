#pragma once

#include <string>

namespace specenh {

enum class KernelFamily {
  GaussianUnit,     // standard normal density, multiplier exp(-w^2/2)
  GaussianWidth,    // Gaussian with standard deviation kappa
  LorentzUnit,      // Lorentz profile of half-width sqrt(2)
  LorentzWidth,     // Lorentz profile of half-width kappa
  Voigt,            // Gaussian^theta * Lorentz^(1-theta) in the Fourier domain
  EddingtonInverse, // inverse of the order-k derivative-series correction
};

/// Value type describing one convolution kernel. kappa, theta and k are only
/// meaningful for the families that use them.
struct KernelSpec {
  KernelFamily family = KernelFamily::GaussianUnit;
  double kappa = 0.0;
  double theta = 0.0;
  int k = 0;

  static KernelSpec gaussian_unit();
  static KernelSpec gaussian_width(double kappa);
  static KernelSpec lorentz_unit();
  static KernelSpec lorentz_width(double kappa);
  static KernelSpec voigt(double theta);
  static KernelSpec eddington_inverse(int k);

  /// Throws DomainError when a parameter lies outside its admissible range
  /// (kappa > 0, theta in (0, 1], k >= 0).
  void validate() const;
};

std::string family_name(KernelFamily family);

/// Fourier multiplier of the kernel at angular frequency omega. Even in
/// omega, takes values in (0, 1] and equals 1 at omega = 0. May underflow to
/// zero for very large |omega|; use log_fourier_symbol where that matters.
double fourier_symbol(const KernelSpec& kernel, double omega);

/// log of fourier_symbol, exact even where the multiplier itself underflows.
double log_fourier_symbol(const KernelSpec& kernel, double omega);

/// True when real_space has a closed form for this kernel.
bool has_closed_real_space(const KernelSpec& kernel);

/// Pointwise kernel value at x. Closed forms exist for the Gaussian and
/// Lorentz families and for EddingtonInverse with k == 1; other kernels throw
/// UnsupportedFormError and must be sampled through the grid module.
double real_space(const KernelSpec& kernel, double x);

/// Partial sum of the exponential series up to order k, evaluated at x >= 0.
double taylor_eval(int k, double x);

/// Inverse of x -> taylor_eval(k, x) for k >= 1 and y >= 1, to relative
/// accuracy 1e-12.
double taylor_inverse(int k, double y);

} // namespace specenh
