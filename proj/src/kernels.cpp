#include "specenh/kernels.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "specenh/errors.hpp"

namespace specenh {

namespace {

constexpr double sqrt2 = std::numbers::sqrt2;
constexpr double pi = std::numbers::pi;

} // namespace

KernelSpec KernelSpec::gaussian_unit() {
  return KernelSpec{KernelFamily::GaussianUnit, 0.0, 0.0, 0};
}

KernelSpec KernelSpec::gaussian_width(double kappa) {
  KernelSpec spec{KernelFamily::GaussianWidth, kappa, 0.0, 0};
  spec.validate();
  return spec;
}

KernelSpec KernelSpec::lorentz_unit() {
  return KernelSpec{KernelFamily::LorentzUnit, 0.0, 0.0, 0};
}

KernelSpec KernelSpec::lorentz_width(double kappa) {
  KernelSpec spec{KernelFamily::LorentzWidth, kappa, 0.0, 0};
  spec.validate();
  return spec;
}

KernelSpec KernelSpec::voigt(double theta) {
  KernelSpec spec{KernelFamily::Voigt, 0.0, theta, 0};
  spec.validate();
  return spec;
}

KernelSpec KernelSpec::eddington_inverse(int k) {
  KernelSpec spec{KernelFamily::EddingtonInverse, 0.0, 0.0, k};
  spec.validate();
  return spec;
}

void KernelSpec::validate() const {
  switch (family) {
  case KernelFamily::GaussianUnit:
  case KernelFamily::LorentzUnit:
    return;
  case KernelFamily::GaussianWidth:
  case KernelFamily::LorentzWidth:
    if (!(kappa > 0.0) || !std::isfinite(kappa))
      throw DomainError("kernel: width kappa must be positive, got " +
                        std::to_string(kappa));
    return;
  case KernelFamily::Voigt:
    if (!(theta > 0.0) || !(theta <= 1.0))
      throw DomainError("kernel: Voigt theta must lie in (0, 1], got " +
                        std::to_string(theta));
    return;
  case KernelFamily::EddingtonInverse:
    if (k < 0)
      throw DomainError("kernel: correction order k must be >= 0, got " +
                        std::to_string(k));
    return;
  }
  throw DomainError("kernel: unknown family");
}

std::string family_name(KernelFamily family) {
  switch (family) {
  case KernelFamily::GaussianUnit: return "GaussianUnit";
  case KernelFamily::GaussianWidth: return "GaussianWidth";
  case KernelFamily::LorentzUnit: return "LorentzUnit";
  case KernelFamily::LorentzWidth: return "LorentzWidth";
  case KernelFamily::Voigt: return "Voigt";
  case KernelFamily::EddingtonInverse: return "EddingtonInverse";
  }
  return "Unknown";
}

double log_fourier_symbol(const KernelSpec& kernel, double omega) {
  kernel.validate();
  const double w = std::abs(omega);
  switch (kernel.family) {
  case KernelFamily::GaussianUnit:
    return -0.5 * w * w;
  case KernelFamily::GaussianWidth:
    return -0.5 * kernel.kappa * kernel.kappa * w * w;
  case KernelFamily::LorentzUnit:
    return -sqrt2 * w;
  case KernelFamily::LorentzWidth:
    return -kernel.kappa * w;
  case KernelFamily::Voigt:
    return kernel.theta * (-0.5 * w * w) +
           (1.0 - kernel.theta) * (-sqrt2 * w);
  case KernelFamily::EddingtonInverse:
    return -std::log(taylor_eval(kernel.k, 0.5 * w * w));
  }
  throw DomainError("kernel: unknown family");
}

double fourier_symbol(const KernelSpec& kernel, double omega) {
  return std::exp(log_fourier_symbol(kernel, omega));
}

bool has_closed_real_space(const KernelSpec& kernel) {
  kernel.validate();
  switch (kernel.family) {
  case KernelFamily::GaussianUnit:
  case KernelFamily::GaussianWidth:
  case KernelFamily::LorentzUnit:
  case KernelFamily::LorentzWidth:
    return true;
  case KernelFamily::EddingtonInverse:
    return kernel.k == 1;
  case KernelFamily::Voigt:
    return false;
  }
  return false;
}

double real_space(const KernelSpec& kernel, double x) {
  kernel.validate();
  switch (kernel.family) {
  case KernelFamily::GaussianUnit:
    return std::exp(-0.5 * x * x) / std::sqrt(2.0 * pi);
  case KernelFamily::GaussianWidth: {
    const double s = kernel.kappa;
    return std::exp(-0.5 * x * x / (s * s)) / (std::sqrt(2.0 * pi) * s);
  }
  case KernelFamily::LorentzUnit:
    return 1.0 / (sqrt2 * pi * (1.0 + 0.5 * x * x));
  case KernelFamily::LorentzWidth: {
    const double s = kernel.kappa;
    return 1.0 / (s * pi * (1.0 + x * x / (s * s)));
  }
  case KernelFamily::EddingtonInverse:
    if (kernel.k == 1)
      return std::exp(-sqrt2 * std::abs(x)) / sqrt2;
    throw UnsupportedFormError(
        "kernel: no closed real-space form for EddingtonInverse k=" +
        std::to_string(kernel.k) + "; sample it on a grid instead");
  case KernelFamily::Voigt:
    throw UnsupportedFormError(
        "kernel: no closed real-space form for Voigt; sample it on a grid "
        "instead");
  }
  throw DomainError("kernel: unknown family");
}

double taylor_eval(int k, double x) {
  if (k < 0)
    throw DomainError("taylor_eval: order k must be >= 0, got " +
                      std::to_string(k));
  if (!(x >= 0.0))
    throw DomainError("taylor_eval: argument must be >= 0, got " +
                      std::to_string(x));
  double acc = 1.0;
  for (int j = k; j >= 1; --j)
    acc = 1.0 + acc * x / static_cast<double>(j);
  return acc;
}

double taylor_inverse(int k, double y) {
  if (k < 1)
    throw DomainError("taylor_inverse: order k must be >= 1, got " +
                      std::to_string(k));
  if (!(y >= 1.0))
    throw DomainError("taylor_inverse: argument must be >= 1, got " +
                      std::to_string(y));
  if (y == 1.0)
    return 0.0;

  // The partial sum is strictly increasing with t_k(0) = 1 and
  // t_k(y) >= 1 + y > y, so [0, max(1, y)] brackets the root.
  double lo = 0.0;
  double hi = std::max(1.0, y);
  for (int it = 0; it < 400 && hi - lo > 1e-14 * std::max(1.0, lo); ++it) {
    const double mid = 0.5 * (lo + hi);
    if (taylor_eval(k, mid) < y)
      lo = mid;
    else
      hi = mid;
  }
  double x = 0.5 * (lo + hi);
  for (int it = 0; it < 4; ++it) {
    const double f = taylor_eval(k, x);
    const double fp = taylor_eval(k - 1, x); // derivative of the partial sum
    if (!std::isfinite(f) || !std::isfinite(fp) || fp == 0.0)
      break;
    const double step = (f - y) / fp;
    const double next = x - step;
    if (next >= 0.0 && std::isfinite(next))
      x = next;
  }
  return x;
}

} // namespace specenh
