#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "specenh/kernels.hpp"

namespace specenh {

/// Uniform periodic grid on [-length/2, length/2) with n points, n a power
/// of two and at least 8. Bin k of the discrete transform carries the signed
/// angular frequency 2*pi*j/length with j the aliased index.
struct Grid {
  int n = 4096;
  double length = 64.0;

  double dx() const { return length / n; }
  double point(int j) const { return -0.5 * length + dx() * j; }
  double angular_frequency(int k) const;
  double max_frequency() const;
  void validate() const;
  bool operator==(const Grid&) const = default;
};

struct SampledSpectrum {
  Grid grid;
  std::vector<double> values;

  /// Discrete L2 norm sqrt(sum v_j^2 * dx).
  double l2_norm() const;
};

struct Line {
  double location = 0.0;
  double intensity = 0.0;
};

/// Finitely many spectral lines, kept sorted by location with all locations
/// distinct.
struct LineSpectrum {
  std::vector<Line> lines;

  /// Sorts by location and rejects duplicate locations.
  static LineSpectrum make(std::vector<Line> lines);
};

/// Forward transform sampled at the grid frequencies, scaled so that the
/// discrete Parseval identity holds: sum |freq_k|^2 * domega == l2_norm()^2.
/// Convolution kernels act on this representation by plain multiplication
/// with fourier_symbol.
std::vector<std::complex<double>> spectrum_to_freq(const SampledSpectrum& g);

/// Inverse of spectrum_to_freq; residual imaginary parts are discarded.
SampledSpectrum freq_to_spectrum(const Grid& grid,
                                 const std::vector<std::complex<double>>& freq);

/// Kernel sampled on the grid through its Fourier multiplier. The result is
/// the L-periodization of the kernel, real and even about x = 0.
SampledSpectrum sample_kernel(const KernelSpec& kernel, const Grid& grid);

/// Line spectrum convolved with the kernel, evaluated on the grid. Line
/// locations must lie inside [-length/2, length/2).
SampledSpectrum broaden(const LineSpectrum& lines, const KernelSpec& kernel,
                        const Grid& grid);

/// sum_i u_i * shape(x - x_i) for an arbitrary sampled profile centered at
/// x = 0, translated by Fourier phase shifts.
SampledSpectrum place_profiles(const SampledSpectrum& shape,
                               const LineSpectrum& lines);

/// Circular convolution with the kernel via its Fourier multiplier.
SampledSpectrum convolve(const SampledSpectrum& f, const KernelSpec& kernel);

/// Additive i.i.d. Gaussian noise rescaled so that the perturbation norm is
/// exactly level * |g|. Deterministic for a fixed seed.
SampledSpectrum add_noise(const SampledSpectrum& g, double level,
                          std::uint64_t seed);

/// Full width at half maximum of the connected region around the global
/// maximum, with linear interpolation at the two half crossings. Throws
/// MeasurementError when the maximum is nonpositive or the half level is
/// never crossed inside the domain.
double fwhm(const SampledSpectrum& g);

double l2_distance(const SampledSpectrum& a, const SampledSpectrum& b);

} // namespace specenh
