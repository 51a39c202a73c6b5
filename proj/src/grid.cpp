#include "specenh/grid.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include <unsupported/Eigen/FFT>

#include "specenh/errors.hpp"

namespace specenh {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;
const double inv_sqrt_two_pi = 1.0 / std::sqrt(two_pi);

// Centering twist: the grid starts at -length/2, so the physical phase
// exp(-i w_k x_j) differs from the index-space DFT phase by (-1)^k.
inline double twist(int k) { return (k & 1) ? -1.0 : 1.0; }

std::vector<std::complex<double>> dft_forward(const std::vector<double>& v) {
  Eigen::FFT<double> fft;
  std::vector<std::complex<double>> in(v.size()), out(v.size());
  for (std::size_t j = 0; j < v.size(); ++j) in[j] = v[j];
  fft.fwd(out, in);
  return out;
}

std::vector<std::complex<double>>
dft_inverse(const std::vector<std::complex<double>>& x) {
  Eigen::FFT<double> fft;
  std::vector<std::complex<double>> out(x.size());
  fft.inv(out, const_cast<std::vector<std::complex<double>>&>(x));
  return out;
}

} // namespace

void Grid::validate() const {
  if (n < 8 || (n & (n - 1)) != 0)
    throw DomainError("grid: n must be a power of two >= 8, got " +
                      std::to_string(n));
  if (!(length > 0.0) || !std::isfinite(length))
    throw DomainError("grid: length must be positive, got " +
                      std::to_string(length));
}

double Grid::angular_frequency(int k) const {
  const int half = n / 2;
  const int j = k <= half ? k : k - n;
  return two_pi * static_cast<double>(j) / length;
}

double Grid::max_frequency() const {
  return two_pi * static_cast<double>(n / 2) / length;
}

double SampledSpectrum::l2_norm() const {
  double s = 0.0;
  for (double v : values) s += v * v;
  return std::sqrt(s * grid.dx());
}

LineSpectrum LineSpectrum::make(std::vector<Line> lines) {
  std::sort(lines.begin(), lines.end(),
            [](const Line& a, const Line& b) { return a.location < b.location; });
  for (std::size_t i = 1; i < lines.size(); ++i) {
    if (lines[i].location == lines[i - 1].location)
      throw DomainError("lines: duplicate location " +
                        std::to_string(lines[i].location));
  }
  return LineSpectrum{std::move(lines)};
}

std::vector<std::complex<double>> spectrum_to_freq(const SampledSpectrum& g) {
  g.grid.validate();
  if (static_cast<int>(g.values.size()) != g.grid.n)
    throw DomainError("grid: spectrum has " + std::to_string(g.values.size()) +
                      " values on a grid of " + std::to_string(g.grid.n));
  auto freq = dft_forward(g.values);
  const double scale = g.grid.dx() * inv_sqrt_two_pi;
  for (int k = 0; k < g.grid.n; ++k) freq[k] *= scale * twist(k);
  return freq;
}

SampledSpectrum freq_to_spectrum(const Grid& grid,
                                 const std::vector<std::complex<double>>& freq) {
  grid.validate();
  if (static_cast<int>(freq.size()) != grid.n)
    throw DomainError("grid: frequency data has " + std::to_string(freq.size()) +
                      " bins on a grid of " + std::to_string(grid.n));
  std::vector<std::complex<double>> x(freq.size());
  const double scale = 1.0 / (grid.dx() * inv_sqrt_two_pi);
  for (int k = 0; k < grid.n; ++k) x[k] = freq[k] * (scale * twist(k));
  auto back = dft_inverse(x);
  SampledSpectrum out{grid, std::vector<double>(grid.n)};
  for (int j = 0; j < grid.n; ++j) out.values[j] = back[j].real();
  return out;
}

SampledSpectrum sample_kernel(const KernelSpec& kernel, const Grid& grid) {
  grid.validate();
  kernel.validate();
  std::vector<std::complex<double>> freq(grid.n);
  for (int k = 0; k < grid.n; ++k)
    freq[k] = fourier_symbol(kernel, grid.angular_frequency(k)) *
              inv_sqrt_two_pi;
  return freq_to_spectrum(grid, freq);
}

SampledSpectrum broaden(const LineSpectrum& lines, const KernelSpec& kernel,
                        const Grid& grid) {
  grid.validate();
  kernel.validate();
  const double lo = -0.5 * grid.length;
  const double hi = 0.5 * grid.length;
  for (const Line& line : lines.lines) {
    if (!(line.location >= lo) || !(line.location < hi))
      throw DomainError("broaden: line location " +
                        std::to_string(line.location) +
                        " outside [-length/2, length/2)");
  }
  std::vector<std::complex<double>> freq(grid.n);
  for (int k = 0; k < grid.n; ++k) {
    const double w = grid.angular_frequency(k);
    std::complex<double> u(0.0, 0.0);
    for (const Line& line : lines.lines)
      u += line.intensity *
           std::complex<double>(std::cos(w * line.location),
                                -std::sin(w * line.location));
    freq[k] = u * (fourier_symbol(kernel, w) * inv_sqrt_two_pi);
  }
  return freq_to_spectrum(grid, freq);
}

SampledSpectrum place_profiles(const SampledSpectrum& shape,
                               const LineSpectrum& lines) {
  auto freq = spectrum_to_freq(shape);
  const Grid& grid = shape.grid;
  for (int k = 0; k < grid.n; ++k) {
    const double w = grid.angular_frequency(k);
    std::complex<double> u(0.0, 0.0);
    for (const Line& line : lines.lines)
      u += line.intensity *
           std::complex<double>(std::cos(w * line.location),
                                -std::sin(w * line.location));
    freq[k] *= u;
  }
  return freq_to_spectrum(grid, freq);
}

SampledSpectrum convolve(const SampledSpectrum& f, const KernelSpec& kernel) {
  kernel.validate();
  auto freq = spectrum_to_freq(f);
  for (int k = 0; k < f.grid.n; ++k)
    freq[k] *= fourier_symbol(kernel, f.grid.angular_frequency(k));
  return freq_to_spectrum(f.grid, freq);
}

SampledSpectrum add_noise(const SampledSpectrum& g, double level,
                          std::uint64_t seed) {
  g.grid.validate();
  if (!(level >= 0.0) || !std::isfinite(level))
    throw DomainError("add_noise: level must be >= 0, got " +
                      std::to_string(level));
  if (level == 0.0) return g;
  const double gnorm = g.l2_norm();
  if (gnorm == 0.0)
    throw DomainError("add_noise: relative level undefined for a zero spectrum");

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<double> e(g.values.size());
  double esq = 0.0;
  for (double& v : e) {
    v = normal(rng);
    esq += v * v;
  }
  const double enorm = std::sqrt(esq * g.grid.dx());
  if (enorm == 0.0)
    throw NumericError("add_noise: degenerate noise draw");
  const double scale = level * gnorm / enorm;

  SampledSpectrum out = g;
  for (std::size_t j = 0; j < e.size(); ++j) out.values[j] += scale * e[j];
  return out;
}

double fwhm(const SampledSpectrum& g) {
  g.grid.validate();
  const auto& v = g.values;
  const int n = g.grid.n;
  int m = 0;
  for (int j = 1; j < n; ++j)
    if (v[j] > v[m]) m = j;
  const double peak = v[m];
  if (!(peak > 0.0))
    throw MeasurementError("fwhm: global maximum is not positive");
  const double half = 0.5 * peak;

  int l = m;
  while (l > 0 && v[l - 1] >= half) --l;
  if (l == 0)
    throw MeasurementError("fwhm: half level not crossed left of the peak");
  const double xl = g.grid.point(l - 1) +
                    g.grid.dx() * (half - v[l - 1]) / (v[l] - v[l - 1]);

  int r = m;
  while (r < n - 1 && v[r + 1] >= half) ++r;
  if (r == n - 1)
    throw MeasurementError("fwhm: half level not crossed right of the peak");
  const double xr =
      g.grid.point(r) + g.grid.dx() * (v[r] - half) / (v[r] - v[r + 1]);

  return xr - xl;
}

double l2_distance(const SampledSpectrum& a, const SampledSpectrum& b) {
  if (!(a.grid == b.grid))
    throw DomainError("l2_distance: spectra live on different grids");
  double s = 0.0;
  for (std::size_t j = 0; j < a.values.size(); ++j) {
    const double d = a.values[j] - b.values[j];
    s += d * d;
  }
  return std::sqrt(s * a.grid.dx());
}

} // namespace specenh
