#include "doctest.h"

#include <cmath>
#include <vector>

#include "specenh/bounds.hpp"
#include "specenh/enhance.hpp"
#include "specenh/errors.hpp"
#include "specenh/grid.hpp"

using namespace specenh;

namespace {

SampledSpectrum unit_gaussian_line(const Grid& grid) {
  return broaden(LineSpectrum::make({{0.0, 1.0}}), KernelSpec::gaussian_unit(),
                 grid);
}

} // namespace

TEST_SUITE("enhance") {

TEST_CASE("removing a gaussian factor leaves the complementary width") {
  const Grid grid{1024, 64.0};
  const auto g = unit_gaussian_line(grid);
  const double before = fwhm(g);
  for (double kappa : {0.5, 0.8}) {
    const auto result = deconvolve(g, KernelSpec::gaussian_width(kappa),
                                   {RegMethod::Tikhonov, 1e-12});
    const double ratio = fwhm(result.enhanced) / before;
    CHECK(ratio ==
          doctest::Approx(std::sqrt(1.0 - kappa * kappa)).epsilon(0.02));
  }
}

// Damping just above the transform roundoff floor: strong enough to pin the
// amplified roundoff beyond the live band, weak enough to leave every bin
// with relative amplitude above ~1% untouched.
static double floor_damping_alpha(double kappa) {
  return 0.01 * std::exp(-2.0 * kappa * (kappa + std::sqrt(10.0)));
}

TEST_CASE("removing a lorentz factor narrows a gaussian line sharply") {
  const Grid grid{1024, 64.0};
  const auto g = unit_gaussian_line(grid);
  const double kappa = std::sqrt(2.0);
  const auto result = deconvolve(g, KernelSpec::lorentz_width(kappa),
                                 {RegMethod::Tikhonov, floor_damping_alpha(kappa)});
  const double ratio = fwhm(result.enhanced) / fwhm(g);
  CHECK(ratio > 0.45);
  CHECK(ratio < 0.65);
}

TEST_CASE("aggressive sharpening produces negative side lobes") {
  const Grid grid{1024, 64.0};
  const auto g = unit_gaussian_line(grid);
  const auto result = deconvolve(g, KernelSpec::lorentz_width(3.0),
                                 {RegMethod::Tikhonov, floor_damping_alpha(3.0)});
  double lowest = 0.0;
  double highest = 0.0;
  for (double v : result.enhanced.values) {
    lowest = std::min(lowest, v);
    highest = std::max(highest, v);
  }
  CHECK(lowest < -0.001 * highest);
}

TEST_CASE("cutoff and damped division agree when alpha is negligible") {
  const Grid grid{512, 64.0};
  const auto f = unit_gaussian_line(grid);
  const auto g = convolve(f, KernelSpec::lorentz_width(1.0));
  const auto tik = deconvolve(g, KernelSpec::lorentz_width(1.0),
                              {RegMethod::Tikhonov, 1e-30});
  const auto cut = deconvolve(g, KernelSpec::lorentz_width(1.0),
                              {RegMethod::SpectralCutoff, 1e-30});
  CHECK(l2_distance(tik.enhanced, cut.enhanced) <=
        1e-8 * tik.enhanced.l2_norm());
  // recovery is limited by roundoff amplified with 1/symbol at the band edge
  CHECK(l2_distance(tik.enhanced, f) <= 1e-5 * f.l2_norm());
}

TEST_CASE("residual grows with the damping strength") {
  const Grid grid{512, 64.0};
  const auto g = unit_gaussian_line(grid);
  double prev = -1.0;
  for (double alpha : {1e-8, 1e-6, 1e-4, 1e-2, 1.0}) {
    const auto result = deconvolve(g, KernelSpec::lorentz_width(1.0),
                                   {RegMethod::Tikhonov, alpha});
    CHECK(result.residual > prev);
    prev = result.residual;
  }
}

TEST_CASE("first-order correction matches the second-difference oracle") {
  const auto worst_gap = [](const Grid& grid) {
    const auto g = unit_gaussian_line(grid);
    const auto result = eddington_correct(g, 1, {RegMethod::Tikhonov, 0.0});
    const double h2 = grid.dx() * grid.dx();
    double gap = 0.0;
    for (int j = 0; j < grid.n; ++j) {
      const double up = g.values[(j + 1) % grid.n];
      const double down = g.values[(j + grid.n - 1) % grid.n];
      const double oracle =
          g.values[j] - 0.5 * (up - 2.0 * g.values[j] + down) / h2;
      gap = std::max(gap, std::abs(result.enhanced.values[j] - oracle));
    }
    return gap;
  };
  const double coarse = worst_gap(Grid{512, 64.0});
  const double fine = worst_gap(Grid{1024, 64.0});
  const double dx_fine = 64.0 / 1024;
  CHECK(fine <= 0.5 * dx_fine * dx_fine);
  // the gap is the second-order finite-difference error, so should quarter
  CHECK(coarse / fine == doctest::Approx(4.0).epsilon(0.15));
}

TEST_CASE("order zero with no damping hands back the data untouched") {
  const Grid grid{256, 32.0};
  auto g = unit_gaussian_line(grid);
  g.values[17] = 12.5; // arbitrary mutation must survive bit for bit
  const auto result = eddington_correct(g, 0, {RegMethod::Tikhonov, 0.0});
  CHECK(result.enhanced.values == g.values);
  CHECK(result.residual == 0.0);
}

TEST_CASE("undamped division refuses a symbol that underflows to zero") {
  const Grid grid{1024, 64.0};
  const auto g = unit_gaussian_line(grid);
  CHECK_THROWS_AS((void)deconvolve(g, KernelSpec::gaussian_unit(),
                                   {RegMethod::Tikhonov, 0.0}),
                  SingularInversionError);
  // the cutoff variant drops the vanished bins instead
  CHECK_NOTHROW((void)deconvolve(g, KernelSpec::gaussian_unit(),
                                 {RegMethod::SpectralCutoff, 0.0}));
}

TEST_CASE("discrepancy choice puts the residual at tau times delta") {
  const Grid grid{1024, 64.0};
  const auto f = unit_gaussian_line(grid);
  const auto g = convolve(f, KernelSpec::lorentz_width(2.0));
  const double delta = 0.05 * g.l2_norm();
  const auto noisy = add_noise(g, 0.05, 1234);

  const double alpha = choose_alpha_discrepancy(
      noisy, KernelSpec::lorentz_width(2.0), RegMethod::Tikhonov, delta, 1.1);
  const auto result = deconvolve(noisy, KernelSpec::lorentz_width(2.0),
                                 {RegMethod::Tikhonov, alpha});
  CHECK(result.residual / delta >= 1.1 * 0.99);
  CHECK(result.residual / delta <= 1.1 * 1.01);

  // the step-like cutoff residual may miss the band but never overshoots it
  const double alpha_cut = choose_alpha_discrepancy(
      noisy, KernelSpec::lorentz_width(2.0), RegMethod::SpectralCutoff, delta,
      1.1);
  const auto cut = deconvolve(noisy, KernelSpec::lorentz_width(2.0),
                              {RegMethod::SpectralCutoff, alpha_cut});
  CHECK(cut.residual <= 1.1 * delta * 1.01);
}

TEST_CASE("an unreachable residual target is reported as incompatible") {
  const Grid grid{1024, 64.0};
  const auto g = unit_gaussian_line(grid);
  const auto noisy = add_noise(g, 0.05, 7);
  CHECK_THROWS_AS((void)choose_alpha_discrepancy(noisy,
                                                 KernelSpec::gaussian_unit(),
                                                 RegMethod::Tikhonov,
                                                 1e-9 * g.l2_norm(), 1.1),
                  DataIncompatibleError);
}

TEST_CASE("discrepancy arguments are validated") {
  const Grid grid{256, 32.0};
  const auto g = unit_gaussian_line(grid);
  CHECK_THROWS_AS((void)choose_alpha_discrepancy(
                      g, KernelSpec::lorentz_width(1.0), RegMethod::Tikhonov,
                      0.0, 1.1),
                  DomainError);
  CHECK_THROWS_AS((void)choose_alpha_discrepancy(
                      g, KernelSpec::lorentz_width(1.0), RegMethod::Tikhonov,
                      0.1, 0.5),
                  DomainError);
  CHECK_THROWS_AS(
      (void)deconvolve(g, KernelSpec::lorentz_width(1.0),
                       {RegMethod::Tikhonov, -1.0}),
      ConfigError);
}

TEST_CASE("enhancement narrows a noisy voigt profile and reduces the error") {
  const Grid grid{1024, 64.0};
  const auto f = unit_gaussian_line(grid);
  const auto g = convolve(f, KernelSpec::lorentz_width(1.0));
  const auto noisy = add_noise(g, 0.01, 99);
  const double delta = 0.01 * g.l2_norm();
  const double alpha = choose_alpha_discrepancy(
      noisy, KernelSpec::lorentz_width(1.0), RegMethod::Tikhonov, delta, 1.1);
  const auto result = deconvolve(noisy, KernelSpec::lorentz_width(1.0),
                                 {RegMethod::Tikhonov, alpha});
  CHECK(fwhm(result.enhanced) < fwhm(noisy));
  CHECK(l2_distance(result.enhanced, f) < l2_distance(noisy, f));
}

TEST_CASE("matched source condition yields a norm, a bound, and a true error below it") {
  const Grid grid{512, 64.0};
  const auto f = unit_gaussian_line(grid);
  const auto g = convolve(f, KernelSpec::lorentz_width(1.0));
  const auto cond = SourceCondition::lorentz_on_gaussian(1.0);
  const auto result = deconvolve(g, KernelSpec::lorentz_width(1.0),
                                 {RegMethod::Tikhonov, 1e-6}, &cond);
  REQUIRE(result.psi_norm.has_value());
  REQUIRE(result.bound.has_value());
  CHECK(*result.psi_norm > 0.0);
  CHECK(result.residual > 0.0);
  CHECK(l2_distance(result.enhanced, f) <= *result.bound);
}

TEST_CASE("a condition that disagrees with the kernel is rejected") {
  const Grid grid{256, 32.0};
  const auto g = unit_gaussian_line(grid);
  const auto cond = SourceCondition::lorentz_on_gaussian(1.0);
  CHECK_THROWS_AS((void)deconvolve(g, KernelSpec::gaussian_width(0.5),
                                   {RegMethod::Tikhonov, 1e-6}, &cond),
                  ConfigError);
}

} // TEST_SUITE
