#include "doctest.h"

#include <cmath>
#include <vector>

#include "specenh/enhance.hpp"
#include "specenh/errors.hpp"
#include "specenh/fitting.hpp"
#include "specenh/grid.hpp"

using namespace specenh;

namespace {

double refit_residual(const SampledSpectrum& data, const KernelSpec& kernel,
                      const std::vector<double>& locations) {
  const auto intensities = solve_intensities(data, kernel, locations);
  std::vector<Line> lines;
  for (std::size_t i = 0; i < locations.size(); ++i)
    lines.push_back({locations[i], intensities[i]});
  const auto model = broaden(LineSpectrum::make(lines), kernel, data.grid);
  return l2_distance(model, data);
}

} // namespace

TEST_SUITE("fitting") {

TEST_CASE("intensities at known locations are recovered exactly") {
  const Grid grid{512, 64.0};
  const auto kernel = KernelSpec::gaussian_unit();
  const auto truth =
      LineSpectrum::make({{-3.2, 1.7}, {0.45, 0.6}, {5.0, 2.2}});
  const auto g = broaden(truth, kernel, grid);
  const auto u = solve_intensities(g, kernel, {-3.2, 0.45, 5.0});
  REQUIRE(u.size() == 3);
  CHECK(u[0] == doctest::Approx(1.7).epsilon(1e-10));
  CHECK(u[1] == doctest::Approx(0.6).epsilon(1e-10));
  CHECK(u[2] == doctest::Approx(2.2).epsilon(1e-10));
}

TEST_CASE("a sampled profile gives the same answer as its kernel") {
  const Grid grid{512, 64.0};
  const auto kernel = KernelSpec::voigt(0.6);
  const auto g = broaden(LineSpectrum::make({{-2.0, 1.1}, {1.5, 0.4}}),
                         kernel, grid);
  const auto direct = solve_intensities(g, kernel, {-2.0, 1.5});
  const auto via_shape =
      solve_intensities_shape(g, sample_kernel(kernel, grid), {-2.0, 1.5});
  REQUIRE(via_shape.size() == direct.size());
  for (std::size_t i = 0; i < direct.size(); ++i)
    CHECK(via_shape[i] == doctest::Approx(direct[i]).epsilon(1e-10));
}

TEST_CASE("widely separated lines decouple") {
  const Grid grid{1024, 64.0};
  const auto kernel = KernelSpec::gaussian_unit();
  const auto g = broaden(LineSpectrum::make({{-12.0, 3.0}, {0.0, 0.5}, {12.0, 1.0}}),
                         kernel, grid);
  const auto u = solve_intensities(g, kernel, {-12.0, 0.0, 12.0});
  CHECK(u[0] == doctest::Approx(3.0).epsilon(1e-6));
  CHECK(u[1] == doctest::Approx(0.5).epsilon(1e-6));
  CHECK(u[2] == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("colliding locations are reported with the offending pair") {
  const Grid grid{256, 32.0};
  const auto kernel = KernelSpec::gaussian_unit();
  const auto g = broaden(LineSpectrum::make({{0.0, 1.0}}), kernel, grid);
  const double dx = grid.dx();
  try {
    (void)solve_intensities(g, kernel, {-3.0, 0.0, 0.5 * dx});
    FAIL("expected RankDeficiencyError");
  } catch (const RankDeficiencyError& e) {
    CHECK(e.first == 1);
    CHECK(e.second == 2);
  }
}

TEST_CASE("argument validation") {
  const Grid grid{256, 32.0};
  const auto kernel = KernelSpec::gaussian_unit();
  const auto g = broaden(LineSpectrum::make({{0.0, 1.0}}), kernel, grid);
  CHECK_THROWS_AS((void)solve_intensities(g, kernel, {}), DomainError);
  const auto other_shape = sample_kernel(kernel, Grid{512, 32.0});
  CHECK_THROWS_AS((void)solve_intensities_shape(g, other_shape, {0.0}),
                  ConfigError);
  CHECK_THROWS_AS((void)varpro_fit(g, kernel, {40.0}), DomainError);
}

TEST_CASE("condition of the design grows as lines approach") {
  const Grid grid{512, 64.0};
  const auto kernel = KernelSpec::gaussian_unit();
  const double far = condition_estimate(kernel, grid, {-5.0, 5.0});
  const double close = condition_estimate(kernel, grid, {-0.5, 0.5});
  CHECK(far < close);
  CHECK(far < 1.1);
  CHECK(close > 2.5);
  // a cluster of five lines blends far worse than any pair
  const double cluster =
      condition_estimate(kernel, grid, {-0.6, -0.3, 0.0, 0.3, 0.6});
  CHECK(cluster > 1e3);
  CHECK(condition_estimate_shape(sample_kernel(kernel, grid), {-5.0, 5.0}) ==
        doctest::Approx(far).epsilon(1e-8));
}

TEST_CASE("variable projection recovers lines from an offset start") {
  const Grid grid{512, 64.0};
  const auto kernel = KernelSpec::gaussian_unit();
  const auto g = broaden(LineSpectrum::make({{-3.0, 2.0}, {3.0, 1.0}}),
                         kernel, grid);
  const auto fit = varpro_fit(g, kernel, {-3.5, 3.4});
  REQUIRE(fit.lines.lines.size() == 2);
  CHECK(fit.converged);
  CHECK(fit.lines.lines[0].location == doctest::Approx(-3.0).epsilon(1e-4));
  CHECK(fit.lines.lines[1].location == doctest::Approx(3.0).epsilon(1e-4));
  CHECK(fit.lines.lines[0].intensity == doctest::Approx(2.0).epsilon(1e-3));
  CHECK(fit.lines.lines[1].intensity == doctest::Approx(1.0).epsilon(1e-3));
  CHECK(fit.residual_norm < 1e-6);
}

TEST_CASE("starting at the truth takes no steps") {
  const Grid grid{512, 64.0};
  const auto kernel = KernelSpec::gaussian_unit();
  const auto g = broaden(LineSpectrum::make({{-3.0, 2.0}, {3.0, 1.0}}),
                         kernel, grid);
  const auto fit = varpro_fit(g, kernel, {-3.0, 3.0});
  CHECK(fit.converged);
  CHECK(fit.iterations == 0);
}

TEST_CASE("the fit does not depend on the order of the starting points") {
  const Grid grid{512, 64.0};
  const auto kernel = KernelSpec::gaussian_unit();
  const auto g = broaden(LineSpectrum::make({{-3.0, 2.0}, {3.0, 1.0}}),
                         kernel, grid);
  const auto a = varpro_fit(g, kernel, {-3.5, 3.4});
  const auto b = varpro_fit(g, kernel, {3.4, -3.5});
  REQUIRE(a.lines.lines.size() == b.lines.lines.size());
  for (std::size_t i = 0; i < a.lines.lines.size(); ++i) {
    CHECK(a.lines.lines[i].location == b.lines.lines[i].location);
    CHECK(a.lines.lines[i].intensity == b.lines.lines[i].intensity);
  }
}

TEST_CASE("the returned locations are a local minimum of the residual") {
  const Grid grid{512, 64.0};
  const auto kernel = KernelSpec::gaussian_unit();
  const auto g = broaden(LineSpectrum::make({{-3.0, 2.0}, {3.0, 1.0}}),
                         kernel, grid);
  const auto fit = varpro_fit(g, kernel, {-3.5, 3.4});
  const double x0 = fit.lines.lines[0].location;
  const double x1 = fit.lines.lines[1].location;
  CHECK(refit_residual(g, kernel, {x0 + 0.05, x1}) > fit.residual_norm);
  CHECK(refit_residual(g, kernel, {x0, x1 - 0.05}) > fit.residual_norm);
}

TEST_CASE("noisy data still localizes well-separated lines") {
  const Grid grid{512, 64.0};
  const auto kernel = KernelSpec::gaussian_unit();
  const auto g = broaden(LineSpectrum::make({{-3.0, 2.0}, {3.0, 1.0}}),
                         kernel, grid);
  const auto noisy = add_noise(g, 0.01, 42);
  const auto fit = varpro_fit(noisy, kernel, {-3.5, 3.4});
  CHECK(fit.converged);
  CHECK(std::abs(fit.lines.lines[0].location + 3.0) < 0.05);
  CHECK(std::abs(fit.lines.lines[1].location - 3.0) < 0.05);
}

TEST_CASE("a blended pair still resolves without noise") {
  const Grid grid{512, 64.0};
  const auto kernel = KernelSpec::gaussian_unit();
  const auto g = broaden(LineSpectrum::make({{-0.25, 1.0}, {0.25, 1.0}}),
                         kernel, grid);
  const auto fit = varpro_fit(g, kernel, {-0.8, 0.8});
  CHECK(fit.converged);
  CHECK(fit.lines.lines[0].location == doctest::Approx(-0.25).epsilon(1e-3));
  CHECK(fit.lines.lines[1].location == doctest::Approx(0.25).epsilon(1e-3));
  CHECK(fit.condition > condition_estimate(kernel, grid, {-5.0, 5.0}));
}

TEST_CASE("narrowing the lines first improves a blended fit") {
  const Grid grid{1024, 64.0};
  // voigt observation: gaussian core with an equal lorentz part
  const auto observed = KernelSpec::voigt(0.5);
  const double lorentz_part = std::sqrt(2.0) * 0.5;
  const auto truth = LineSpectrum::make({{-0.9, 1.0}, {0.9, 0.8}});
  const auto g = broaden(truth, observed, grid);
  const auto noisy = add_noise(g, 0.02, 7);
  const double delta = 0.02 * g.l2_norm();

  const auto raw_fit = varpro_fit(noisy, observed, {-1.4, 1.3});

  const double alpha = choose_alpha_discrepancy(
      noisy, KernelSpec::lorentz_width(lorentz_part), RegMethod::Tikhonov,
      delta, 1.1);
  const auto enhanced = deconvolve(noisy, KernelSpec::lorentz_width(lorentz_part),
                                   {RegMethod::Tikhonov, alpha});
  const auto narrow = KernelSpec::gaussian_width(std::sqrt(0.5));
  const auto enhanced_fit =
      varpro_fit(enhanced.enhanced, narrow, {-1.4, 1.3});

  const auto worst_location_error = [&](const FitResult& fit) {
    double worst = 0.0;
    for (std::size_t i = 0; i < truth.lines.size(); ++i)
      worst = std::max(worst, std::abs(fit.lines.lines[i].location -
                                       truth.lines[i].location));
    return worst;
  };
  CHECK(worst_location_error(enhanced_fit) <=
        worst_location_error(raw_fit) + 0.02);
  CHECK(worst_location_error(enhanced_fit) < 0.1);
}

} // TEST_SUITE
