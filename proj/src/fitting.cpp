#include "specenh/fitting.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <string>

#include <Eigen/Dense>
#include <Eigen/SVD>

#include "specenh/errors.hpp"

namespace specenh {

namespace {

constexpr double qr_threshold = 1e-10;

using ColumnBuilder = std::function<std::vector<double>(double)>;

ColumnBuilder kernel_columns(const KernelSpec& kernel, const Grid& grid) {
  return [kernel, grid](double location) {
    return broaden(LineSpectrum::make({{location, 1.0}}), kernel, grid).values;
  };
}

ColumnBuilder shape_columns(const SampledSpectrum& shape) {
  return [shape](double location) {
    return place_profiles(shape, LineSpectrum::make({{location, 1.0}})).values;
  };
}

std::pair<int, int> closest_pair(const std::vector<double>& locations) {
  int first = 0;
  int second = 1;
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < locations.size(); ++i) {
    for (std::size_t j = i + 1; j < locations.size(); ++j) {
      const double gap = std::abs(locations[i] - locations[j]);
      if (gap < best) {
        best = gap;
        first = static_cast<int>(i);
        second = static_cast<int>(j);
      }
    }
  }
  return {first, second};
}

void check_separation(const std::vector<double>& locations, double dx) {
  if (locations.size() < 2) return;
  const auto [i, j] = closest_pair(locations);
  const double gap = std::abs(locations[i] - locations[j]);
  if (gap < 2.0 * dx)
    throw RankDeficiencyError(
        "fit: lines " + std::to_string(i) + " and " + std::to_string(j) +
            " are separated by " + std::to_string(gap) +
            ", below twice the grid spacing " + std::to_string(dx),
        i, j);
}

Eigen::MatrixXd build_design(const ColumnBuilder& column, int rows,
                             const std::vector<double>& locations) {
  Eigen::MatrixXd design(rows, static_cast<int>(locations.size()));
  for (std::size_t i = 0; i < locations.size(); ++i) {
    const auto values = column(locations[i]);
    for (int r = 0; r < rows; ++r) design(r, static_cast<int>(i)) = values[r];
  }
  return design;
}

std::vector<double> solve_against(const ColumnBuilder& column, const Grid& grid,
                                  const std::vector<double>& data,
                                  const std::vector<double>& locations) {
  if (static_cast<int>(data.size()) != grid.n)
    throw DomainError("fit: data length " + std::to_string(data.size()) +
                      " does not match the grid size " + std::to_string(grid.n));
  if (locations.empty())
    throw DomainError("fit: at least one line location is required");
  check_separation(locations, grid.dx());
  const Eigen::MatrixXd design = build_design(column, grid.n, locations);
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(design);
  qr.setThreshold(qr_threshold);
  if (qr.rank() < static_cast<Eigen::Index>(locations.size())) {
    const auto [i, j] = closest_pair(locations);
    throw RankDeficiencyError(
        "fit: design matrix is rank deficient; lines " + std::to_string(i) +
            " and " + std::to_string(j) + " are nearly indistinguishable",
        i, j);
  }
  const Eigen::VectorXd rhs =
      Eigen::Map<const Eigen::VectorXd>(data.data(), grid.n);
  const Eigen::VectorXd solution = qr.solve(rhs);
  return {solution.data(), solution.data() + solution.size()};
}

double condition_of(const ColumnBuilder& column, const Grid& grid,
                    const std::vector<double>& locations) {
  if (locations.empty())
    throw DomainError("fit: at least one line location is required");
  const Eigen::MatrixXd design = build_design(column, grid.n, locations);
  const Eigen::BDCSVD<Eigen::MatrixXd> svd(design);
  const auto& sigma = svd.singularValues();
  const double smallest = sigma(sigma.size() - 1);
  if (smallest <= 0.0) return std::numeric_limits<double>::infinity();
  return sigma(0) / smallest;
}

struct Reduced {
  std::vector<double> intensities;
  Eigen::VectorXd residual;
};

Reduced reduced_residual(const ColumnBuilder& column, const Grid& grid,
                         const std::vector<double>& data,
                         const std::vector<double>& locations) {
  Reduced out;
  out.intensities = solve_against(column, grid, data, locations);
  const Eigen::MatrixXd design = build_design(column, grid.n, locations);
  const Eigen::VectorXd rhs =
      Eigen::Map<const Eigen::VectorXd>(data.data(), grid.n);
  out.residual =
      design * Eigen::Map<const Eigen::VectorXd>(out.intensities.data(),
                                                 out.intensities.size()) -
      rhs;
  return out;
}

FitResult varpro_impl(const ColumnBuilder& column, const Grid& grid,
                      const std::vector<double>& data,
                      std::vector<double> locations, const FitOptions& options) {
  grid.validate();
  if (locations.empty())
    throw DomainError("fit: at least one line location is required");
  for (double x : locations)
    if (!(x >= -0.5 * grid.length) || !(x < 0.5 * grid.length))
      throw DomainError("fit: initial location " + std::to_string(x) +
                        " lies outside the grid domain");
  // canonical ordering makes the fit invariant to the input permutation
  std::sort(locations.begin(), locations.end());

  const int m = static_cast<int>(locations.size());
  const double h = std::max(1e-6, grid.dx() / 10.0);

  FitResult result;
  Reduced current = reduced_residual(column, grid, data, locations);

  for (int iter = 0; iter < options.max_iterations; ++iter) {
    // central-difference Jacobian of the reduced residual
    Eigen::MatrixXd jacobian(grid.n, m);
    bool jacobian_ok = true;
    for (int i = 0; i < m && jacobian_ok; ++i) {
      auto forward = locations;
      auto backward = locations;
      forward[i] += h;
      backward[i] -= h;
      try {
        const auto up = reduced_residual(column, grid, data, forward);
        const auto down = reduced_residual(column, grid, data, backward);
        jacobian.col(i) = (up.residual - down.residual) / (2.0 * h);
      } catch (const Error&) {
        jacobian_ok = false;
      }
    }
    if (!jacobian_ok) break;

    const double gradient =
        (jacobian.transpose() * current.residual).norm() * grid.dx();
    if (gradient < options.gradient_tolerance) {
      result.converged = true;
      break;
    }

    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(jacobian);
    qr.setThreshold(qr_threshold);
    const Eigen::VectorXd direction = qr.solve(-current.residual);

    // damped line search on the reduced residual norm
    double step = 1.0;
    bool accepted = false;
    for (int halving = 0; halving < 25 && !accepted; ++halving, step *= 0.5) {
      auto trial = locations;
      for (int i = 0; i < m; ++i) trial[i] += step * direction(i);
      try {
        Reduced next = reduced_residual(column, grid, data, trial);
        if (next.residual.norm() < current.residual.norm()) {
          locations = std::move(trial);
          current = std::move(next);
          accepted = true;
        }
      } catch (const Error&) {
        // the trial collided lines or left the domain: shorten the step
      }
    }
    if (!accepted) break;
    ++result.iterations;
  }

  std::vector<Line> lines(m);
  for (int i = 0; i < m; ++i)
    lines[i] = {locations[i], current.intensities[i]};
  result.lines = LineSpectrum::make(std::move(lines));
  result.residual_norm = current.residual.norm() * std::sqrt(grid.dx());
  result.condition = condition_of(column, grid, locations);
  return result;
}

} // namespace

std::vector<double> solve_intensities(const SampledSpectrum& data,
                                      const KernelSpec& kernel,
                                      const std::vector<double>& locations) {
  data.grid.validate();
  kernel.validate();
  return solve_against(kernel_columns(kernel, data.grid), data.grid,
                       data.values, locations);
}

std::vector<double> solve_intensities_shape(const SampledSpectrum& data,
                                            const SampledSpectrum& shape,
                                            const std::vector<double>& locations) {
  data.grid.validate();
  if (shape.grid != data.grid)
    throw ConfigError("fit: shape and data grids differ");
  return solve_against(shape_columns(shape), data.grid, data.values, locations);
}

double condition_estimate(const KernelSpec& kernel, const Grid& grid,
                          const std::vector<double>& locations) {
  grid.validate();
  kernel.validate();
  return condition_of(kernel_columns(kernel, grid), grid, locations);
}

double condition_estimate_shape(const SampledSpectrum& shape,
                                const std::vector<double>& locations) {
  shape.grid.validate();
  return condition_of(shape_columns(shape), shape.grid, locations);
}

FitResult varpro_fit(const SampledSpectrum& data, const KernelSpec& kernel,
                     std::vector<double> initial_locations,
                     const FitOptions& options) {
  kernel.validate();
  return varpro_impl(kernel_columns(kernel, data.grid), data.grid, data.values,
                     std::move(initial_locations), options);
}

FitResult varpro_fit_shape(const SampledSpectrum& data,
                           const SampledSpectrum& shape,
                           std::vector<double> initial_locations,
                           const FitOptions& options) {
  if (shape.grid != data.grid)
    throw ConfigError("fit: shape and data grids differ");
  return varpro_impl(shape_columns(shape), data.grid, data.values,
                     std::move(initial_locations), options);
}

} // namespace specenh
