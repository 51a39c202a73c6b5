#pragma once

#include <vector>

#include "specenh/grid.hpp"
#include "specenh/kernels.hpp"

namespace specenh {

struct FitOptions {
  int max_iterations = 50;
  double gradient_tolerance = 1e-10;
};

struct FitResult {
  LineSpectrum lines;         // recovered lines, sorted by location
  double residual_norm = 0.0; // distance between the model and the data
  double condition = 0.0;     // extreme singular value ratio of the design
  int iterations = 0;         // accepted Gauss-Newton steps
  bool converged = false;
};

// Intensities at known locations by linear least squares against kernel
// translates.  Throws RankDeficiencyError (naming the offending pair) when
// two locations fall within twice the grid spacing or the design loses rank.
std::vector<double> solve_intensities(const SampledSpectrum& data,
                                      const KernelSpec& kernel,
                                      const std::vector<double>& locations);

// Same with an arbitrary sampled profile as the column shape, e.g. the line
// shape left after an enhancement pass.
std::vector<double> solve_intensities_shape(const SampledSpectrum& data,
                                            const SampledSpectrum& shape,
                                            const std::vector<double>& locations);

// Ratio of the largest to the smallest singular value of the design matrix;
// infinity when the smallest vanishes.
double condition_estimate(const KernelSpec& kernel, const Grid& grid,
                          const std::vector<double>& locations);
double condition_estimate_shape(const SampledSpectrum& shape,
                                const std::vector<double>& locations);

// Full line fit by variable projection: Gauss-Newton on the reduced residual
// in the locations, intensities re-solved at every evaluation.
FitResult varpro_fit(const SampledSpectrum& data, const KernelSpec& kernel,
                     std::vector<double> initial_locations,
                     const FitOptions& options = {});
FitResult varpro_fit_shape(const SampledSpectrum& data,
                           const SampledSpectrum& shape,
                           std::vector<double> initial_locations,
                           const FitOptions& options = {});

} // namespace specenh
