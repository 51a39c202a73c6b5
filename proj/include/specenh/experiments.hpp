#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "specenh/bounds.hpp"
#include "specenh/enhance.hpp"
#include "specenh/grid.hpp"
#include "specenh/kernels.hpp"

namespace specenh {

// Noiseless sweep of enhancement widths applied to a unit gaussian line:
// how far the line narrows and what it costs in side lobes.
struct NarrowingPoint {
  double kappa = 0.0;
  double alpha = 0.0;
  double fwhm_ratio = 0.0;
  double lowest_value = 0.0; // most negative sample of the enhanced profile
};

struct NarrowingSweep {
  Grid grid;
  double fwhm_before = 0.0;
  SampledSpectrum input;
  std::vector<NarrowingPoint> points;
  std::vector<SampledSpectrum> profiles;
};

NarrowingSweep run_narrowing_sweep();

// Damping sweep at a fixed enhancement width, optionally with noise: the
// narrowing/oscillation trade-off as the damping is relaxed.
struct DampingPoint {
  double alpha = 0.0;
  double fwhm_ratio = 0.0; // nan when the enhanced profile has no clean peak
  double residual = 0.0;
  double off_peak_amplitude = 0.0; // max |value| beyond 3 widths of center
};

struct DampingSweep {
  Grid grid;
  double kappa = 0.0;
  double noise_level = 0.0;
  std::uint64_t seed = 0;
  double fwhm_before = 0.0;
  SampledSpectrum input;
  std::vector<DampingPoint> points;
  std::vector<SampledSpectrum> profiles;
};

DampingSweep run_damping_sweep(double noise_level, std::uint64_t seed);

// Convergence-rate study: noise levels sweep down, the damping follows the
// discrepancy principle, and each run records the realized error against the
// a-priori bound evaluated from computable quantities.
struct RatePoint {
  double target_noise = 0.0; // requested relative noise level
  double alpha = 0.0;
  double epsilon = 0.0; // distance of the reconvolved estimate to clean data
  double error = 0.0;   // distance of the estimate to the truth
  double bound = 0.0;   // error bound from the stability and data norms
  double predicted_exponent = 0.0; // 1 - rate deficit; nan when deficit >= 1
  double rate_reference = 0.0;     // epsilon^(1-deficit); nan when deficit >= 1
};

struct RateStudy {
  std::string label;
  Grid grid;
  KernelSpec kernel;
  SourceCondition condition = SourceCondition::lorentz_on_gaussian(1.0);
  double tau = 1.1;
  std::uint64_t seed = 0;
  std::vector<RatePoint> points;
  double slope = 0.0; // least-squares slope of log error against log epsilon
};

// The single study the acceptance gate checks.
RateStudy run_rate_study(std::uint64_t seed);

// One study per condition family, same grid and noise ladder.
std::vector<RateStudy> run_rate_studies(std::uint64_t seed);

// CSV/JSON writers used by the command layer; out_dir must exist or be
// creatable.
void write_narrowing_sweep(const std::string& out_dir,
                           const NarrowingSweep& sweep);
void write_damping_sweep(const std::string& out_dir, const DampingSweep& sweep);
void write_rate_study(const std::string& out_dir, const RateStudy& study);

} // namespace specenh
