#pragma once

#include <optional>
#include <string>

#include "specenh/grid.hpp"
#include "specenh/kernels.hpp"

namespace specenh {

enum class ConditionKind {
  EddingtonGaussian, // Gaussian-shaped data, order-k derivative enhancement
  LorentzOnGaussian, // Gaussian-shaped data, Lorentz division of width kappa
  LorentzOnVoigt,    // Voigt(theta) data, Lorentz division of width kappa
};

/// Smoothness class of the data relative to the chosen enhancement, given by
/// an index-function pair (psi, Psi) with Psi(psi(lambda)) = lambda.
struct SourceCondition {
  ConditionKind kind = ConditionKind::LorentzOnGaussian;
  double kappa = 0.0;
  double theta = 0.0;
  int k = 0;

  static SourceCondition eddington_gaussian(int k);
  static SourceCondition lorentz_on_gaussian(double kappa);
  static SourceCondition lorentz_on_voigt(double kappa, double theta);
  void validate() const;
};

std::string condition_name(ConditionKind kind);

/// log psi at log_lambda = log(lambda), log_lambda >= 0.
double psi_log_at(const SourceCondition& cond, double log_lambda);

/// log Psi at log_eta = log(eta), log_eta >= 0.
double big_psi_log_at(const SourceCondition& cond, double log_eta);

/// psi(lambda) for lambda >= 1. Throws DomainError below 1 and OverflowError
/// (with the log value in the message) past the representable range.
double psi_eval(const SourceCondition& cond, double lambda);

/// Psi(eta) for eta >= 1, with the same guards as psi_eval.
double big_psi_eval(const SourceCondition& cond, double eta);

/// Where Psi is concave: everywhere on [1, inf), or only above eta_threshold.
struct ConcavityRegion {
  bool unconditional = true;
  std::optional<double> eta_threshold;
  std::optional<double> log_eta_threshold;

  double min_log_eta() const;
};

ConcavityRegion concavity_region(const SourceCondition& cond);

struct PsiNormResult {
  bool finite = true;
  /// Quadratic form (g, psi((B B*)^{-1}) g) when finite.
  double value = 0.0;
  double log_value = 0.0;
};

/// Weighted spectral sum  sum_k psi(1/symbol(w_k)^2) |g_hat_k|^2 domega,
/// computed in log space. cond must match the enhancement kernel (same order
/// k or width kappa). Bins below the transform roundoff floor are dropped;
/// the result is flagged non-finite when the sum overflows or is dominated
/// by the highest trusted frequencies, which marks data outside the
/// smoothness class on this grid. For data derived from larger quantities
/// (differences, say) pass the peak spectral magnitude of the source as
/// roundoff_scale so the floor reflects where the roundoff actually sits.
PsiNormResult psi_norm(const SampledSpectrum& g, const SourceCondition& cond,
                       const KernelSpec& enhancement,
                       double roundoff_scale = 0.0);

/// Error bound  epsilon * sqrt(Psi(S^2 / epsilon^2))  where S bounds the
/// stability norm of the enhanced data plus the data norm. Throws
/// BoundInvalidError when S^2/epsilon^2 lies below the validated concavity
/// region of Psi.
double enhancement_error_bound(double epsilon, double stability_plus_data,
                               const SourceCondition& cond);

/// Deficit d(eps) in the guaranteed convergence order eps^(1 - d): the rate
/// approaches 1 as eps -> 0 but never reaches it. Requires 0 < eps < 1/e;
/// throws BoundInvalidError when d >= 1 (the enhancement is too aggressive
/// for this noise level).
double rate_deficit(const SourceCondition& cond, double epsilon);

/// The raw deficit with no validity threshold, for reporting flagged rows;
/// still requires 0 < eps < 1/e.
double rate_deficit_value(const SourceCondition& cond, double epsilon);

} // namespace specenh
