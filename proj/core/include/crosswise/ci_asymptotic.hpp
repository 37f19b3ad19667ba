#pragma once

// Normal-approximation intervals built on the unclipped estimator
//   pi_c = (rho_hat - (1 - q)) / (2q - 1),
// which is unbiased with variance rho (1 - rho) / (n (2q - 1)^2).

#include "crosswise/ci_exact.hpp"
#include "crosswise/model.hpp"

namespace crosswise {

struct UnbiasedEstimate {
  double pi_c = 0.0;               // not clipped; may leave [0, 1]
  double variance_unbiased = 0.0;  // rho_hat (1 - rho_hat) / ((n - 1)(2q - 1)^2)
};

/// Requires n >= 2.
UnbiasedEstimate unbiased_estimate(const ModelConfig& config, ObservedCount z);

/// pi_c without the variance part; defined for every n >= 1.
double unbiased_point(const ModelConfig& config, ObservedCount z);

/// Roots of (pi_c - pi)^2 = u^2 Var_pi(pi_c) in pi:
///
///   (2n pi_c + u^2 +- u sqrt(4n pi_c (1 - pi_c) + (4n(1-q)q + u^2) / (1-2q)^2))
///   -------------------------------------------------------------------------
///                              2 (n + u^2)
///
/// with u the (1+delta)/2 normal quantile. A negative discriminant collapses
/// the interval onto the vertex and sets `collapsed`.
IntervalEstimate wp_interval(const ModelConfig& config, ObservedCount z, ConfidenceLevel level);

/// pi_c +- u sqrt(variance_unbiased). Requires n >= 2.
IntervalEstimate ap_interval(const ModelConfig& config, ObservedCount z, ConfidenceLevel level);

/// Dispatches on the method tag.
IntervalEstimate interval(Method method, const ModelConfig& config, ObservedCount z, ConfidenceLevel level);

}  // namespace crosswise
