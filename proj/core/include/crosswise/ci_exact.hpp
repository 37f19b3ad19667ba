#pragma once

#include <string_view>

#include "crosswise/model.hpp"
#include "crosswise/types.hpp"

namespace crosswise {

enum class Method { cp, wp, ap };

std::string_view to_string(Method method) noexcept;
/// Parses "cp", "wp" or "ap" (case-insensitive). Throws DomainError otherwise.
Method parse_method(std::string_view text);

/// Interval for pi as reported: endpoints clipped to [0, 1].
///
/// `lower_degenerate` is set when the unclipped lower endpoint fell below 0,
/// `upper_degenerate` when the unclipped upper endpoint rose above 1.
/// `collapsed` marks an asymptotic interval whose quadratic had no real roots.
/// The unclipped endpoints are kept in `raw_lower` / `raw_upper`.
struct IntervalEstimate {
  Method method = Method::cp;
  double lower = 0.0;
  double upper = 1.0;
  bool lower_degenerate = false;
  bool upper_degenerate = false;
  bool collapsed = false;
  double raw_lower = 0.0;
  double raw_upper = 1.0;

  [[nodiscard]] double length() const noexcept { return upper - lower; }
  /// Strict membership, lower < pi < upper.
  [[nodiscard]] bool covers(double pi) const noexcept { return lower < pi && pi < upper; }
};

/// Clips raw endpoints into [0, 1] and sets the degeneracy flags.
IntervalEstimate make_reported_interval(Method method, double raw_lower, double raw_upper);

/// Exact equitailed interval at count z.
///
/// The Clopper-Pearson limits for rho,
///   rho_L = B^{-1}(z, n-z+1; (1-delta)/2)    (0 when z = 0)
///   rho_U = B^{-1}(z+1, n-z; (1+delta)/2)    (1 when z = n)
/// are mapped through pi = (rho - (1-q)) / (2q - 1). Since 2q - 1 < 0 the
/// upper rho limit gives the lower pi limit.
IntervalEstimate cp_interval(const ModelConfig& config, ObservedCount z, ConfidenceLevel level);

/// upper - lower of cp_interval.
double cp_length(const ModelConfig& config, ObservedCount z, ConfidenceLevel level);

}  // namespace crosswise
