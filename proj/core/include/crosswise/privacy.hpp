#pragma once

#include "crosswise/types.hpp"

namespace crosswise {

/// Design-time privacy requirement: the disclosure probability P{Y=1 | Z=0}
/// must stay at or below `gamma` for every pi in (0, pi0].
class PrivacySpec {
 public:
  /// Throws InfeasibleDesign unless 0 < pi0 < gamma < 1.
  PrivacySpec(double pi0, double gamma);

  [[nodiscard]] double pi0() const noexcept { return pi0_; }
  [[nodiscard]] double gamma() const noexcept { return gamma_; }

 private:
  double pi0_;
  double gamma_;
};

struct DisclosureProbabilities {
  double p11 = 0.0;  // P{Y = 1 | Z = 1}
  double p10 = 0.0;  // P{Y = 1 | Z = 0}
};

/// Bayes posteriors of a YES to the sensitive question given the report.
/// Requires 0 < pi < 1 and 0 < q < 0.5.
DisclosureProbabilities disclosure_probabilities(Probability pi, Probability q);

/// q(pi; gamma) = pi (1 - gamma) / (gamma (1 - 2 pi) + pi): the smallest q for
/// which p10(pi, q) <= gamma.
double q_bound(double pi, double gamma);

/// Lower edge of the feasible neutral-probability region [q_min, 0.5).
Probability q_min(const PrivacySpec& spec);

}  // namespace crosswise
