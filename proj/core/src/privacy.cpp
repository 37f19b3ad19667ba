#include "crosswise/privacy.hpp"

#include <cmath>
#include <string>

namespace crosswise {

PrivacySpec::PrivacySpec(double pi0, double gamma) : pi0_(pi0), gamma_(gamma) {
  if (std::isnan(pi0) || std::isnan(gamma) || !(pi0 > 0.0) || !(gamma < 1.0)) {
    throw DomainError("privacy spec requires 0 < pi0 and gamma < 1");
  }
  if (!(gamma > pi0)) {
    throw InfeasibleDesign("privacy constraint unsatisfiable: gamma (" + std::to_string(gamma) +
                           ") must exceed pi0 (" + std::to_string(pi0) + ")");
  }
}

DisclosureProbabilities disclosure_probabilities(Probability pi, Probability q) {
  const double p = pi.value();
  const double qv = q.value();
  if (p <= 0.0 || p >= 1.0) {
    throw DomainError("disclosure probabilities need 0 < pi < 1");
  }
  if (qv <= 0.0 || qv >= 0.5) {
    throw DomainError("disclosure probabilities need 0 < q < 0.5");
  }
  DisclosureProbabilities out;
  out.p11 = p * qv / (p * qv + (1.0 - p) * (1.0 - qv));
  out.p10 = p * (1.0 - qv) / (p * (1.0 - qv) + (1.0 - p) * qv);
  return out;
}

double q_bound(double pi, double gamma) {
  return pi * (1.0 - gamma) / (gamma * (1.0 - 2.0 * pi) + pi);
}

Probability q_min(const PrivacySpec& spec) { return Probability(q_bound(spec.pi0(), spec.gamma())); }

}  // namespace crosswise
