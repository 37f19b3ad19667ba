#include "crosswise/ci_asymptotic.hpp"

#include <cmath>

#include "crosswise/numkernel.hpp"

namespace crosswise {
namespace {

double two_sided_quantile(ConfidenceLevel level) {
  return kernel::normal_quantile(Probability(0.5 * (1.0 + level.value())));
}

}  // namespace

double unbiased_point(const ModelConfig& config, ObservedCount z) {
  const double rho_hat = static_cast<double>(z.value()) / static_cast<double>(config.n());
  return (rho_hat - (1.0 - config.q())) / (2.0 * config.q() - 1.0);
}

UnbiasedEstimate unbiased_estimate(const ModelConfig& config, ObservedCount z) {
  if (config.n() < 2) {
    throw DomainError("the unbiased variance estimator needs n >= 2");
  }
  const double n = static_cast<double>(config.n());
  const double rho_hat = static_cast<double>(z.value()) / n;
  const double slope = 2.0 * config.q() - 1.0;
  UnbiasedEstimate out;
  out.pi_c = unbiased_point(config, z);
  out.variance_unbiased = rho_hat * (1.0 - rho_hat) / ((n - 1.0) * slope * slope);
  return out;
}

IntervalEstimate wp_interval(const ModelConfig& config, ObservedCount z, ConfidenceLevel level) {
  const double n = static_cast<double>(config.n());
  const double q = config.q();
  const double pi_c = unbiased_point(config, z);
  const double u = two_sided_quantile(level);
  const double u2 = u * u;
  const double one_minus_2q = 1.0 - 2.0 * q;

  const double centre = (2.0 * n * pi_c + u2) / (2.0 * (n + u2));
  const double disc =
      4.0 * n * pi_c * (1.0 - pi_c) + (4.0 * n * (1.0 - q) * q + u2) / (one_minus_2q * one_minus_2q);
  if (disc < 0.0) {
    IntervalEstimate out = make_reported_interval(Method::wp, centre, centre);
    out.collapsed = true;
    return out;
  }
  const double half = u * std::sqrt(disc) / (2.0 * (n + u2));
  return make_reported_interval(Method::wp, centre - half, centre + half);
}

IntervalEstimate ap_interval(const ModelConfig& config, ObservedCount z, ConfidenceLevel level) {
  const UnbiasedEstimate est = unbiased_estimate(config, z);
  const double half = two_sided_quantile(level) * std::sqrt(est.variance_unbiased);
  return make_reported_interval(Method::ap, est.pi_c - half, est.pi_c + half);
}

IntervalEstimate interval(Method method, const ModelConfig& config, ObservedCount z, ConfidenceLevel level) {
  switch (method) {
    case Method::cp:
      return cp_interval(config, z, level);
    case Method::wp:
      return wp_interval(config, z, level);
    case Method::ap:
      return ap_interval(config, z, level);
  }
  return cp_interval(config, z, level);
}

}  // namespace crosswise
