#include "crosswise/model.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "crosswise/numkernel.hpp"

namespace crosswise {
namespace {

// n(1-q) and nq are compared against integer counts; a relative slack keeps
// exact integers (e.g. 100 * 0.7) from being pushed across by rounding.
constexpr double kIndexSlack = 1e-9;

std::int64_t ceil_index(double v) {
  return static_cast<std::int64_t>(std::ceil(v - kIndexSlack * std::max(1.0, std::abs(v))));
}

std::int64_t floor_index(double v) {
  return static_cast<std::int64_t>(std::floor(v + kIndexSlack * std::max(1.0, std::abs(v))));
}

// P{Z >= c} for Z ~ Bin(n, rho).
double upper_tail(std::int64_t n, std::int64_t c, double rho) {
  if (c <= 0) return 1.0;
  if (c > n) return 0.0;
  return kernel::reg_inc_beta(kernel::BetaParams(static_cast<double>(c), static_cast<double>(n - c + 1)),
                              Probability(rho))
      .value();
}

// Count whose unclipped estimate equals x.
double count_scale(const ModelConfig& config, double x) {
  const double n = static_cast<double>(config.n());
  return n * (x * (2.0 * config.q() - 1.0) + (1.0 - config.q()));
}

}  // namespace

ModelConfig::ModelConfig(std::int64_t n, double q) : ModelConfig(n, q, false) {}

ModelConfig ModelConfig::identity_flip(std::int64_t n) { return ModelConfig(n, 0.0, true); }

ModelConfig::ModelConfig(std::int64_t n, double q, bool allow_zero_q) : n_(n), q_(q) {
  if (n < 1) {
    throw DomainError("sample size must be at least 1, got " + std::to_string(n));
  }
  const bool q_ok = allow_zero_q ? (q == 0.0) : (q > 0.0 && q < 0.5);
  if (!q_ok) {
    throw DomainError("neutral probability q must lie in (0, 0.5), got " + std::to_string(q));
  }
  const double nd = static_cast<double>(n);
  zero_atom_first_ = ceil_index(nd * (1.0 - q));
  one_atom_last_ = floor_index(nd * q);
}

ObservedCount::ObservedCount(const ModelConfig& config, std::int64_t z) : z_(z) {
  if (z < 0 || z > config.n()) {
    throw DomainError("observed count " + std::to_string(z) + " outside [0, " + std::to_string(config.n()) + "]");
  }
}

Probability rho_from_pi(Probability pi, Probability q) {
  const double rho = (2.0 * q.value() - 1.0) * pi.value() + (1.0 - q.value());
  return Probability(std::clamp(rho, 0.0, 1.0));
}

double pi_from_rho(Probability rho, Probability q) {
  if (q.value() == 0.5) {
    throw DomainError("pi is not identifiable at q = 0.5");
  }
  return (rho.value() - (1.0 - q.value())) / (2.0 * q.value() - 1.0);
}

Probability rho_at(const ModelConfig& config, double pi) {
  return rho_from_pi(Probability(pi), Probability(config.q()));
}

Probability mle(const ModelConfig& config, ObservedCount z) {
  const std::int64_t count = z.value();
  if (count >= config.zero_atom_first()) return Probability(0.0);
  if (count <= config.one_atom_last()) return Probability(1.0);
  const double rho_hat = static_cast<double>(count) / static_cast<double>(config.n());
  const double raw = (rho_hat - (1.0 - config.q())) / (2.0 * config.q() - 1.0);
  return Probability(std::clamp(raw, 0.0, 1.0));
}

EstimatorDistribution estimator_distribution(const ModelConfig& config, Probability pi) {
  const std::int64_t n = config.n();
  const double rho = rho_at(config, pi.value()).value();
  const std::int64_t zero_first = config.zero_atom_first();
  const std::int64_t one_last = config.one_atom_last();

  EstimatorDistribution dist;
  const auto interior = static_cast<std::size_t>(std::max<std::int64_t>(0, zero_first - one_last - 1));
  dist.support.reserve(interior + 2);
  dist.mass.reserve(interior + 2);

  dist.support.push_back(0.0);
  dist.mass.push_back(upper_tail(n, zero_first, rho));

  // Estimates increase as the count decreases.
  for (std::int64_t z = zero_first - 1; z > one_last; --z) {
    dist.support.push_back(mle(config, ObservedCount(config, z)).value());
    dist.mass.push_back(kernel::binom_pmf(n, z, Probability(rho)));
  }

  dist.support.push_back(1.0);
  dist.mass.push_back(1.0 - upper_tail(n, one_last + 1, rho));
  return dist;
}

Probability estimator_cdf(const ModelConfig& config, Probability pi, double x) {
  if (std::isnan(x) || x < 0.0 || x > 1.0) {
    throw DomainError("estimator_cdf requires x in [0,1]");
  }
  if (x == 1.0) return Probability(1.0);
  const double rho = rho_at(config, pi.value()).value();
  // estimate <= x  <=>  count >= ceil(u)
  const std::int64_t c = ceil_index(count_scale(config, x));
  return Probability(std::clamp(upper_tail(config.n(), c, rho), 0.0, 1.0));
}

Probability estimator_cdf_strict(const ModelConfig& config, Probability pi, double x) {
  if (std::isnan(x) || x < 0.0 || x > 1.0) {
    throw DomainError("estimator_cdf_strict requires x in [0,1]");
  }
  if (x == 0.0) return Probability(0.0);
  const double rho = rho_at(config, pi.value()).value();
  // estimate < x  <=>  count >= floor(u) + 1
  const std::int64_t c = floor_index(count_scale(config, x)) + 1;
  return Probability(std::clamp(upper_tail(config.n(), c, rho), 0.0, 1.0));
}

}  // namespace crosswise
