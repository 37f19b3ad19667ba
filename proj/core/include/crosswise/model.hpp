#pragma once

// Probability layer of the crosswise model. A respondent reports Z = 1 when
// the answers to the sensitive question (YES with probability pi) and to the
// neutral question (YES with known probability q) coincide, so that
//
//   rho = P{Z = 1} = (2q - 1) pi + (1 - q).
//
// With n respondents the count of Z = 1 reports is Bin(n, rho). The maximum
// likelihood estimate of pi is the affine inverse of rho-hat = z / n clipped to
// [0, 1]. All distributional quantities below are indexed by the count z; the
// estimate scale is derived from it.

#include <cstdint>
#include <vector>

#include "crosswise/types.hpp"

namespace crosswise {

/// One survey instrument: sample size n and neutral-question probability q.
///
/// Regular configurations require 0 < q < 0.5. `identity_flip` builds the
/// q = 0 configuration (rho = 1 - pi), which is only meaningful as a test
/// oracle against the textbook Clopper-Pearson interval.
class ModelConfig {
 public:
  ModelConfig(std::int64_t n, double q);

  static ModelConfig identity_flip(std::int64_t n);

  [[nodiscard]] std::int64_t n() const noexcept { return n_; }
  [[nodiscard]] double q() const noexcept { return q_; }

  /// Smallest count whose estimate clips to 0, i.e. ceil(n(1-q)).
  [[nodiscard]] std::int64_t zero_atom_first() const noexcept { return zero_atom_first_; }
  /// Largest count whose estimate clips to 1, i.e. floor(nq); -1 when q = 0.
  [[nodiscard]] std::int64_t one_atom_last() const noexcept { return one_atom_last_; }

  [[nodiscard]] bool is_interior(std::int64_t z) const noexcept {
    return z > one_atom_last_ && z < zero_atom_first_;
  }

  friend bool operator==(const ModelConfig&, const ModelConfig&) = default;

 private:
  ModelConfig(std::int64_t n, double q, bool allow_zero_q);

  std::int64_t n_;
  double q_;
  std::int64_t zero_atom_first_;
  std::int64_t one_atom_last_;
};

/// Number of respondents reporting Z = 1; validated against a configuration.
class ObservedCount {
 public:
  ObservedCount(const ModelConfig& config, std::int64_t z);

  [[nodiscard]] std::int64_t value() const noexcept { return z_; }

 private:
  std::int64_t z_;
};

Probability rho_from_pi(Probability pi, Probability q);

/// Affine inverse of rho_from_pi. The result may fall outside [0, 1].
double pi_from_rho(Probability rho, Probability q);

/// Reporting probability of a configuration at pi.
Probability rho_at(const ModelConfig& config, double pi);

/// Clipped maximum likelihood estimate of pi.
Probability mle(const ModelConfig& config, ObservedCount z);

/// Exact law of the clipped estimator: atoms in increasing order.
struct EstimatorDistribution {
  std::vector<double> support;
  std::vector<double> mass;
};

EstimatorDistribution estimator_distribution(const ModelConfig& config, Probability pi);

/// P_pi{estimate <= x} for x in [0, 1].
Probability estimator_cdf(const ModelConfig& config, Probability pi, double x);

/// P_pi{estimate < x} for x in [0, 1].
Probability estimator_cdf_strict(const ModelConfig& config, Probability pi, double x);

}  // namespace crosswise
