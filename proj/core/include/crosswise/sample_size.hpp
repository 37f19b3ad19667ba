#pragma once

// Smallest sample size meeting a length requirement on the exact interval at
// the binding design point pi = pi0, q = q_min(pi0, gamma).
//
//   expected:  expected_covering_length(n) <= d
//   assured:   assured_length_prob(n, d)   >= 1 - lambda
//
// Neither criterion is monotone in n (the count is discrete), so the search is
// bracket -> bisect -> confirm: a downward linear scan below the bisection
// result keeps extending while it still finds satisfying sizes.

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "crosswise/types.hpp"

namespace crosswise {

enum class Criterion { expected_length, assured_length };

struct DesignSpec {
  double pi0 = 0.0;
  double gamma = 0.0;
  double delta = 0.95;
  double d = 0.0;
  std::optional<double> lambda;

  /// Throws InfeasibleDesign when gamma <= pi0 and DomainError for other
  /// out-of-range fields. `lambda` is required for the assured criterion.
  void validate(Criterion criterion) const;
};

struct SearchOptions {
  std::int64_t lower_bound = 2;
  std::int64_t cap = 1'000'000;
};

struct SampleSizeResult {
  Criterion criterion = Criterion::expected_length;
  std::int64_t n_min = 0;
  double criterion_value_at_n = 0.0;
  // Absent when n_min is the scan lower bound.
  std::optional<double> criterion_value_at_n_minus_1;
  double q_used = 0.0;
  std::int64_t pilot_n = 0;
  /// Counts examined by the final confirmation scan: [first, second].
  std::pair<std::int64_t, std::int64_t> scan_window{0, 0};
  std::int64_t evaluations = 0;
};

/// Criterion value at (n, q_min) for the design: expected covering length or
/// assured-length probability.
double criterion_value(const DesignSpec& spec, Criterion criterion, std::int64_t n);

/// Whether the criterion value meets the design target.
bool criterion_met(const DesignSpec& spec, Criterion criterion, double value);

/// Asymptotic starting scale ceil((2u)^2 (pi0(1-pi0) + q(1-q)/(2q-1)^2) / d^2).
std::int64_t pilot_sample_size(const DesignSpec& spec);

SampleSizeResult min_sample_size(const DesignSpec& spec, Criterion criterion, const SearchOptions& options = {});
SampleSizeResult min_n_expected(const DesignSpec& spec, const SearchOptions& options = {});
SampleSizeResult min_n_assured(const DesignSpec& spec, const SearchOptions& options = {});

/// A design-region grid point where the requirement fails at a given n.
struct GridViolation {
  double pi = 0.0;
  double q = 0.0;
  double value = 0.0;
};

/// Re-checks the criterion at n over a pi_steps x q_steps grid covering
/// (0, pi0] x [q_min, 0.5) and returns every failing point.
std::vector<GridViolation> check_design_grid(const DesignSpec& spec, Criterion criterion, std::int64_t n,
                                             int pi_steps = 5, int q_steps = 5);

}  // namespace crosswise
