#pragma once

// Exact operating characteristics of an interval method at fixed (n, q, delta).
//
// For a given pi, with p_z = P_pi{Z = z} and C(pi) = {z : lower(z) < pi < upper(z)}:
//
//   coverage                  = sum_{z in C} p_z
//   expected_covering_length  = sum_{z in C} p_z (upper(z) - lower(z))
//   assured_length_prob       = (1/delta) sum_{z in C} p_z 1(length(z) <= d)
//   length_prob               = sum_{z}       p_z 1(length(z) <= d)
//
// Sums run over the counts whose binomial mass exceeds kNegligibleMass; the
// discarded tail is below 1e-17 in total.

#include <cstdint>
#include <optional>
#include <vector>

#include "crosswise/ci_exact.hpp"
#include "crosswise/model.hpp"
#include "crosswise/types.hpp"

namespace crosswise {

inline constexpr double kNegligibleMass = 1e-20;

/// Inclusive range of counts.
struct CountRange {
  std::int64_t first = 0;
  std::int64_t last = 0;

  [[nodiscard]] std::int64_t size() const noexcept { return last - first + 1; }
  [[nodiscard]] bool contains(std::int64_t z) const noexcept { return z >= first && z <= last; }
};

/// Counts z with P{Bin(n, rho) = z} >= cutoff (always non-empty).
CountRange significant_counts(std::int64_t n, Probability rho, double cutoff = kNegligibleMass);

/// Intervals for a contiguous block of counts, computed once and reused.
class IntervalTable {
 public:
  IntervalTable(const ModelConfig& config, ConfidenceLevel level, Method method);
  IntervalTable(const ModelConfig& config, ConfidenceLevel level, Method method, CountRange range);

  /// Wraps caller-supplied intervals for counts first, first+1, ...
  static IntervalTable from_intervals(const ModelConfig& config, ConfidenceLevel level, Method method,
                                      std::int64_t first, std::vector<IntervalEstimate> intervals);

  [[nodiscard]] const ModelConfig& config() const noexcept { return config_; }
  [[nodiscard]] ConfidenceLevel level() const noexcept { return level_; }
  [[nodiscard]] Method method() const noexcept { return method_; }
  [[nodiscard]] CountRange range() const noexcept { return range_; }
  [[nodiscard]] const IntervalEstimate& at(std::int64_t z) const;

 private:
  IntervalTable(const ModelConfig& config, ConfidenceLevel level, Method method, CountRange range,
                std::vector<IntervalEstimate> intervals);

  ModelConfig config_;
  ConfidenceLevel level_;
  Method method_;
  CountRange range_;
  std::vector<IntervalEstimate> intervals_;
};

struct EvaluationPoint {
  double pi = 0.0;
  double coverage = 0.0;
  double expected_covering_length = 0.0;
  // Present only when a length bound d was supplied.
  std::optional<double> assured_length_prob;
  std::optional<double> covering_short_mass;  // delta * assured_length_prob, unnormalized
  std::optional<double> length_prob;
};

/// All characteristics at one pi in (0, 1). Counts outside the table range
/// are treated as carrying no mass.
EvaluationPoint evaluate(const IntervalTable& table, double pi, std::optional<double> d = std::nullopt);

double coverage(const IntervalTable& table, double pi);
double expected_covering_length(const IntervalTable& table, double pi);
double assured_length_prob(const IntervalTable& table, double pi, double d);
double length_prob(const IntervalTable& table, double pi, double d);

double coverage(const ModelConfig& config, ConfidenceLevel level, Method method, Probability pi);
// The remaining scalar forms use the exact (cp) interval.
double expected_covering_length(const ModelConfig& config, ConfidenceLevel level, Probability pi);
double assured_length_prob(const ModelConfig& config, ConfidenceLevel level, Probability pi, double d);
double length_prob(const ModelConfig& config, ConfidenceLevel level, Probability pi, double d);

/// start, start + step, ... up to stop (inclusive, with rounding slack).
struct GridSpec {
  double start = 0.0;
  double stop = 0.0;
  double step = 0.0;

  /// Throws DomainError for an empty or malformed grid or points outside (0,1).
  [[nodiscard]] std::vector<double> points() const;
};

struct CoverageCurve {
  Method method = Method::cp;
  std::vector<EvaluationPoint> grid;
};

CoverageCurve curve(const ModelConfig& config, ConfidenceLevel level, Method method, const GridSpec& grid,
                    std::optional<double> d = std::nullopt);

/// Same as above against a prebuilt table; lets tests substitute intervals.
CoverageCurve curve(const IntervalTable& table, const GridSpec& grid, std::optional<double> d = std::nullopt);

}  // namespace crosswise
