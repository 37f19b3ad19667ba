#include "crosswise/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "crosswise/ci_asymptotic.hpp"
#include "crosswise/detail/parallel.hpp"
#include "crosswise/numkernel.hpp"

namespace crosswise {
namespace {

struct Sums {
  double coverage = 0.0;
  double covering_length = 0.0;
  double covering_short = 0.0;
  double short_mass = 0.0;
};

Sums accumulate(const IntervalTable& table, double pi, std::optional<double> d) {
  if (!(pi > 0.0 && pi < 1.0)) {
    throw DomainError("evaluation point pi must lie in (0,1), got " + std::to_string(pi));
  }
  const ModelConfig& config = table.config();
  const Probability rho = rho_at(config, pi);
  const CountRange mass = significant_counts(config.n(), rho);
  const CountRange avail = table.range();
  const std::int64_t first = std::max(mass.first, avail.first);
  const std::int64_t last = std::min(mass.last, avail.last);

  Sums s;
  for (std::int64_t z = first; z <= last; ++z) {
    const IntervalEstimate& ci = table.at(z);
    const double p = kernel::binom_pmf(config.n(), z, rho);
    const bool short_enough = d.has_value() && ci.length() <= *d;
    if (short_enough) s.short_mass += p;
    if (ci.covers(pi)) {
      s.coverage += p;
      s.covering_length += p * ci.length();
      if (short_enough) s.covering_short += p;
    }
  }
  // masses and lengths are at most one; drop summation round-off above that
  s.coverage = std::min(s.coverage, 1.0);
  s.covering_length = std::min(s.covering_length, s.coverage);
  s.covering_short = std::min(s.covering_short, s.coverage);
  s.short_mass = std::min(s.short_mass, 1.0);
  return s;
}

}  // namespace

CountRange significant_counts(std::int64_t n, Probability rho, double cutoff) {
  if (n < 1) {
    throw DomainError("significant_counts needs n >= 1");
  }
  if (rho.value() == 0.0) return {0, 0};
  if (rho.value() == 1.0) return {n, n};
  const auto mode = std::clamp<std::int64_t>(
      static_cast<std::int64_t>(std::floor(static_cast<double>(n + 1) * rho.value())), 0, n);
  CountRange r{mode, mode};
  while (r.first > 0 && kernel::binom_pmf(n, r.first - 1, rho) >= cutoff) --r.first;
  while (r.last < n && kernel::binom_pmf(n, r.last + 1, rho) >= cutoff) ++r.last;
  return r;
}

IntervalTable::IntervalTable(const ModelConfig& config, ConfidenceLevel level, Method method)
    : IntervalTable(config, level, method, CountRange{0, config.n()}) {}

IntervalTable::IntervalTable(const ModelConfig& config, ConfidenceLevel level, Method method, CountRange range)
    : config_(config), level_(level), method_(method), range_(range) {
  if (range.first < 0 || range.last > config.n() || range.first > range.last) {
    throw DomainError("interval table range outside [0, n]");
  }
  intervals_.resize(static_cast<std::size_t>(range.size()));
  detail::parallel_for(intervals_.size(), [&](std::size_t i) {
    const auto z = range_.first + static_cast<std::int64_t>(i);
    intervals_[i] = interval(method_, config_, ObservedCount(config_, z), level_);
  });
}

IntervalTable::IntervalTable(const ModelConfig& config, ConfidenceLevel level, Method method, CountRange range,
                             std::vector<IntervalEstimate> intervals)
    : config_(config), level_(level), method_(method), range_(range), intervals_(std::move(intervals)) {}

IntervalTable IntervalTable::from_intervals(const ModelConfig& config, ConfidenceLevel level, Method method,
                                            std::int64_t first, std::vector<IntervalEstimate> intervals) {
  if (intervals.empty()) {
    throw DomainError("interval table needs at least one interval");
  }
  const CountRange range{first, first + static_cast<std::int64_t>(intervals.size()) - 1};
  if (range.first < 0 || range.last > config.n()) {
    throw DomainError("interval table range outside [0, n]");
  }
  return IntervalTable(config, level, method, range, std::move(intervals));
}

const IntervalEstimate& IntervalTable::at(std::int64_t z) const {
  if (!range_.contains(z)) {
    throw DomainError("count " + std::to_string(z) + " not in interval table");
  }
  return intervals_[static_cast<std::size_t>(z - range_.first)];
}

EvaluationPoint evaluate(const IntervalTable& table, double pi, std::optional<double> d) {
  const Sums s = accumulate(table, pi, d);
  EvaluationPoint out;
  out.pi = pi;
  out.coverage = s.coverage;
  out.expected_covering_length = s.covering_length;
  if (d.has_value()) {
    out.assured_length_prob = s.covering_short / table.level().value();
    out.covering_short_mass = s.covering_short;
    out.length_prob = s.short_mass;
  }
  return out;
}

double coverage(const IntervalTable& table, double pi) { return accumulate(table, pi, std::nullopt).coverage; }

double expected_covering_length(const IntervalTable& table, double pi) {
  return accumulate(table, pi, std::nullopt).covering_length;
}

double assured_length_prob(const IntervalTable& table, double pi, double d) {
  return accumulate(table, pi, d).covering_short / table.level().value();
}

double length_prob(const IntervalTable& table, double pi, double d) { return accumulate(table, pi, d).short_mass; }

double coverage(const ModelConfig& config, ConfidenceLevel level, Method method, Probability pi) {
  return coverage(IntervalTable(config, level, method), pi.value());
}

double expected_covering_length(const ModelConfig& config, ConfidenceLevel level, Probability pi) {
  return expected_covering_length(IntervalTable(config, level, Method::cp), pi.value());
}

double assured_length_prob(const ModelConfig& config, ConfidenceLevel level, Probability pi, double d) {
  return assured_length_prob(IntervalTable(config, level, Method::cp), pi.value(), d);
}

double length_prob(const ModelConfig& config, ConfidenceLevel level, Probability pi, double d) {
  return length_prob(IntervalTable(config, level, Method::cp), pi.value(), d);
}

std::vector<double> GridSpec::points() const {
  if (!std::isfinite(start) || !std::isfinite(stop) || !std::isfinite(step)) {
    throw DomainError("grid bounds must be finite");
  }
  if (!(step > 0.0)) {
    throw DomainError("grid step must be positive");
  }
  if (start > stop) {
    throw DomainError("empty grid: start exceeds stop");
  }
  const auto count = static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9)) + 1;
  std::vector<double> pts(count);
  for (std::size_t i = 0; i < count; ++i) {
    pts[i] = start + static_cast<double>(i) * step;
    if (!(pts[i] > 0.0 && pts[i] < 1.0)) {
      throw DomainError("grid point outside (0,1): " + std::to_string(pts[i]));
    }
  }
  return pts;
}

CoverageCurve curve(const IntervalTable& table, const GridSpec& grid, std::optional<double> d) {
  const std::vector<double> pts = grid.points();
  CoverageCurve out;
  out.method = table.method();
  out.grid.resize(pts.size());
  detail::parallel_for(
      pts.size(), [&](std::size_t i) { out.grid[i] = evaluate(table, pts[i], d); }, 1);
  return out;
}

CoverageCurve curve(const ModelConfig& config, ConfidenceLevel level, Method method, const GridSpec& grid,
                    std::optional<double> d) {
  (void)grid.points();  // validate before the table is built
  return curve(IntervalTable(config, level, method), grid, d);
}

}  // namespace crosswise
