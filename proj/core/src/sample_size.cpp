#include "crosswise/sample_size.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

#include "crosswise/detail/parallel.hpp"
#include "crosswise/evaluation.hpp"
#include "crosswise/model.hpp"
#include "crosswise/numkernel.hpp"
#include "crosswise/privacy.hpp"

namespace crosswise {
namespace {

double value_at(const DesignSpec& spec, Criterion criterion, std::int64_t n, double q, double pi) {
  const ModelConfig config(n, q);
  const ConfidenceLevel level(spec.delta);
  const CountRange counts = significant_counts(n, rho_at(config, pi));
  const IntervalTable table(config, level, Method::cp, counts);
  if (criterion == Criterion::expected_length) {
    return expected_covering_length(table, pi);
  }
  return assured_length_prob(table, pi, spec.d);
}

// Memoized criterion evaluations for one search.
class CriterionCache {
 public:
  CriterionCache(const DesignSpec& spec, Criterion criterion, double q)
      : spec_(spec), criterion_(criterion), q_(q) {}

  double value(std::int64_t n) {
    if (auto it = values_.find(n); it != values_.end()) return it->second;
    const double v = value_at(spec_, criterion_, n, q_, spec_.pi0);
    values_.emplace(n, v);
    return v;
  }

  bool met(std::int64_t n) { return criterion_met(spec_, criterion_, value(n)); }

  // Evaluates every n in [first, last] (possibly concurrently) and returns the
  // smallest one meeting the criterion.
  std::optional<std::int64_t> smallest_met(std::int64_t first, std::int64_t last) {
    std::vector<std::int64_t> todo;
    for (std::int64_t n = first; n <= last; ++n) {
      if (!values_.contains(n)) todo.push_back(n);
    }
    std::vector<double> results(todo.size());
    detail::parallel_for(
        todo.size(), [&](std::size_t i) { results[i] = value_at(spec_, criterion_, todo[i], q_, spec_.pi0); },
        1);
    for (std::size_t i = 0; i < todo.size(); ++i) values_.emplace(todo[i], results[i]);
    for (std::int64_t n = first; n <= last; ++n) {
      if (met(n)) return n;
    }
    return std::nullopt;
  }

  [[nodiscard]] std::int64_t evaluations() const noexcept { return static_cast<std::int64_t>(values_.size()); }

 private:
  const DesignSpec& spec_;
  Criterion criterion_;
  double q_;
  std::map<std::int64_t, double> values_;
};

}  // namespace

void DesignSpec::validate(Criterion criterion) const {
  const PrivacySpec privacy(pi0, gamma);  // throws on gamma <= pi0
  (void)privacy;
  if (std::isnan(delta) || !(delta > 0.0 && delta < 1.0)) {
    throw DomainError("confidence level must lie in (0,1)");
  }
  if (std::isnan(d) || !(d > 0.0)) {
    throw DomainError("target length d must be positive");
  }
  if (criterion == Criterion::assured_length) {
    if (!lambda.has_value()) {
      throw DomainError("the assured-length criterion needs lambda");
    }
    if (std::isnan(*lambda) || !(*lambda > 0.0 && *lambda < 1.0)) {
      throw DomainError("lambda must lie in (0,1)");
    }
  }
}

double criterion_value(const DesignSpec& spec, Criterion criterion, std::int64_t n) {
  spec.validate(criterion);
  const double q = q_min(PrivacySpec(spec.pi0, spec.gamma)).value();
  return value_at(spec, criterion, n, q, spec.pi0);
}

bool criterion_met(const DesignSpec& spec, Criterion criterion, double value) {
  if (criterion == Criterion::expected_length) {
    return value <= spec.d;
  }
  return value >= 1.0 - spec.lambda.value_or(0.0);
}

std::int64_t pilot_sample_size(const DesignSpec& spec) {
  const double q = q_min(PrivacySpec(spec.pi0, spec.gamma)).value();
  const double u = kernel::normal_quantile(Probability(0.5 * (1.0 + spec.delta)));
  const double slope = 2.0 * q - 1.0;
  const double var1 = spec.pi0 * (1.0 - spec.pi0) + q * (1.0 - q) / (slope * slope);
  return static_cast<std::int64_t>(std::ceil(4.0 * u * u * var1 / (spec.d * spec.d)));
}

SampleSizeResult min_sample_size(const DesignSpec& spec, Criterion criterion, const SearchOptions& options) {
  spec.validate(criterion);
  if (options.lower_bound < 1 || options.cap < options.lower_bound) {
    throw DomainError("search options need 1 <= lower_bound <= cap");
  }
  const double q = q_min(PrivacySpec(spec.pi0, spec.gamma)).value();
  CriterionCache cache(spec, criterion, q);

  SampleSizeResult out;
  out.criterion = criterion;
  out.q_used = q;
  out.pilot_n = pilot_sample_size(spec);

  const std::int64_t lb = options.lower_bound;
  const std::int64_t start = std::clamp<std::int64_t>(out.pilot_n / 4, lb, options.cap);

  // Exponential bracketing: failing < ... <= satisfying.
  std::int64_t fail = lb - 1;  // virtual failing point below the scan range
  std::int64_t ok;
  if (cache.met(start)) {
    ok = start;
  } else {
    fail = start;
    std::int64_t n = start;
    for (;;) {
      if (n >= options.cap) {
        throw SearchExhausted("no sample size up to " + std::to_string(options.cap) + " meets the criterion");
      }
      n = std::min(options.cap, 2 * n);
      if (cache.met(n)) {
        ok = n;
        break;
      }
      fail = n;
    }
  }
  const std::int64_t floor = fail;

  while (ok - fail > 1) {
    const std::int64_t mid = fail + (ok - fail) / 2;
    if (cache.met(mid)) {
      ok = mid;
    } else {
      fail = mid;
    }
  }

  // Confirmation: scan windows downward until one contains no satisfying n.
  std::int64_t n_star = ok;
  std::int64_t scanned_low = n_star;
  for (;;) {
    const std::int64_t width = std::max<std::int64_t>(64, n_star / 100);
    const std::int64_t first = std::max(floor + 1, scanned_low - width);
    const std::int64_t last = scanned_low - 1;
    if (first > last) break;
    const auto found = cache.smallest_met(first, last);
    scanned_low = first;
    if (!found) break;
    n_star = *found;
  }

  out.n_min = n_star;
  out.criterion_value_at_n = cache.value(n_star);
  if (n_star > lb) {
    out.criterion_value_at_n_minus_1 = cache.value(n_star - 1);
  }
  out.scan_window = {std::min(scanned_low, n_star), n_star};
  out.evaluations = cache.evaluations();
  return out;
}

SampleSizeResult min_n_expected(const DesignSpec& spec, const SearchOptions& options) {
  return min_sample_size(spec, Criterion::expected_length, options);
}

SampleSizeResult min_n_assured(const DesignSpec& spec, const SearchOptions& options) {
  return min_sample_size(spec, Criterion::assured_length, options);
}

std::vector<GridViolation> check_design_grid(const DesignSpec& spec, Criterion criterion, std::int64_t n,
                                             int pi_steps, int q_steps) {
  spec.validate(criterion);
  if (pi_steps < 1 || q_steps < 1) {
    throw DomainError("grid check needs at least one step per axis");
  }
  const double q_lo = q_min(PrivacySpec(spec.pi0, spec.gamma)).value();
  std::vector<GridViolation> violations;
  for (int i = 1; i <= pi_steps; ++i) {
    const double pi = spec.pi0 * i / pi_steps;
    for (int j = 0; j < q_steps; ++j) {
      const double q = q_lo + (0.5 - q_lo) * j / q_steps;
      const double v = value_at(spec, criterion, n, q, pi);
      if (!criterion_met(spec, criterion, v)) {
        violations.push_back({pi, q, v});
      }
    }
  }
  return violations;
}

}  // namespace crosswise
