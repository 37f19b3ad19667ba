#pragma once

#include <cmath>
#include <compare>
#include <string>

#include "crosswise/errors.hpp"

namespace crosswise {

/// A real number in [0, 1]. Construction rejects NaN and out-of-range values.
class Probability {
 public:
  explicit Probability(double value) : value_(value) {
    if (std::isnan(value) || value < 0.0 || value > 1.0) {
      throw DomainError("probability out of [0,1]: " + std::to_string(value));
    }
  }

  [[nodiscard]] double value() const noexcept { return value_; }
  [[nodiscard]] double complement() const noexcept { return 1.0 - value_; }

  friend auto operator<=>(const Probability&, const Probability&) = default;

 private:
  double value_;
};

/// Confidence level delta, strictly inside (0, 1).
class ConfidenceLevel {
 public:
  explicit ConfidenceLevel(double delta) : delta_(delta) {
    if (std::isnan(delta) || delta <= 0.0 || delta >= 1.0) {
      throw DomainError("confidence level must lie in (0,1): " + std::to_string(delta));
    }
  }

  [[nodiscard]] double value() const noexcept { return delta_; }
  /// Probability mass left in each tail of an equitailed interval.
  [[nodiscard]] double tail() const noexcept { return 0.5 * (1.0 - delta_); }

  friend auto operator<=>(const ConfidenceLevel&, const ConfidenceLevel&) = default;

 private:
  double delta_;
};

}  // namespace crosswise
