#pragma once

// Special-function kernel: binomial probabilities, the regularized incomplete
// Beta function and its inverse, and the standard normal quantile.
//
// Every function here is pure. Accuracy targets:
//   binom_pmf          ~1e-14 relative (saddle-point form, stable for n ~ 1e5)
//   reg_inc_beta       1e-12 absolute
//   inv_reg_inc_beta   |I_x(a,b) - p| <= 1e-12
//   normal_quantile    1e-9 absolute (AS241 is good to ~1e-16)

#include <cstdint>

#include "crosswise/types.hpp"

namespace crosswise::kernel {

/// Shape parameters of a Beta distribution; both strictly positive.
class BetaParams {
 public:
  BetaParams(double a, double b) : a_(a), b_(b) {
    if (!(a > 0.0) || !(b > 0.0) || std::isinf(a) || std::isinf(b)) {
      throw DomainError("Beta parameters must be positive and finite");
    }
  }

  [[nodiscard]] double a() const noexcept { return a_; }
  [[nodiscard]] double b() const noexcept { return b_; }

 private:
  double a_;
  double b_;
};

inline constexpr int kContinuedFractionCap = 200;
inline constexpr int kQuantileIterationCap = 200;
inline constexpr double kQuantileTolerance = 1e-12;

/// log Gamma(x) for x > 0 (Lanczos, g = 607/128, 15 terms).
double log_gamma(double x);

/// log B(a, b), evaluated with Stirling corrections when an argument is large.
double log_beta(double a, double b);

/// C(n,z) p^z (1-p)^(n-z). 0^0 is taken as 1.
double binom_pmf(std::int64_t n, std::int64_t z, Probability p);

/// P{X <= z} for X ~ Bin(n, p), by summation of the probability mass function.
Probability binom_cdf(std::int64_t n, std::int64_t z, Probability p);

/// Density of the Beta(a, b) distribution at x.
double beta_pdf(const BetaParams& params, double x);

/// I_x(a, b), the Beta(a, b) distribution function at x.
Probability reg_inc_beta(const BetaParams& params, Probability x);

/// x with I_x(a, b) = p. Throws NumericError if the root finder stalls.
Probability inv_reg_inc_beta(const BetaParams& params, Probability p);

/// Standard normal quantile. Throws DomainError for p in {0, 1}.
double normal_quantile(Probability p);

}  // namespace crosswise::kernel
