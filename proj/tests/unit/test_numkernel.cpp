#include <gtest/gtest.h>

#include <cmath>
#include <thread>
#include <vector>

#include "crosswise/numkernel.hpp"
#include "gen.hpp"
#include "oracles.hpp"

using namespace crosswise;
using namespace crosswise::kernel;

namespace {

Probability P(double p) { return Probability(p); }

// Residual slack for a quantile that is only known to the nearest double.
double quantile_slack(const BetaParams& bp, double x) {
  return 2e-12 + 2.0 * beta_pdf(bp, x) * (std::nextafter(x, 1.0) - x);
}

}  // namespace

TEST(BinomPmf, SingleBernoulli) { EXPECT_DOUBLE_EQ(binom_pmf(1, 1, P(0.5)), 0.5); }

TEST(BinomPmf, DegenerateProbability) {
  EXPECT_EQ(binom_pmf(10, 0, P(0.0)), 1.0);
  EXPECT_EQ(binom_pmf(10, 3, P(0.0)), 0.0);
  EXPECT_EQ(binom_pmf(10, 10, P(1.0)), 1.0);
  EXPECT_EQ(binom_pmf(10, 9, P(1.0)), 0.0);
}

TEST(BinomPmf, MatchesProductForm) {
  const double expect = static_cast<double>(oracle::product_pmf(20, 7, 0.3L));
  EXPECT_NEAR(binom_pmf(20, 7, P(0.3)) / expect, 1.0, 1e-12);
  // high-precision reference value
  EXPECT_NEAR(binom_pmf(20, 7, P(0.3)), 0.1642619852172364968, 1e-14);
}

TEST(BinomPmf, LargeSample) {
  EXPECT_NEAR(binom_pmf(40000, 20800, P(0.52)) / 0.0039925931701115385425, 1.0, 1e-12);
}

TEST(BinomPmf, RelativeAgreementAcrossSizes) {
  proptest::Gen g(11);
  for (int i = 0; i < 300; ++i) {
    const std::int64_t n = g.sample_size(1, 600);
    const double p = g.probability();
    const std::int64_t z = g.integer(0, n);
    const long double ref = oracle::product_pmf(n, z, p);
    if (ref < 1e-280L) continue;
    EXPECT_NEAR(binom_pmf(n, z, P(p)) / static_cast<double>(ref), 1.0, 1e-11) << n << " " << z << " " << p;
  }
}

TEST(BinomPmf, RejectsCountOutsideSupport) {
  EXPECT_THROW(binom_pmf(5, 6, P(0.5)), DomainError);
  EXPECT_THROW(binom_pmf(5, -1, P(0.5)), DomainError);
  EXPECT_THROW(binom_pmf(0, 0, P(0.5)), DomainError);
}

TEST(BinomCdf, FullSupport) { EXPECT_DOUBLE_EQ(binom_cdf(5, 5, P(0.7)).value(), 1.0); }

TEST(BinomCdf, SymmetricHalf) { EXPECT_NEAR(binom_cdf(5, 2, P(0.5)).value(), 0.5, 1e-15); }

TEST(BinomCdf, TermByTermSummation) {
  EXPECT_NEAR(binom_cdf(100, 37, P(0.4)).value(), static_cast<double>(oracle::summed_cdf(100, 37, 0.4L)), 1e-14);
  EXPECT_NEAR(binom_cdf(100, 37, P(0.4)).value(), 0.30680976227098493665, 1e-14);
}

TEST(RegIncBeta, UniformIsIdentity) { EXPECT_NEAR(reg_inc_beta(BetaParams(1, 1), P(0.37)).value(), 0.37, 1e-15); }

TEST(RegIncBeta, Endpoints) {
  EXPECT_EQ(reg_inc_beta(BetaParams(2.5, 7), P(0.0)).value(), 0.0);
  EXPECT_EQ(reg_inc_beta(BetaParams(2.5, 7), P(1.0)).value(), 1.0);
}

TEST(RegIncBeta, Reflection) {
  for (double x = 0.01; x < 1.0; x += 0.07) {
    const double s = reg_inc_beta(BetaParams(2, 3), P(x)).value() + reg_inc_beta(BetaParams(3, 2), P(1 - x)).value();
    EXPECT_NEAR(s, 1.0, 1e-14) << x;
  }
}

TEST(RegIncBeta, BinomialIdentityExample) {
  const double via_beta = reg_inc_beta(BetaParams(3, 8), P(0.25)).value();
  EXPECT_NEAR(via_beta, static_cast<double>(oracle::summed_cdf(10, 7, 0.75L)), 1e-14);
  EXPECT_NEAR(via_beta, 0.474407196044921875, 1e-14);
}

TEST(RegIncBeta, IntegerParametersMatchBinomialSums) {
  proptest::Gen g(21);
  for (int i = 0; i < 400; ++i) {
    const std::int64_t a = g.integer(1, 80);
    const std::int64_t b = g.integer(1, 80);
    const double x = g.uniform(0.0, 1.0);
    EXPECT_NEAR(reg_inc_beta(BetaParams(static_cast<double>(a), static_cast<double>(b)), P(x)).value(),
                static_cast<double>(oracle::integer_beta_cdf(a, b, x)), 1e-12)
        << a << " " << b << " " << x;
  }
}

TEST(RegIncBeta, LargeParametersNearCentre) {
  EXPECT_NEAR(reg_inc_beta(BetaParams(20000, 20001), P(0.501)).value(), 0.65726230714378297109, 1e-11);
}

TEST(RegIncBeta, SmallShape) {
  EXPECT_NEAR(reg_inc_beta(BetaParams(0.5, 50), P(0.01)).value(), 0.68269560212580241059, 1e-12);
}

TEST(RegIncBeta, NondecreasingInX) {
  proptest::Gen g(31);
  for (int i = 0; i < 50; ++i) {
    const BetaParams bp(g.uniform(0.5, 60), g.uniform(0.5, 60));
    double prev = 0.0;
    for (int k = 0; k <= 200; ++k) {
      const double v = reg_inc_beta(bp, P(k / 200.0)).value();
      EXPECT_GE(v, prev - 1e-15);
      prev = v;
    }
  }
}

// Beta-Binomial identity: P{Bin(n,p) <= z} = I_{1-p}(n-z, z+1).
TEST(Identity, BinomialCdfEqualsBetaTail) {
  for (std::int64_t n = 1; n <= 50; ++n) {
    for (std::int64_t z = 0; z < n; ++z) {
      for (int k = 1; k <= 99; ++k) {
        const double p = k / 100.0;
        const double lhs = binom_cdf(n, z, P(p)).value();
        const double rhs =
            reg_inc_beta(BetaParams(static_cast<double>(n - z), static_cast<double>(z + 1)), P(1.0 - p)).value();
        ASSERT_NEAR(lhs, rhs, 1e-10) << "n=" << n << " z=" << z << " p=" << p;
      }
    }
  }
}

TEST(InvRegIncBeta, UniformQuantile) {
  EXPECT_NEAR(inv_reg_inc_beta(BetaParams(1, 1), P(0.8)).value(), 0.8, 1e-12);
}

TEST(InvRegIncBeta, SymmetricMedian) {
  EXPECT_NEAR(inv_reg_inc_beta(BetaParams(2, 2), P(0.5)).value(), 0.5, 1e-12);
}

TEST(InvRegIncBeta, ForwardCheck) {
  const BetaParams bp(5, 9);
  const double x = inv_reg_inc_beta(bp, P(0.975)).value();
  EXPECT_NEAR(reg_inc_beta(bp, P(x)).value(), 0.975, 1e-12);
  EXPECT_NEAR(static_cast<double>(oracle::integer_beta_cdf(5, 9, x)), 0.975, 1e-12);
  EXPECT_NEAR(x, 0.61426166175070532553, 1e-10);
}

TEST(InvRegIncBeta, TrivialProbabilities) {
  EXPECT_EQ(inv_reg_inc_beta(BetaParams(3, 4), P(0.0)).value(), 0.0);
  EXPECT_EQ(inv_reg_inc_beta(BetaParams(3, 4), P(1.0)).value(), 1.0);
}

TEST(InvRegIncBeta, RoundTripGrid) {
  const std::vector<double> shapes{0.5, 1, 2, 3.5, 7, 12, 20, 33, 50};
  const std::vector<double> probs{1e-6, 1e-4, 0.001, 0.025, 0.1, 0.3, 0.5, 0.7, 0.9, 0.975, 0.999, 1 - 1e-4, 1 - 1e-6};
  for (double a : shapes) {
    for (double b : shapes) {
      for (double p : probs) {
        const BetaParams bp(a, b);
        const double x = inv_reg_inc_beta(bp, P(p)).value();
        ASSERT_NEAR(reg_inc_beta(bp, P(x)).value(), p, quantile_slack(bp, x)) << a << " " << b << " " << p;
      }
    }
  }
}

TEST(InvRegIncBeta, RoundTripRandom) {
  proptest::Gen g(41);
  for (int i = 0; i < 2000; ++i) {
    const BetaParams bp(g.uniform(0.5, 50), g.uniform(0.5, 50));
    const double p = g.uniform(1e-6, 1 - 1e-6);
    const double x = inv_reg_inc_beta(bp, P(p)).value();
    ASSERT_NEAR(reg_inc_beta(bp, P(x)).value(), p, quantile_slack(bp, x)) << bp.a() << " " << bp.b() << " " << p;
  }
}

TEST(InvRegIncBeta, LargeParameters) {
  for (double p : {0.025, 0.975}) {
    const BetaParams bp(15000, 25001);
    const double x = inv_reg_inc_beta(bp, P(p)).value();
    EXPECT_NEAR(reg_inc_beta(bp, P(x)).value(), p, 1e-12);
  }
}

TEST(NormalQuantile, Median) { EXPECT_NEAR(normal_quantile(P(0.5)), 0.0, 1e-15); }

TEST(NormalQuantile, Upper975) {
  EXPECT_NEAR(normal_quantile(P(0.975)), oracle::normal_quantile_bisect(0.975), 1e-9);
  EXPECT_NEAR(normal_quantile(P(0.975)), 1.9599639845400542355, 1e-12);
}

TEST(NormalQuantile, ReferenceValues) {
  EXPECT_NEAR(normal_quantile(P(0.001)), -3.0902323061678135415, 1e-12);
  EXPECT_NEAR(normal_quantile(P(1e-6)), -4.7534243088228989482, 1e-11);
  EXPECT_NEAR(normal_quantile(P(0.3)), -0.52440051270804078404, 1e-13);
  EXPECT_NEAR(normal_quantile(P(0.9999)), 3.7190164854556805644, 1e-11);
}

TEST(NormalQuantile, Antisymmetry) {
  proptest::Gen g(51);
  for (int i = 0; i < 500; ++i) {
    const double p = g.uniform(1e-8, 1 - 1e-8);
    EXPECT_NEAR(normal_quantile(P(p)), -normal_quantile(P(1 - p)), 1e-9) << p;
  }
}

TEST(NormalQuantile, AgreesWithBisection) {
  proptest::Gen g(52);
  for (int i = 0; i < 200; ++i) {
    const double p = g.uniform(1e-5, 1 - 1e-5);
    EXPECT_NEAR(normal_quantile(P(p)), oracle::normal_quantile_bisect(p), 1e-9) << p;
  }
}

TEST(NormalQuantile, RejectsEndpoints) {
  EXPECT_THROW(normal_quantile(P(0.0)), DomainError);
  EXPECT_THROW(normal_quantile(P(1.0)), DomainError);
}

TEST(BetaParams, RejectsNonPositive) {
  EXPECT_THROW(BetaParams(0, 1), DomainError);
  EXPECT_THROW(BetaParams(1, -2), DomainError);
  EXPECT_THROW(BetaParams(std::nan(""), 1), DomainError);
  EXPECT_THROW(BetaParams(INFINITY, 1), DomainError);
}

TEST(LogGamma, KnownValues) {
  EXPECT_NEAR(log_gamma(1.0), 0.0, 1e-15);
  EXPECT_NEAR(log_gamma(2.0), 0.0, 1e-15);
  EXPECT_NEAR(log_gamma(0.5), 0.5 * std::log(M_PI), 1e-14);
  EXPECT_NEAR(log_gamma(10.0), std::log(362880.0), 1e-13);
  for (double x : {0.1, 0.7, 3.3, 17.5, 250.0, 40000.5}) {
    EXPECT_NEAR(log_gamma(x), std::lgamma(x), 1e-12 * std::max(1.0, std::abs(std::lgamma(x)))) << x;
  }
}

TEST(Purity, RepeatedAndConcurrentCallsAreBitIdentical) {
  const BetaParams bp(123.5, 456.25);
  const double ref = inv_reg_inc_beta(bp, P(0.0314)).value();
  std::vector<double> got(8);
  {
    std::vector<std::jthread> threads;
    for (std::size_t i = 0; i < got.size(); ++i) {
      threads.emplace_back([&, i] { got[i] = inv_reg_inc_beta(bp, P(0.0314)).value(); });
    }
  }
  for (double v : got) EXPECT_EQ(v, ref);
}
