#include <gtest/gtest.h>

#include <cmath>

#include "crosswise/evaluation.hpp"
#include "crosswise/numkernel.hpp"
#include "gen.hpp"
#include "oracles.hpp"

using namespace crosswise;

namespace {

Probability P(double p) { return Probability(p); }

}  // namespace

TEST(SignificantCounts, HoldsAllButNegligibleMass) {
  proptest::Gen g(53);
  for (int i = 0; i < 100; ++i) {
    const std::int64_t n = g.sample_size(1, 50000);
    const double rho = g.uniform(0, 1);
    const CountRange r = significant_counts(n, P(rho));
    ASSERT_GE(r.first, 0);
    ASSERT_LE(r.last, n);
    ASSERT_LE(r.first, r.last);
    double inside = 0.0;
    for (std::int64_t z = r.first; z <= r.last; ++z) inside += kernel::binom_pmf(n, z, P(rho));
    EXPECT_NEAR(inside, 1.0, 1e-12) << n << " " << rho;
    if (r.first > 0) EXPECT_LT(kernel::binom_pmf(n, r.first - 1, P(rho)), kNegligibleMass);
    if (r.last < n) EXPECT_LT(kernel::binom_pmf(n, r.last + 1, P(rho)), kNegligibleMass);
  }
}

TEST(SignificantCounts, DegenerateRho) {
  EXPECT_EQ(significant_counts(10, P(0.0)).last, 0);
  EXPECT_EQ(significant_counts(10, P(1.0)).first, 10);
}

TEST(Coverage, FullIntervalStubAlwaysCovers) {
  const ModelConfig c(50, 0.2);
  std::vector<IntervalEstimate> full(51, make_reported_interval(Method::cp, 0.0, 1.0));
  const auto table = IntervalTable::from_intervals(c, ConfidenceLevel(0.95), Method::cp, 0, full);
  for (double pi : {0.001, 0.3, 0.77, 0.999}) EXPECT_NEAR(coverage(table, pi), 1.0, 1e-13);
}

TEST(Coverage, EmptyIntervalStubNeverCovers) {
  const ModelConfig c(20, 0.2);
  std::vector<IntervalEstimate> point(21, make_reported_interval(Method::cp, 0.4, 0.4));
  const auto table = IntervalTable::from_intervals(c, ConfidenceLevel(0.95), Method::cp, 0, point);
  EXPECT_EQ(coverage(table, 0.4), 0.0);
  EXPECT_EQ(expected_covering_length(table, 0.4), 0.0);
}

TEST(Coverage, ElevenTermSummation) {
  const ModelConfig c(10, 0.3);
  const ConfidenceLevel level(0.95);
  const double pi = 0.25;
  const double rho = 0.7 - 0.4 * pi;
  long double cov = 0.0L, len = 0.0L;
  for (std::int64_t z = 0; z <= 10; ++z) {
    const auto ci = cp_interval(c, ObservedCount(c, z), level);
    if (ci.lower < pi && pi < ci.upper) {
      cov += oracle::product_pmf(10, z, rho);
      len += oracle::product_pmf(10, z, rho) * (ci.upper - ci.lower);
    }
  }
  EXPECT_NEAR(coverage(c, level, Method::cp, P(pi)), static_cast<double>(cov), 1e-14);
  EXPECT_NEAR(expected_covering_length(c, level, P(pi)), static_cast<double>(len), 1e-14);
}

TEST(Coverage, ExactIntervalKeepsLevel) {
  const ModelConfig c(100, 0.3);
  const IntervalTable table(c, ConfidenceLevel(0.95), Method::cp);
  for (int i = 1; i <= 99; ++i) ASSERT_GE(coverage(table, i / 100.0), 0.95) << i;
}

TEST(Coverage, RejectsPiOutsideOpenInterval) {
  const IntervalTable table(ModelConfig(10, 0.3), ConfidenceLevel(0.95), Method::cp);
  EXPECT_THROW(coverage(table, 0.0), DomainError);
  EXPECT_THROW(coverage(table, 1.0), DomainError);
}

TEST(AssuredLength, LongBoundGivesScaledCoverage) {
  const ModelConfig c(200, 0.2);
  const IntervalTable table(c, ConfidenceLevel(0.9), Method::cp);
  for (double pi : {0.05, 0.4, 0.8}) {
    EXPECT_NEAR(assured_length_prob(table, pi, 1.0), coverage(table, pi) / 0.9, 1e-15);
    EXPECT_NEAR(assured_length_prob(table, pi, 3.0), coverage(table, pi) / 0.9, 1e-15);
    EXPECT_NEAR(length_prob(table, pi, 1.0), 1.0, 1e-13);
  }
}

TEST(AssuredLength, TinyBoundGivesZero) {
  const ModelConfig c(200, 0.2);
  const IntervalTable table(c, ConfidenceLevel(0.95), Method::cp);
  for (double pi : {0.05, 0.4, 0.8}) {
    EXPECT_EQ(assured_length_prob(table, pi, 1e-6), 0.0);
    // only clipped [0,0] or [1,1] intervals are that short, and they never cover
    EXPECT_LE(length_prob(table, pi, 1e-6), 1.0 - coverage(table, pi) + 1e-15);
  }
}

TEST(AssuredLength, SmallPiAtThousand) {
  const ModelConfig c(1000, 0.1);
  const ConfidenceLevel level(0.95);
  const double pi = 0.001, d = 0.05;
  // Unconditional short-interval probability: 0.966 at this point.
  EXPECT_NEAR(length_prob(c, level, P(pi), d), 0.966, 0.001);
  // The covering-restricted, 1/delta-scaled quantity against enumeration.
  const auto e = oracle::enumerate(oracle::all_intervals(c, level, Method::cp), 1000, 0.1, pi, d);
  EXPECT_NEAR(assured_length_prob(c, level, P(pi), d), e.covering_short_mass / 0.95, 1e-12);
  EXPECT_NEAR(length_prob(c, level, P(pi), d), e.length_prob, 1e-12);
}

TEST(Curve, ReferenceSeriesAtQ012) {
  const std::vector<double> expect{0.922, 0.852, 0.752, 0.626, 0.488, 0.352, 0.235, 0.145,
                                   0.082, 0.043, 0.02,  0.009, 0.004, 0.001, 0,     0};
  const auto cv = curve(ModelConfig(1000, 0.12), ConfidenceLevel(0.95), Method::cp, GridSpec{0.001, 0.076, 0.005}, 0.05);
  ASSERT_EQ(cv.grid.size(), expect.size());
  for (std::size_t i = 0; i < expect.size(); ++i) {
    EXPECT_NEAR(cv.grid[i].pi, 0.001 + 0.005 * static_cast<double>(i), 1e-12);
    EXPECT_NEAR(*cv.grid[i].length_prob, expect[i], 0.001) << cv.grid[i].pi;
  }
}

TEST(Curve, SingletonMatchesScalarOperations) {
  const ModelConfig c(300, 0.25);
  const ConfidenceLevel level(0.95);
  const auto cv = curve(c, level, Method::cp, GridSpec{0.25, 0.25, 0.1}, 0.1);
  ASSERT_EQ(cv.grid.size(), 1u);
  const auto& pt = cv.grid[0];
  EXPECT_EQ(pt.coverage, coverage(c, level, Method::cp, P(0.25)));
  EXPECT_EQ(pt.expected_covering_length, expected_covering_length(c, level, P(0.25)));
  EXPECT_EQ(*pt.assured_length_prob, assured_length_prob(c, level, P(0.25), 0.1));
  EXPECT_EQ(*pt.length_prob, length_prob(c, level, P(0.25), 0.1));
}

TEST(Curve, OptionalFieldsOnlyWithBound) {
  const auto cv = curve(ModelConfig(30, 0.25), ConfidenceLevel(0.95), Method::wp, GridSpec{0.1, 0.5, 0.1});
  EXPECT_EQ(cv.method, Method::wp);
  for (const auto& p : cv.grid) {
    EXPECT_FALSE(p.assured_length_prob.has_value());
    EXPECT_FALSE(p.length_prob.has_value());
  }
}

TEST(Curve, ConcurrentEqualsSequential) {
  const IntervalTable table(ModelConfig(2000, 0.3), ConfidenceLevel(0.95), Method::cp);
  const GridSpec grid{0.005, 0.995, 0.005};
  const auto cv = curve(table, grid, 0.06);
  const auto pts = grid.points();
  ASSERT_EQ(cv.grid.size(), pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const auto seq = evaluate(table, pts[i], 0.06);
    ASSERT_EQ(cv.grid[i].pi, pts[i]);
    ASSERT_EQ(cv.grid[i].coverage, seq.coverage);
    ASSERT_EQ(cv.grid[i].expected_covering_length, seq.expected_covering_length);
    ASSERT_EQ(*cv.grid[i].assured_length_prob, *seq.assured_length_prob);
    if (i > 0) ASSERT_LT(cv.grid[i - 1].pi, cv.grid[i].pi);
  }
  const auto again = curve(table, grid, 0.06);
  for (std::size_t i = 0; i < pts.size(); ++i) ASSERT_EQ(again.grid[i].coverage, cv.grid[i].coverage);
}

TEST(GridSpec, PointCountAndErrors) {
  EXPECT_EQ((GridSpec{0.001, 0.076, 0.005}.points().size()), 16u);
  EXPECT_EQ((GridSpec{0.005, 0.995, 0.005}.points().size()), 199u);
  EXPECT_THROW((GridSpec{0.1, 0.2, 0.0}.points()), DomainError);
  EXPECT_THROW((GridSpec{0.1, 0.2, -0.1}.points()), DomainError);
  EXPECT_THROW((GridSpec{0.3, 0.2, 0.1}.points()), DomainError);
  EXPECT_THROW((GridSpec{0.0, 0.2, 0.1}.points()), DomainError);
  EXPECT_THROW((GridSpec{0.5, 1.0, 0.1}.points()), DomainError);
}

TEST(Evaluation, MatchesFullEnumerationSmallSamples) {
  for (std::int64_t n = 2; n <= 30; ++n) {
    for (double q : {0.1, 0.25, 0.4}) {
      const ModelConfig c(n, q);
      for (Method m : {Method::cp, Method::wp, Method::ap}) {
        const IntervalTable table(c, ConfidenceLevel(0.95), m);
        const auto intervals = oracle::all_intervals(c, ConfidenceLevel(0.95), m);
        for (double pi : {0.013, 0.1, 0.25, 0.5, 0.61, 0.9, 0.987}) {
          for (double d : {0.2, 0.5, 0.9}) {
            const auto got = evaluate(table, pi, d);
            const auto ref = oracle::enumerate(intervals, n, q, pi, d);
            ASSERT_NEAR(got.coverage, ref.coverage, 1e-12);
            ASSERT_NEAR(got.expected_covering_length, ref.expected_covering_length, 1e-12);
            ASSERT_NEAR(*got.assured_length_prob, ref.covering_short_mass / 0.95, 1e-12);
            ASSERT_NEAR(*got.length_prob, ref.length_prob, 1e-12);
          }
        }
      }
    }
  }
}

TEST(Evaluation, ConsistencyBounds) {
  proptest::Gen g(59);
  for (int i = 0; i < 60; ++i) {
    const ModelConfig c(g.sample_size(2, 3000), g.neutral_q());
    const double delta = g.uniform(0.6, 0.99);
    const IntervalTable table(c, ConfidenceLevel(delta), Method::cp);
    for (int k = 0; k < 10; ++k) {
      const auto pt = evaluate(table, g.probability(), g.uniform(0.01, 0.5));
      ASSERT_GE(pt.coverage, 0.0);
      ASSERT_LE(pt.coverage, 1.0 + 1e-12);
      ASSERT_LE(pt.expected_covering_length, pt.coverage + 1e-15);
      ASSERT_LE(*pt.assured_length_prob * delta, pt.coverage + 1e-15);
      ASSERT_GE(*pt.assured_length_prob, 0.0);
    }
  }
}

// Trends that hold on coarse grids; discreteness can break them locally.
TEST(Evaluation, SampledTrends) {
  const ConfidenceLevel level(0.95);
  {
    const IntervalTable table(ModelConfig(1000, 0.3), level, Method::cp);
    double prev = 0.0;
    for (int i = 1; i < 10; ++i) {
      const double v = expected_covering_length(table, 0.05 * i);
      EXPECT_GT(v, prev) << "pi=" << 0.05 * i;
      prev = v;
    }
  }
  {
    double prev = 0.0;
    for (double q : {0.1, 0.2, 0.3, 0.4, 0.45}) {
      const double v = expected_covering_length(ModelConfig(1000, q), level, P(0.1));
      EXPECT_GT(v, prev) << "q=" << q;
      prev = v;
    }
  }
  {
    const IntervalTable table(ModelConfig(1000, 0.1), level, Method::cp);
    double prev = 1.0;
    for (int i = 0; i < 8; ++i) {
      const double v = length_prob(table, 0.001 + 0.02 * i, 0.06);
      EXPECT_LE(v, prev + 1e-12) << "pi=" << 0.001 + 0.02 * i;
      prev = v;
    }
  }
}

TEST(IntervalTable, RangeAndLookup) {
  const ModelConfig c(100, 0.3);
  const IntervalTable part(c, ConfidenceLevel(0.95), Method::cp, CountRange{40, 60});
  EXPECT_EQ(part.range().size(), 21);
  EXPECT_EQ(part.at(50).lower, cp_interval(c, ObservedCount(c, 50), ConfidenceLevel(0.95)).lower);
  EXPECT_THROW((void)part.at(39), DomainError);
  EXPECT_THROW(IntervalTable(c, ConfidenceLevel(0.95), Method::cp, CountRange{-1, 5}), DomainError);
  EXPECT_THROW(IntervalTable(c, ConfidenceLevel(0.95), Method::cp, CountRange{5, 101}), DomainError);
}
