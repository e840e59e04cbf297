#include <cmath>

#include <gtest/gtest.h>

#include "entrokit/divergence.hpp"
#include "entrokit/errors.hpp"

using namespace entrokit;

namespace {

const auto kQuarter = DeformParams::strict(0.25, 1.0);
const auto P = Distribution::uniform(2);
const auto Q = Distribution::make({0.25, 0.75});

}  // namespace

TEST(Divergence, FixedValues) {
  // mpmath, 30 digits: 2 (1 - sqrt(0.125) - sqrt(0.375))
  EXPECT_NEAR(divergence(P, Q, kQuarter).value, 0.0681483474218634265, 1e-15);
  // mpmath: p = (0.1, 0.2, 0.3, 0.4), q uniform, k = 0.3, r = 0.9
  EXPECT_NEAR(divergence(Distribution::make({0.1, 0.2, 0.3, 0.4}), Distribution::uniform(4),
                         DeformParams::strict(0.3, 0.9))
                  .value,
              0.0457316786452492405, 1e-15);
  EXPECT_EQ(divergence(Q, Q, kQuarter).value, 0.0);
}

TEST(Divergence, LiteralForms) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const auto p = sample(DistributionShape{6}, RngSeed{seed});
    const auto q = sample(DistributionShape{6}, RngSeed{seed + 1000});
    const auto prm = DeformParams::strict(0.15, 0.8);
    const double d = divergence(p, q, prm).value;
    EXPECT_NEAR(divergence_literal(p, q, prm), d, 1e-13);
    EXPECT_NEAR(divergence_literal_inverted(p, q, prm), d, 1e-13);
  }
}

TEST(Divergence, Support) {
  const auto p = Distribution::make({0.5, 0.5, 0.0});
  const auto q = Distribution::make({0.2, 0.3, 0.5});
  const auto d = divergence(p, q, kQuarter);
  EXPECT_EQ(d.support, SupportFlag::extended);
  EXPECT_FALSE(d.boundary_degenerate);
  EXPECT_EQ(divergence(q, q, kQuarter).support, SupportFlag::full);
  EXPECT_THROW(divergence(q, p, kQuarter), AbsoluteContinuityError);
  EXPECT_THROW(divergence(P, Distribution::uniform(3), kQuarter), DimensionError);
}

TEST(Divergence, BoundaryK) {
  // At k = 1/2 the value is 1 - sum of q over supp(P).
  const auto p = Distribution::make({0.5, 0.5, 0.0});
  const auto q = Distribution::make({0.2, 0.3, 0.5});
  const auto d = divergence(p, q, DeformParams::strict(0.5, 1.0));
  EXPECT_TRUE(d.boundary_degenerate);
  EXPECT_NEAR(d.value, 0.5, 1e-15);
  EXPECT_NEAR(divergence(P, Q, DeformParams::strict(0.5, 1.0)).value, 0.0, 1e-15);
}

TEST(Divergence, References) {
  EXPECT_NEAR(reference_divergence(P, Q, KullbackLeibler{}), 0.143841036225890464, 1e-15);
  EXPECT_EQ(reference_divergence(Q, Q, KullbackLeibler{}), 0.0);
  // q = 1 - 2k maps the generalized divergence with k = r onto Tsallis
  EXPECT_NEAR(reference_divergence(P, Q, TsallisDivergence{0.5}),
              divergence(P, Q, DeformParams::strict(0.25, 0.25)).value, 1e-15);
  EXPECT_THROW(reference_divergence(P, Q, TsallisDivergence{1.0}), ParamError);
}

TEST(Divergence, Mutual) {
  const auto diag = JointDistribution2::from_rows({{0.5, 0.0}, {0.0, 0.5}});
  // mpmath: 2 (1 - 2 sqrt(0.125))
  EXPECT_NEAR(mutual_divergence(diag, kQuarter).value, 0.585786437626904951, 1e-15);
  EXPECT_NEAR(mutual_divergence(product(P, Q), kQuarter).value, 0.0, 1e-16);
}

TEST(Divergence, SumOffSimplex) {
  const std::vector<double> a{0.3, 0.9};
  const std::vector<double> b{0.5, 0.5};
  const double expected = (0.3 - std::pow(0.3, 0.5) * std::pow(0.5, 0.5) + 0.9 -
                           std::pow(0.9, 0.5) * std::pow(0.5, 0.5)) /
                          0.5;
  EXPECT_NEAR(divergence_sum(a, b, kQuarter), expected, 1e-15);
  const std::vector<double> bad{0.0, 1.0};
  EXPECT_THROW(divergence_sum(bad, b, kQuarter), DomainError);
}

TEST(LogSum, Cases) {
  const std::vector<double> ones{1, 1};
  const std::vector<double> twos{2, 2};
  const auto eq = log_sum_gap(ones, twos, kQuarter);
  EXPECT_NEAR(eq.lhs, eq.rhs, 1e-15);
  const auto same = log_sum_gap(twos, twos, kQuarter);
  EXPECT_EQ(same.lhs, 0.0);
  EXPECT_EQ(same.rhs, 0.0);
  // mpmath: lhs = 0.343145750507619805, rhs = 0 for a = (1, 2), b = (2, 1)
  const std::vector<double> a{1, 2};
  const std::vector<double> b{2, 1};
  const auto g = log_sum_gap(a, b, DeformParams::strict(0.25, 0.75));
  EXPECT_NEAR(g.lhs, 0.343145750507619805, 1e-15);
  EXPECT_EQ(g.rhs, 0.0);
  EXPECT_GT(g.gap(), 0.0);
  const std::vector<double> neg{-1, 2};
  EXPECT_THROW(log_sum_gap(neg, b, kQuarter), DomainError);
  EXPECT_THROW(log_sum_gap(std::vector<double>{}, std::vector<double>{}, kQuarter), DimensionError);
}
