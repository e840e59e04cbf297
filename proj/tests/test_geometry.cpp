#include <cmath>

#include <gtest/gtest.h>

#include "entrokit/divergence.hpp"
#include "entrokit/errors.hpp"
#include "entrokit/geometry.hpp"

using namespace entrokit;

TEST(Metric, Conventions) {
  const auto p = Distribution::uniform(2);
  const auto d = fisher_metric(p, DeformParams::strict(0.25, 1.0));
  EXPECT_EQ(d.g, (std::vector<double>{1.0, 1.0}));
  const auto shifted = fisher_metric(p, DeformParams::strict(0.25, 0.5), MetricConvention::r_shifted);
  EXPECT_EQ(shifted.g, (std::vector<double>{5.0, 5.0}));
  EXPECT_THROW(fisher_metric(Distribution::degenerate(2, 0), DeformParams::strict(0.25, 1.0)),
               DomainError);
}

TEST(Metric, FiniteDifferenceOracle) {
  const auto prm = DeformParams::strict(0.25, 1.0);
  const auto h = fd_hessian(Distribution::uniform(2), prm, 1e-4);
  EXPECT_NEAR(h(0, 0), 1.0, 1e-5);
  EXPECT_NEAR(h(1, 1), 1.0, 1e-5);
  EXPECT_NEAR(h(0, 1), 0.0, 1e-8);
  EXPECT_THROW(fd_hessian(Distribution::make({0.99995, 0.00005}), prm, 1e-4), DomainError);
}

TEST(Metric, OracleAgreesAcrossParameters) {
  // The derived coefficient does not depend on r; the shifted one does.
  const auto p = Distribution::make({0.2, 0.3, 0.5});
  for (double r : {0.1, 1.0, 3.0}) {
    const auto prm = DeformParams::strict(0.3, r);
    const auto h = fd_hessian(p, prm);
    const auto g = fisher_metric(p, prm).g;
    for (std::size_t i = 0; i < 3; ++i) EXPECT_NEAR(h(i, i) / g[i], 1.0, 1e-5);
    const auto alt = fisher_metric(p, prm, MetricConvention::r_shifted).g;
    EXPECT_GT(std::fabs(alt[0] - h(0, 0)), 0.1);
  }
}

TEST(QuadraticForm, Values) {
  const auto p = Distribution::uniform(2);
  const auto prm = DeformParams::strict(0.25, 1.0);
  const std::vector<double> zero{0.0, 0.0};
  EXPECT_EQ(quadratic_form(p, zero, prm), 0.0);
  const std::vector<double> dp{1e-3, -1e-3};
  EXPECT_NEAR(quadratic_form(p, dp, prm), 2e-6, 1e-20);
  const std::vector<double> unbalanced{1e-3, 0.0};
  EXPECT_THROW(quadratic_form(p, unbalanced, prm), DomainError);
  const std::vector<double> leaving{0.6, -0.6};
  EXPECT_THROW(quadratic_form(p, leaving, prm), DomainError);
}

TEST(QuadraticForm, TaylorRatio) {
  const auto p = Distribution::make({0.2, 0.3, 0.5});
  const auto prm = DeformParams::strict(0.2, 0.7);
  double prev = 1.0;
  for (double eps : {1e-2, 1e-3, 1e-4}) {
    const std::vector<double> dp{eps, -0.5 * eps, -0.5 * eps};
    const double err = std::fabs(taylor_ratio(p, dp, prm) - 1.0);
    EXPECT_LT(err, prev);
    prev = err;
  }
  EXPECT_LT(prev, 1e-3);
  const std::vector<double> zero{0.0, 0.0, 0.0};
  EXPECT_THROW(taylor_ratio(p, zero, prm), DomainError);
}

TEST(Potential, Values) {
  const PotentialCoefficients unit{1.0};
  const double h = 1e-4;
  const double u = 0.5;
  const double fd =
      (hessian_potential(u + h, unit) - 2 * hessian_potential(u, unit) + hessian_potential(u - h, unit)) /
      (h * h);
  EXPECT_NEAR(fd, 2.0, 1e-6);
  EXPECT_EQ(hessian_potential(1.0, PotentialCoefficients{3.5}), -3.5);
  EXPECT_THROW(hessian_potential(0.0, unit), DomainError);
}
