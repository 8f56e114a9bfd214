#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "fracfront/bounds.hpp"
#include "fracfront/error.hpp"
#include "fracfront/kernel.hpp"

namespace ff = fracfront;

namespace {

double rel_err(double got, double want) { return std::abs(got - want) / std::abs(want); }

}  // namespace

TEST(Bounds, FrozenConstants) {
  // mpmath evaluations of the closed forms (tests/oracles/gen_oracles.py).
  struct Case {
    double beta;
    int d;
    double m, c0;
  };
  const Case cases[] = {
      {0.5, 1, 1.8736489158336631, 0.76970284623023603},
      {0.4, 2, 2.4136976674977545, 0.42720458548304129},
      {0.6, 3, 6.919531011678437, 0.93684939441736366},
      {0.9, 1, 1.497000434346552, 1.014050488636009},
  };
  for (const auto& c : cases) {
    EXPECT_LT(rel_err(ff::const_M(c.beta, c.d), c.m), 1e-9) << c.beta << " " << c.d;
    EXPECT_LT(rel_err(ff::c0_threshold(ff::ModelParams::linear(c.beta, c.d, 1.0)), c.c0), 1e-9);
  }
  EXPECT_LT(rel_err(ff::theta_lower_front_bound(ff::ModelParams::linear(0.5, 1, 1.0)), 2.3697698859797055),
            1e-9);
  EXPECT_LT(rel_err(ff::theta_lower_front_bound(ff::ModelParams::linear(0.4, 1, 2.0)), 9.8281032588434568),
            1e-9);
  EXPECT_LT(rel_err(ff::eta2_lower_bound(ff::ModelParams::linear(0.5, 1, 1.0)), 0.17147313292732254), 1e-8);
}

TEST(Bounds, BranchOfMIsReported) {
  for (double beta = 0.1; beta < 0.65; beta += 0.05)
    for (int d = 1; d <= 3; ++d) {
      const double m = ff::const_M(beta, d);
      const int branch = ff::const_M_branch(beta, d);
      const double b = 3.0 * std::sqrt(beta * std::tgamma(2.0 * beta * (1.0 - d / 4.0))) /
                       (std::pow(2.0, beta) * std::tgamma(1.0 + beta));
      if (branch == 1) {
        EXPECT_DOUBLE_EQ(m, b);
      } else {
        EXPECT_GE(m, b);
      }
    }
}

TEST(Bounds, Eta2AtBetaOneIsQuarticOverEight) {
  for (double lam : {0.5, 1.0, 3.0}) {
    const auto p = ff::ModelParams::linear(1.0, 1, lam);
    EXPECT_LT(rel_err(ff::eta2_lower_bound(p), std::pow(lam, 4) / 8.0), 1e-8) << lam;
  }
}

TEST(Bounds, Eta2VanishesWithoutCone) {
  auto p = ff::ModelParams::linear(0.5, 1, 1.0);
  p.l_sigma = 0.0;
  p.sigma.kind = ff::SigmaKind::Custom;
  p.sigma.custom = [](double u) { return std::sin(u); };
  p.lip_sigma = 1.0;
  EXPECT_EQ(ff::eta2_lower_bound(p), 0.0);
}

TEST(Bounds, FrontSpeedIsEnvelopeGrowthOverDecay) {
  // theta_L = (2 nu)^(1/beta) (Lip c_0)^(2(2-beta)/(2-beta d)) equals gamma(c)/c at c = (Lip c_0)^(2beta/(2-beta d)).
  for (double beta : {0.3, 0.5}) {
    for (int d : {1, 2}) {
      const auto p = ff::ModelParams::linear(beta, d, 1.7, 0.8);
      const double c = ff::admissible_c(p, 1.0);
      EXPECT_LT(rel_err(ff::theta_lower_front_bound(p), ff::envelope_growth_rate(p, c) / c), 1e-12);
      EXPECT_LT(rel_err(ff::admissible_c(p, 1.5), 1.5 * c), 1e-14);
    }
  }
}

TEST(Bounds, YoungConstantDecreasesInGamma) {
  const auto p = ff::ModelParams::linear(0.4, 1, 1.0);
  const double c = 0.8;
  const double g0 = std::pow(2.0 * p.nu * c * c, 1.0 / p.beta);
  double prev = ff::young_constant(c, g0, p);
  for (double s = 1.5; s < 20.0; s *= 1.5) {
    const double next = ff::young_constant(c, s * g0, p);
    EXPECT_LT(next, prev);
    prev = next;
  }
}

TEST(Bounds, YoungConstantRequiresMargin) {
  const auto p = ff::ModelParams::linear(0.5, 1, 1.0);
  // (gamma/2)^beta <= nu c^2 / 2 at gamma = 1, c = 2.
  EXPECT_LE(ff::young_margin(2.0, 1.0, p), 0.0);
  EXPECT_THROW(ff::young_constant(2.0, 1.0, p), ff::HypothesisViolation);
}

TEST(Bounds, ReportClosedFormIdentity) {
  const auto report = ff::compute_bounds(ff::ModelParams::linear(0.4, 1, 2.0));
  ASSERT_TRUE(report.ok());
  ASSERT_TRUE(report.young_identity_gap.has_value());
  EXPECT_LT(*report.young_identity_gap, 1e-12);
  EXPECT_TRUE(report.young_validity.holds);
  EXPECT_GT(report.young_validity.lhs, report.young_validity.rhs);
}

TEST(Bounds, ScopeErrors) {
  auto p = ff::ModelParams::linear(0.4, 1, 1.0);
  p.alpha = 1.5;
  EXPECT_THROW(ff::theta_lower_front_bound(p), ff::UnsupportedRoute);

  auto q = ff::ModelParams::linear(0.4, 1, 1.0);
  q.sigma.kind = ff::SigmaKind::Custom;
  q.sigma.custom = [](double u) { return 1.0 + u; };
  q.l_sigma = 0.0;
  EXPECT_THROW(ff::theta_lower_front_bound(q), ff::HypothesisViolation);

  auto zero = ff::ModelParams::linear(0.4, 1, 0.0);
  EXPECT_THROW(ff::admissible_c(zero, 1.5), ff::DegenerateInput);
  EXPECT_THROW(ff::admissible_c(ff::ModelParams::linear(0.4, 1, 1.0), 0.5), ff::ParameterError);
}

TEST(Bounds, ReportCollectsIssuesInsteadOfThrowing) {
  auto p = ff::ModelParams::linear(0.4, 1, 1.0);
  p.alpha = 1.5;
  const auto report = ff::compute_bounds(p);
  EXPECT_FALSE(report.ok());
  EXPECT_FALSE(report.theta_l_bound.has_value());
  EXPECT_TRUE(report.cstar.has_value());
}

TEST(Bounds, EnergyBoundGrowsWithTime) {
  const auto p = ff::ModelParams::linear(0.4, 1, 1.0);
  EXPECT_LT(ff::l2_energy_bound(p, 0.5, 1.0, 1.0), ff::l2_energy_bound(p, 0.5, 2.0, 1.0));
  EXPECT_DOUBLE_EQ(ff::l2_energy_bound(p, 0.5, 0.0, 3.0), 9.0 / 0.5);
}
