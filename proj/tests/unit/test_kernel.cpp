#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include <gtest/gtest.h>

#include "fracfront/error.hpp"
#include "fracfront/kernel.hpp"
#include "fracfront/specfun.hpp"

namespace ff = fracfront;

namespace {

double rel_err(double got, double want) { return std::abs(got - want) / std::abs(want); }

ff::ModelParams model(double beta, int d) { return ff::ModelParams::linear(beta, d, 1.0); }

}  // namespace

TEST(Kernel, MultiplierIsOneAtZeroFrequency) {
  EXPECT_EQ(ff::kernel_multiplier(model(0.4, 2), 1.3, 0.0), 1.0);
  EXPECT_NEAR(ff::kernel_multiplier(model(0.5, 1), 1.0, 1.0), std::exp(1.0) * std::erfc(1.0), 1e-12);
}

TEST(Kernel, BetaOneIsTheGaussianHeatKernel) {
  const auto p = model(1.0, 1);
  const double t = 0.7;
  for (double x : {0.0, 0.5, 1.5, 3.0}) {
    const double gauss = std::exp(-x * x / (4.0 * t)) / std::sqrt(4.0 * std::numbers::pi * t);
    const double xs[] = {x};
    EXPECT_LT(rel_err(ff::kernel_point_subordination(p, t, xs), gauss), 1e-9) << x;
  }
}

TEST(Kernel, RadialAndPointRoutesAgree) {
  const auto p = model(0.6, 2);
  const double xs[] = {0.3, -0.4};
  EXPECT_LT(rel_err(ff::kernel_point_subordination(p, 1.0, xs), ff::kernel_radial_subordination(p, 1.0, 0.5)),
            1e-12);
}

TEST(Kernel, SpectralTableHasUnitMass) {
  for (int d : {1, 2}) {
    const auto p = model(0.5, d);
    const auto grid = ff::recommended_lattice(p, 1.0, 0.125);
    const auto table = ff::kernel_grid_fourier(p, 1.0, grid);
    EXPECT_NEAR(table.mass(), 1.0, 1e-12) << d;
  }
}

TEST(Kernel, SubordinationAgreesWithPointwiseFourierView) {
  const auto p = model(0.4, 1);
  const double t = 0.5;
  const double w = ff::kernel_width(p, t);
  const auto grid = ff::LatticeSpec::from_extent(1, w / 8.0, 24.0 * w);
  ff::FourierOptions fo;
  fo.view = ff::FourierView::Pointwise;
  const auto four = ff::kernel_grid_fourier(p, t, grid, fo);
  const auto sub = ff::kernel_grid_subordination(p, t, grid);
  const double peak = sub.peak();
  double worst = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i)
    if (sub.values[i] > 1e-8 * peak)
      worst = std::max(worst, rel_err(four.values[i], sub.values[i]));
  EXPECT_LT(worst, 1e-5);
}

TEST(Kernel, CstarFrozenAtHalfOrder) {
  // Quadrature of z^(d/2-1) E_{1/2}(-z)^2 in mpmath (tests/oracles/gen_oracles.py).
  const double want[] = {0.21745192999341043, 0.055961613656274917, 0.020423277382330264};
  for (int d = 1; d <= 3; ++d) EXPECT_LT(rel_err(ff::cstar(model(0.5, d)), want[d - 1]), 1e-8) << d;
}

TEST(Kernel, CstarAtBetaOneIsGaussian) {
  EXPECT_LT(rel_err(ff::cstar(model(1.0, 1)), 1.0 / std::sqrt(8.0 * std::numbers::pi)), 1e-9);
}

TEST(Kernel, L2NormScalesAsPowerOfTime) {
  const auto p = model(0.4, 1);
  const double cs = ff::cstar(p);
  for (double t : {0.5, 2.0})
    EXPECT_LT(rel_err(ff::kernel_l2(p, t), cs * std::pow(t, -p.l2_exponent())), 1e-3) << t;
}

TEST(Kernel, ExponentialMomentMatchesMittagLeffler) {
  const auto p = model(0.8, 1);
  const double lam[] = {1.0};
  const double want = ff::mittag_leffler(0.8, std::pow(1.3, 0.8));
  EXPECT_LT(rel_err(ff::exp_moment(p, 1.3, lam), want), 1e-6);
}

TEST(Kernel, ConvolvingFlatDatumIsIdentity) {
  auto p = model(0.5, 1);
  p.u0 = {ff::InitialKind::Flat, 2.5, 1.0};
  const auto grid = ff::LatticeSpec::from_extent(1, 0.125, 8.0);
  const auto u0 = ff::sample_initial_datum(p, grid);
  const auto out = ff::convolve_u0(p, 1.0, u0);
  for (double v : out.values) EXPECT_NEAR(v, 2.5, 1e-12);
}

TEST(Kernel, SubordinationNeedsBrownianMotion) {
  auto p = model(0.4, 1);
  p.alpha = 1.5;
  const double xs[] = {0.0};
  EXPECT_THROW(ff::kernel_point_subordination(p, 1.0, xs), ff::UnsupportedRoute);
}

TEST(Kernel, TailMassShrinksWithExtent) {
  const auto p = model(0.5, 1);
  const double w = ff::kernel_width(p, 1.0);
  EXPECT_GT(ff::kernel_tail_mass(p, 1.0, 4.0 * w), ff::kernel_tail_mass(p, 1.0, 12.0 * w));
}
