#include <algorithm>
#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "fracfront/error.hpp"
#include "fracfront/kernel.hpp"
#include "fracfront/simulate.hpp"

namespace ff = fracfront;

namespace {

ff::SimConfig base_config(double lambda) {
  ff::SimConfig c;
  c.params = ff::ModelParams::linear(0.4, 1, lambda);
  c.grid = ff::LatticeSpec::from_extent(1, 0.125, 8.0);
  c.dt = 0.02;
  c.horizon = 0.4;
  c.replicates = 8;
  c.base_seed = 99;
  c.threads = 1;
  return c;
}

double max_abs(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

}  // namespace

TEST(Simulate, ZeroNoiseReproducesDeterministicConvolution) {
  auto c = base_config(0.0);
  c.params.u0 = {ff::InitialKind::Bump, 1.0, 2.0};
  c.sampling = ff::KernelSampling::Spectral;
  c.horizon = 0.2;
  const auto mf = ff::run_replicates(c);
  ASSERT_TRUE(mf.usable);
  const auto u0 = ff::sample_initial_datum(c.params, c.grid);
  for (std::size_t r = 0; r < mf.times.size(); ++r) {
    const auto conv = r == 0 ? u0 : ff::convolve_u0(c.params, mf.times[r], u0);
    for (std::size_t i = 0; i < mf.sites(); ++i) {
      EXPECT_NEAR(mf.at(r, i), conv.values[i] * conv.values[i], 1e-14);
      EXPECT_EQ(mf.err(r, i), 0.0);
    }
  }
}

TEST(Simulate, SolutionIsLinearInInitialDatumForLinearSigma) {
  auto c = base_config(1.5);
  const auto one = ff::solve_replicate(c, 3);
  c.params.u0.height = 2.0;
  const auto two = ff::solve_replicate(c, 3);
  ASSERT_EQ(one.fields.size(), two.fields.size());
  for (std::size_t r = 0; r < one.fields.size(); ++r) {
    const double scale = max_abs(one.fields[r]);
    for (std::size_t i = 0; i < one.fields[r].size(); ++i)
      EXPECT_NEAR(two.fields[r][i], 2.0 * one.fields[r][i], 1e-12 * scale);
  }
}

TEST(Simulate, AggregateIsIndependentOfThreadCount) {
  auto c = base_config(1.0);
  c.replicates = 40;
  c.threads = 1;
  const auto a = ff::run_replicates(c);
  c.threads = 3;
  const auto b = ff::run_replicates(c);
  EXPECT_EQ(a.mean_sq, b.mean_sq);
  EXPECT_EQ(a.std_err, b.std_err);
  EXPECT_EQ(a.site_mean, b.site_mean);
  EXPECT_EQ(a.replicate_site_mean, b.replicate_site_mean);
}

TEST(Simulate, ReplicatesAreReproducible) {
  const auto c = base_config(1.0);
  EXPECT_EQ(ff::solve_replicate(c, 5).fields, ff::solve_replicate(c, 5).fields);
  EXPECT_NE(ff::solve_replicate(c, 5).fields.back(), ff::solve_replicate(c, 6).fields.back());
}

TEST(Simulate, OneStepSecondMomentMatchesWalshIsometry) {
  // E u_1^2 = (G_1 * 1)^2 + lambda^2 dt / dx * sum_y k(y)^2, with k the lattice noise kernel.
  for (auto sampling : {ff::KernelSampling::Spectral, ff::KernelSampling::Pointwise}) {
    auto c = base_config(1.0);
    c.sampling = sampling;
    c.horizon = c.dt;
    c.replicates = 4000;
    const auto cache = ff::build_kernel_cache(c);
    const auto& g = cache.noise.empty() ? cache.point[1] : cache.noise[1];
    const std::size_t n = c.grid.n;
    double sum = g.front() * g.front() + g.back() * g.back();
    for (std::size_t j = 1; j + 1 < g.size(); ++j) sum += 2.0 * g[j] * g[j];
    const double k2 = sum / static_cast<double>(n);
    const double drift = cache.point[1].front();
    const double want = drift * drift + c.params.sigma.lambda * c.params.sigma.lambda * c.dt / c.grid.dx * k2;
    const auto mf = ff::run_replicates(c);
    ASSERT_EQ(mf.times.size(), 2u);
    EXPECT_NEAR(mf.site_mean[1], want, 4.0 * mf.site_mean_err[1]);
  }
}

TEST(Simulate, StandardErrorHalvesWithFourTimesTheReplicates) {
  auto c = base_config(0.5);
  c.replicates = 256;
  const auto small = ff::run_replicates(c);
  c.replicates = 1024;
  const auto large = ff::run_replicates(c);
  const double ratio = small.site_mean_err.back() / large.site_mean_err.back();
  EXPECT_GT(ratio, 1.6);
  EXPECT_LT(ratio, 2.5);
}

TEST(Simulate, CellIntegratedCouplingRuns) {
  auto c = base_config(1.0);
  c.coupling = ff::NoiseCoupling::CellIntegrated;
  EXPECT_EQ(c.resolved_sampling(), ff::KernelSampling::Spectral);
  const auto mf = ff::run_replicates(c);
  EXPECT_TRUE(mf.usable);
  mf.validate();
}

TEST(Simulate, BlowUpPolicies) {
  auto c = base_config(3e4);
  c.horizon = 1.0;
  c.replicates = 4;
  c.blowup = ff::BlowUpPolicy::Abort;
  const auto aborted = ff::run_replicates(c);
  EXPECT_FALSE(aborted.usable);
  EXPECT_FALSE(aborted.blowup_message.empty());
  c.blowup = ff::BlowUpPolicy::Tolerate;
  const auto tolerated = ff::run_replicates(c);
  EXPECT_EQ(tolerated.blowups, 4u);
  EXPECT_EQ(tolerated.blown_replicates.size(), 4u);
}

TEST(Simulate, ValidationRejectsBadConfigs) {
  auto c = base_config(1.0);
  c.dt = 0.0;
  EXPECT_THROW(c.validate(), ff::ParameterError);

  auto near_edge = base_config(1.0);
  near_edge.params.u0 = {ff::InitialKind::Bump, 1.0, 7.5};
  EXPECT_THROW(near_edge.validate(), ff::ParameterError);

  auto mixed = base_config(1.0);
  mixed.sampling = ff::KernelSampling::Pointwise;
  mixed.coupling = ff::NoiseCoupling::CellIntegrated;
  EXPECT_THROW(mixed.validate(), ff::ParameterError);

  auto planar = base_config(1.0);
  planar.params = ff::ModelParams::linear(0.4, 2, 1.0);
  planar.grid = ff::LatticeSpec::from_extent(2, 0.25, 4.0);
  planar.sampling = ff::KernelSampling::Pointwise;
  EXPECT_THROW(planar.validate(), ff::ParameterError);

  auto tiny_cache = base_config(1.0);
  tiny_cache.cache_limit_bytes = 16;
  EXPECT_THROW(tiny_cache.validate(), ff::ParameterError);
}

TEST(Simulate, RecordStepsAlwaysIncludeRequested) {
  auto c = base_config(1.0);
  c.record_steps = {10, 5, 5, 20};
  EXPECT_EQ(c.resolved_record_steps(), (std::vector<std::size_t>{5, 10, 20}));
  c.record_steps.clear();
  EXPECT_EQ(c.resolved_record_steps().size(), c.steps() + 1);
}

TEST(Growth, ExactExponentialGivesExactRate) {
  const std::vector<double> t = {0.0, 0.5, 1.0, 1.5, 2.0};
  std::vector<double> m, se;
  for (double s : t) {
    m.push_back(3.0 * std::exp(1.25 * s));
    se.push_back(0.01 * m.back());
  }
  const auto g = ff::fit_log_slope(t, m, se);
  EXPECT_NEAR(g.rate, 1.25, 1e-12);
  EXPECT_NEAR(g.intercept, std::log(3.0), 1e-12);
  EXPECT_EQ(g.n_times, 5u);
  EXPECT_GT(g.std_error, 0.0);
}

TEST(Growth, FitRejectsDegenerateData) {
  const std::vector<double> t3 = {0.0, 1.0, 2.0};
  const std::vector<double> one3 = {1.0, 1.0, 1.0};
  EXPECT_THROW(ff::fit_log_slope(t3, one3, one3), ff::EstimationError);
  const std::vector<double> t = {0.0, 1.0, 2.0, 3.0};
  const std::vector<double> m = {1.0, 0.0, 1.0, 1.0};
  const std::vector<double> se = {0.1, 0.1, 0.1, 0.1};
  EXPECT_THROW(ff::fit_log_slope(t, m, se), ff::EstimationError);
}

TEST(Growth, SiteMeanEstimatorIsCovarianceAware) {
  auto c = base_config(2.0);
  c.replicates = 64;
  const auto mf = ff::run_replicates(c);
  const auto g = ff::estimate_growth_site_mean(mf, {0.1, 0.4});
  EXPECT_TRUE(g.covariance_aware);
  EXPECT_TRUE(std::isfinite(g.rate));
  EXPECT_GT(g.std_error, 0.0);
  const auto single = ff::estimate_growth(mf, c.grid.origin(), {0.1, 0.4});
  EXPECT_FALSE(single.covariance_aware);
}
