#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <optional>
#include <sstream>

#include <boost/math/quadrature/gauss.hpp>

#include "fft.hpp"
#include "fracfront/bounds.hpp"
#include "fracfront/error.hpp"
#include "fracfront/kernel.hpp"
#include "fracfront/parallel.hpp"
#include "fracfront/rng.hpp"
#include "fracfront/simulate.hpp"
#include "fracfront/specfun.hpp"

namespace fracfront {
namespace {

// Replicates are solved in blocks of this size before in-order aggregation.
constexpr std::size_t kBlock = 16;
// |u| above this makes u^2 overflow-prone; treated as blow-up.
constexpr double kBlowUpMagnitude = 1e150;

std::size_t spectral_size(const LatticeSpec& g) {
  std::size_t s = g.n / 2 + 1;
  for (int a = 1; a < g.dim; ++a) s *= g.n;
  return s;
}

// Mean of E_beta(-a s^beta) over s in [(j-1) dt, j dt].
double cell_average(const ModelParams& p, double a, double dt, std::size_t j, const EvalOptions& eval) {
  using GL = boost::math::quadrature::gauss<double, 16>;
  if (a == 0.0) return 1.0;
  if (j == 1) {
    // s = dt v^(1/beta) smooths the s^beta cusp at 0.
    const double e = 1.0 / p.beta;
    return GL::integrate([&](double v) {
      if (v <= 0.0) return 0.0;
      return mittag_leffler(p.beta, -a * std::pow(dt, p.beta) * v, eval) * e * std::pow(v, e - 1.0);
    }, 0.0, 1.0);
  }
  const double lo = (static_cast<double>(j) - 1.0) * dt;
  const double hi = static_cast<double>(j) * dt;
  return GL::integrate([&](double s) { return mittag_leffler(p.beta, -a * std::pow(s, p.beta), eval); }, lo, hi) / dt;
}

struct Welford {
  std::vector<double> mean, m2;
  std::size_t count = 0;

  explicit Welford(std::size_t n) : mean(n, 0.0), m2(n, 0.0) {}
  void add(std::span<const double> x) {
    ++count;
    const double inv = 1.0 / static_cast<double>(count);
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double d = x[i] - mean[i];
      mean[i] += d * inv;
      m2[i] += d * (x[i] - mean[i]);
    }
  }
  std::vector<double> std_err() const {
    std::vector<double> out(mean.size(), 0.0);
    if (count < 2) return out;
    const double scale = 1.0 / (static_cast<double>(count - 1) * static_cast<double>(count));
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = std::sqrt(std::max(0.0, m2[i]) * scale);
    return out;
  }
};

}  // namespace

std::size_t SimConfig::steps() const {
  return static_cast<std::size_t>(std::llround(horizon / dt));
}

std::vector<std::size_t> SimConfig::resolved_record_steps() const {
  std::vector<std::size_t> out = record_steps;
  if (out.empty())
    for (std::size_t n = 0; n <= steps(); ++n) out.push_back(n);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

double SimConfig::resolved_theta_max() const {
  if (theta_max >= 0.0) return theta_max;
  if (params.lip_sigma == 0.0) return 0.0;
  try {
    return theta_lower_front_bound(params, eval);
  } catch (const Error&) {
    return 0.0;
  }
}

KernelSampling SimConfig::resolved_sampling() const {
  if (sampling != KernelSampling::Auto) return sampling;
  return params.dim == 1 && coupling == NoiseCoupling::LeftPoint ? KernelSampling::Pointwise
                                                                 : KernelSampling::Spectral;
}

bool SimConfig::sigma_is_zero() const {
  return params.sigma.kind != SigmaKind::Custom && params.sigma.lambda == 0.0;
}

void SimConfig::validate() const {
  params.validate();
  grid.validate();
  if (params.alpha != 2.0) throw ParameterError("simulate: alpha must be 2");
  if (grid.dim != params.dim) throw ParameterError("simulate: lattice dimension does not match params.dim");
  if (!(dt > 0.0) || !std::isfinite(dt)) throw ParameterError("simulate: dt must be > 0");
  if (!(horizon > 0.0) || !std::isfinite(horizon)) throw ParameterError("simulate: horizon must be > 0");
  const double ratio = horizon / dt;
  if (std::abs(ratio - std::round(ratio)) > 1e-9 * std::max(1.0, ratio))
    throw ParameterError("simulate: dt must divide the horizon");
  if (steps() < 1) throw ParameterError("simulate: at least one time step is required");
  if (replicates < 2) throw ParameterError("simulate: replicates must be >= 2");
  for (std::size_t s : record_steps)
    if (s > steps()) throw ParameterError("simulate: record step beyond the horizon");
  eval.validate();
  if (params.u0.kind != InitialKind::Flat) {
    const double need = params.u0.support_radius() + resolved_theta_max() * horizon +
                        4.0 * kernel_width(params, horizon);
    if (need > grid.half_extent()) {
      std::ostringstream msg;
      msg << "simulate: boundary clearance fails: support + theta_max*T + 4 widths = " << need
          << " exceeds half-extent " << grid.half_extent();
      throw ParameterError(msg.str());
    }
  }
  if (resolved_sampling() == KernelSampling::Pointwise && params.dim != 1)
    throw ParameterError("simulate: pointwise kernel sampling needs d = 1 (G_t is unbounded at 0 for d >= 2)");
  if (resolved_sampling() == KernelSampling::Pointwise && coupling == NoiseCoupling::CellIntegrated)
    throw ParameterError("simulate: cell-integrated coupling needs spectral kernel sampling");
  const SimCost cost = estimate_cost(*this);
  if (cost.kernel_cache_bytes > cache_limit_bytes) {
    std::ostringstream msg;
    msg << "simulate: kernel cache needs " << cost.kernel_cache_bytes << " bytes, limit "
        << cache_limit_bytes;
    throw ParameterError(msg.str());
  }
}

std::vector<std::string> SimConfig::warnings() const {
  std::vector<std::string> out;
  if (params.beta >= 0.5 && params.beta < 1.0)
    out.push_back("model validity: beta >= 1/2; the fractional integral of the noise term is "
                  "well defined only for beta < 1/2");
  return out;
}

SimCost estimate_cost(const SimConfig& c) {
  SimCost k;
  k.steps = c.steps();
  k.sites = c.grid.size();
  k.spectral_size = spectral_size(c.grid);
  const std::size_t slices = (k.steps + 1) * (c.coupling == NoiseCoupling::CellIntegrated ? 2 : 1);
  k.kernel_cache_bytes = slices * k.spectral_size * sizeof(double) +
                         k.spectral_size * sizeof(std::complex<double>);
  k.history_bytes_per_worker = (k.steps + 1) * k.spectral_size * sizeof(std::complex<double>) +
                               c.resolved_record_steps().size() * k.sites * sizeof(double);
  k.ffts_per_replicate = 2 * k.steps;
  k.history_madds_per_replicate = k.spectral_size * k.steps * (k.steps + 1) / 2;
  return k;
}

void fill_noise(const SimConfig& c, std::size_t step, std::size_t replicate, std::span<double> out) {
  const double sd = std::sqrt(c.dt * c.grid.cell_volume());
  const PhiloxKey key{static_cast<std::uint32_t>(c.base_seed),
                      static_cast<std::uint32_t>(c.base_seed >> 32)};
  const std::uint32_t rep_lo = static_cast<std::uint32_t>(replicate);
  const std::uint32_t rep_hi = static_cast<std::uint32_t>(static_cast<std::uint64_t>(replicate) >> 32);
  for (std::size_t i = 0; i < out.size(); i += 2) {
    const PhiloxCounter ctr{static_cast<std::uint32_t>(i / 2), static_cast<std::uint32_t>(step), rep_lo,
                            rep_hi};
    const auto z = normal_pair(ctr, key);
    out[i] = sd * z[0];
    if (i + 1 < out.size()) out[i + 1] = sd * z[1];
  }
}

NoiseSlab gen_noise(const SimConfig& c, std::size_t step, std::size_t replicate) {
  c.grid.validate();
  if (!(c.dt > 0.0)) throw ParameterError("gen_noise: dt must be > 0");
  NoiseSlab s;
  s.step = step;
  s.replicate = replicate;
  s.variance = c.dt * c.grid.cell_volume();
  s.values.resize(c.grid.size());
  fill_noise(c, step, replicate, s.values);
  return s;
}

SimKernelCache build_kernel_cache(const SimConfig& c) {
  c.validate();
  const std::size_t nt = c.steps();
  SimKernelCache cache;
  cache.grid = c.grid;
  cache.point.resize(nt + 1);
  const bool cell = c.coupling == NoiseCoupling::CellIntegrated;
  if (cell) cache.noise.resize(nt + 1);
  const unsigned threads = resolve_threads(c.threads);
  parallel_for(nt + 1, threads, [&](std::size_t j) {
    if (j == 0) {
      cache.point[0].assign(spectral_size(c.grid), 1.0);
      return;
    }
    const double t = static_cast<double>(j) * c.dt;
    if (c.resolved_sampling() == KernelSampling::Spectral) {
      cache.point[j] = kernel_spectrum(c.params, t, c.grid, c.eval);
      return;
    }
    FourierOptions fo;
    fo.view = FourierView::Pointwise;
    fo.eval = c.eval;
    const KernelTable table = kernel_grid_fourier(c.params, t, c.grid, fo);
    detail::RealFft fft(c.grid);
    std::vector<std::complex<double>> spec(fft.spectral_size());
    fft.forward(table.values.data(), spec.data());
    const auto index = detail::spectral_index(c.grid);
    const double vol = c.grid.cell_volume();
    std::vector<double>& out = cache.point[j];
    out.resize(spec.size());
    // Samples are centred at index n/2; the parity factor moves them to lag 0.
    for (std::size_t i = 0; i < spec.size(); ++i) out[i] = spec[i].real() * index.parity[i] * vol;
  });
  if (cell) {
    const auto index = detail::spectral_index(c.grid);
    const double h = std::numbers::pi / c.grid.half_extent();
    parallel_for(nt + 1, threads, [&](std::size_t j) {
      std::vector<double> by_key(static_cast<std::size_t>(index.max_norm_sq) + 1,
                                 std::numeric_limits<double>::quiet_NaN());
      std::vector<double>& out = cache.noise[j];
      out.assign(index.norm_sq.size(), 1.0);
      if (j == 0) return;
      for (std::size_t i = 0; i < out.size(); ++i) {
        double& v = by_key[static_cast<std::size_t>(index.norm_sq[i])];
        if (std::isnan(v)) {
          const double a = c.params.nu * h * h * static_cast<double>(index.norm_sq[i]);
          v = cell_average(c.params, a, c.dt, j, c.eval);
        }
        out[i] = v;
      }
    });
  }
  const LatticeField u0 = sample_initial_datum(c.params, c.grid);
  detail::RealFft fft(c.grid);
  cache.u0_hat.resize(fft.spectral_size());
  fft.forward(u0.values.data(), cache.u0_hat.data());
  return cache;
}

ReplicateHistory solve_replicate(const SimConfig& c, std::size_t replicate) {
  return solve_replicate(c, replicate, build_kernel_cache(c));
}

ReplicateHistory solve_replicate(const SimConfig& c, std::size_t replicate, const SimKernelCache& cache) {
  if (!(cache.grid == c.grid)) throw ParameterError("solve_replicate: kernel cache built for another lattice");
  const std::size_t nt = c.steps();
  const std::size_t ns = c.grid.size();
  const std::vector<std::size_t> rec = c.resolved_record_steps();
  const bool noisy = !c.sigma_is_zero();
  const auto& noise_mult = cache.noise.empty() ? cache.point : cache.noise;
  const double inv_n = 1.0 / static_cast<double>(ns);
  const double inv_vol = 1.0 / c.grid.cell_volume();

  detail::RealFft fft(c.grid);
  const std::size_t nk = fft.spectral_size();
  // history[m] = FFT(sigma(u_m) dW_m) / dx^d.
  std::vector<std::complex<double>> history(noisy ? nt * nk : 0);
  std::vector<std::complex<double>> acc(nk);
  std::vector<double> u(ns), work(ns), dw(ns);

  ReplicateHistory out;
  out.steps = rec;
  for (std::size_t s : rec) out.times.push_back(static_cast<double>(s) * c.dt);
  out.fields.reserve(rec.size());
  std::size_t next_rec = 0;

  for (std::size_t n = 0; n <= nt; ++n) {
    const std::vector<double>& g = cache.point[n];
    for (std::size_t k = 0; k < nk; ++k) acc[k] = cache.u0_hat[k] * g[k];
    if (noisy) {
      for (std::size_t m = 0; m < n; ++m) {
        const std::vector<double>& gl = noise_mult[n - m];
        const std::complex<double>* f = history.data() + m * nk;
        for (std::size_t k = 0; k < nk; ++k) acc[k] += f[k] * gl[k];
      }
    }
    fft.inverse(acc.data(), u.data());
    for (std::size_t i = 0; i < ns; ++i) {
      u[i] *= inv_n;
      if (!(std::abs(u[i]) < kBlowUpMagnitude)) {
        std::ostringstream msg;
        msg << "field blow-up at t = " << static_cast<double>(n) * c.dt << " in replicate " << replicate;
        throw BlowUpError(msg.str(), static_cast<double>(n) * c.dt, replicate);
      }
    }
    if (next_rec < rec.size() && rec[next_rec] == n) {
      out.fields.push_back(u);
      ++next_rec;
    }
    if (noisy && n < nt) {
      fill_noise(c, n, replicate, dw);
      for (std::size_t i = 0; i < ns; ++i) work[i] = c.params.sigma(u[i]) * dw[i] * inv_vol;
      fft.forward(work.data(), history.data() + n * nk);
    }
  }
  return out;
}

MomentField run_replicates(const SimConfig& c) {
  c.validate();
  const SimKernelCache cache = build_kernel_cache(c);
  const std::vector<std::size_t> rec = c.resolved_record_steps();
  const std::size_t ns = c.grid.size();
  const std::size_t nr = rec.size();
  const unsigned threads = resolve_threads(c.threads);

  MomentField mf;
  mf.grid = c.grid;
  mf.steps = rec;
  for (std::size_t s : rec) mf.times.push_back(static_cast<double>(s) * c.dt);
  mf.requested_replicates = c.replicates;
  mf.base_seed = c.base_seed;
  mf.warnings = c.warnings();

  Welford field(nr * ns);
  Welford site(nr);
  std::vector<double> sq(nr * ns), avg(nr);
  bool aborted = false;

  for (std::size_t start = 0; start < c.replicates && !aborted; start += kBlock) {
    const std::size_t count = std::min(kBlock, c.replicates - start);
    std::vector<std::optional<ReplicateHistory>> block(count);
    std::vector<std::string> failures(count);
    parallel_for(count, threads, [&](std::size_t i) {
      try {
        block[i] = solve_replicate(c, start + i, cache);
      } catch (const BlowUpError& e) {
        failures[i] = e.what();
      }
    });
    for (std::size_t i = 0; i < count; ++i) {
      if (!block[i]) {
        ++mf.blowups;
        mf.blown_replicates.push_back(start + i);
        if (mf.blowup_message.empty()) mf.blowup_message = failures[i];
        if (c.blowup == BlowUpPolicy::Abort) {
          aborted = true;
          break;
        }
        continue;
      }
      const ReplicateHistory& h = *block[i];
      for (std::size_t r = 0; r < nr; ++r) {
        double total = 0.0;
        for (std::size_t x = 0; x < ns; ++x) {
          const double v = h.fields[r][x] * h.fields[r][x];
          sq[r * ns + x] = v;
          total += v;
        }
        avg[r] = total / static_cast<double>(ns);
      }
      field.add(sq);
      site.add(avg);
      mf.replicate_site_mean.insert(mf.replicate_site_mean.end(), avg.begin(), avg.end());
    }
  }
  mf.replicates = field.count;
  mf.usable = !aborted;
  mf.std_err = field.std_err();
  mf.site_mean_err = site.std_err();
  mf.mean_sq = std::move(field.mean);
  mf.site_mean = std::move(site.mean);
  if (mf.blowups > 0)
    mf.warnings.push_back(std::to_string(mf.blowups) + " replicate(s) blew up");
  return mf;
}

void MomentField::validate() const {
  grid.validate();
  const std::size_t nr = times.size();
  if (steps.size() != nr && !steps.empty()) throw Error("MomentField: steps and times differ in length");
  if (mean_sq.size() != nr * grid.size() || std_err.size() != mean_sq.size())
    throw Error("MomentField: value arrays do not match times x sites");
  for (std::size_t r = 1; r < nr; ++r)
    if (!(times[r] > times[r - 1])) throw Error("MomentField: times must be strictly increasing");
  for (std::size_t i = 0; i < mean_sq.size(); ++i) {
    if (!std::isfinite(mean_sq[i]) || mean_sq[i] < 0.0)
      throw Error("MomentField: mean_sq must be finite and >= 0");
    if (!std::isfinite(std_err[i]) || std_err[i] < 0.0)
      throw Error("MomentField: std_err must be finite and >= 0");
  }
}

GrowthEstimate fit_log_slope(std::span<const double> t, std::span<const double> m,
                             std::span<const double> se) {
  const std::size_t n = t.size();
  if (m.size() != n || se.size() != n) throw EstimationError("fit_log_slope: length mismatch");
  if (n < 4) throw EstimationError("fit_log_slope: at least 4 times are required");
  double tbar = 0.0, ybar = 0.0;
  std::vector<double> y(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!(m[i] > 0.0) || !std::isfinite(m[i]))
      throw EstimationError("fit_log_slope: nonpositive or non-finite moment in the window");
    y[i] = std::log(m[i]);
    tbar += t[i];
    ybar += y[i];
  }
  tbar /= static_cast<double>(n);
  ybar /= static_cast<double>(n);
  double sxx = 0.0, sxy = 0.0, var = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dt = t[i] - tbar;
    const double s = se[i] / m[i];
    sxx += dt * dt;
    sxy += dt * (y[i] - ybar);
    var += dt * dt * s * s;
  }
  if (!(sxx > 0.0)) throw EstimationError("fit_log_slope: times must not all coincide");
  GrowthEstimate g;
  g.rate = sxy / sxx;
  g.std_error = std::sqrt(var) / sxx;
  g.intercept = ybar - g.rate * tbar;
  g.n_times = n;
  return g;
}

namespace {

GrowthEstimate windowed_fit(const MomentField& mf, const TimeWindow& w,
                            const std::function<double(std::size_t)>& value,
                            const std::function<double(std::size_t)>& error) {
  std::vector<double> t, m, se;
  for (std::size_t r = 0; r < mf.times.size(); ++r) {
    if (mf.times[r] < w.t_min || mf.times[r] > w.t_max) continue;
    t.push_back(mf.times[r]);
    m.push_back(value(r));
    se.push_back(error(r));
  }
  return fit_log_slope(t, m, se);
}

}  // namespace

GrowthEstimate estimate_growth(const MomentField& mf, std::size_t site, const TimeWindow& w) {
  if (site >= mf.sites()) throw ParameterError("estimate_growth: site index out of range");
  return windowed_fit(mf, w, [&](std::size_t r) { return mf.at(r, site); },
                      [&](std::size_t r) { return mf.err(r, site); });
}

GrowthEstimate estimate_growth_site_mean(const MomentField& mf, const TimeWindow& w) {
  if (mf.site_mean.size() != mf.times.size())
    throw EstimationError("estimate_growth_site_mean: no site-averaged series in this MomentField");
  GrowthEstimate g = windowed_fit(mf, w, [&](std::size_t r) { return mf.site_mean[r]; },
                                  [&](std::size_t r) { return mf.site_mean_err[r]; });
  const std::size_t nr = mf.times.size();
  const std::size_t reps = mf.replicate_site_mean.size() / std::max<std::size_t>(nr, 1);
  if (reps < 2 || reps * nr != mf.replicate_site_mean.size()) return g;
  // slope = sum_i w_i log m_i, linearized: per-replicate score sum_i w_i Y_ki / m_i.
  std::vector<std::size_t> idx;
  double tbar = 0.0;
  for (std::size_t r = 0; r < nr; ++r)
    if (mf.times[r] >= w.t_min && mf.times[r] <= w.t_max) {
      idx.push_back(r);
      tbar += mf.times[r];
    }
  tbar /= static_cast<double>(idx.size());
  double sxx = 0.0;
  for (std::size_t r : idx) sxx += (mf.times[r] - tbar) * (mf.times[r] - tbar);
  double mean = 0.0, m2 = 0.0;
  for (std::size_t k = 0; k < reps; ++k) {
    double score = 0.0;
    for (std::size_t r : idx)
      score += (mf.times[r] - tbar) / sxx * mf.replicate_site_mean[k * nr + r] / mf.site_mean[r];
    const double d = score - mean;
    mean += d / static_cast<double>(k + 1);
    m2 += d * (score - mean);
  }
  g.std_error = std::sqrt(m2 / static_cast<double>(reps - 1) / static_cast<double>(reps));
  g.covariance_aware = true;
  return g;
}

}  // namespace fracfront
