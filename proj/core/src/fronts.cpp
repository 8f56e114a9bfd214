#include <algorithm>
#include <cmath>
#include <sstream>

#include "fracfront/error.hpp"
#include "fracfront/fronts.hpp"

namespace fracfront {

std::vector<double> default_theta_grid(double theta_l_bound, std::size_t points) {
  if (!(theta_l_bound > 0.0) || !std::isfinite(theta_l_bound))
    throw ParameterError("default_theta_grid: bound must be positive and finite");
  if (points < 2) throw ParameterError("default_theta_grid: at least 2 points");
  std::vector<double> out(points);
  for (std::size_t i = 0; i < points; ++i)
    out[i] = 2.0 * theta_l_bound * static_cast<double>(i) / static_cast<double>(points - 1);
  return out;
}

FrontProfile front_profile(const MomentField& mf, std::span<const double> theta_grid) {
  mf.validate();
  std::vector<double> thetas(theta_grid.begin(), theta_grid.end());
  for (double th : thetas)
    if (!(th >= 0.0) || !std::isfinite(th)) throw ParameterError("front_profile: theta must be finite and >= 0");
  std::sort(thetas.begin(), thetas.end());
  thetas.erase(std::unique(thetas.begin(), thetas.end()), thetas.end());

  std::vector<std::size_t> positive;
  for (std::size_t r = 0; r < mf.times.size(); ++r)
    if (mf.times[r] > 0.0) positive.push_back(r);
  if (positive.size() < 4) throw EstimationError("front_profile: at least 4 recorded times t > 0 are required");
  // Latest half, at least 4 points.
  const std::size_t keep = std::max<std::size_t>(4, positive.size() - positive.size() / 2);
  const std::vector<std::size_t> recs(positive.end() - keep, positive.end());

  const std::size_t ns = mf.sites();
  std::vector<double> radius(ns);
  for (std::size_t x = 0; x < ns; ++x) radius[x] = mf.grid.radius(x);

  FrontProfile fp;
  for (std::size_t r : recs) fp.times_used.push_back(mf.times[r]);
  for (double th : thetas) {
    std::vector<double> t, m, se;
    std::size_t exterior_last = 0;
    bool ok = true;
    for (std::size_t r : recs) {
      const double cut = th * mf.times[r];
      double best = -1.0, best_err = 0.0;
      std::size_t count = 0;
      for (std::size_t x = 0; x < ns; ++x) {
        if (!(radius[x] > cut)) continue;
        ++count;
        if (mf.at(r, x) > best) {
          best = mf.at(r, x);
          best_err = mf.err(r, x);
        }
      }
      if (count == 0) {
        std::ostringstream msg;
        msg << "theta = " << th << " dropped: exterior set empty at t = " << mf.times[r];
        fp.notes.push_back(msg.str());
        ok = false;
        break;
      }
      if (!(best > 0.0)) {
        std::ostringstream msg;
        msg << "theta = " << th << " dropped: exterior supremum is 0 at t = " << mf.times[r];
        fp.notes.push_back(msg.str());
        ok = false;
        break;
      }
      exterior_last = count;
      t.push_back(mf.times[r]);
      m.push_back(best);
      se.push_back(best_err);
    }
    if (!ok) continue;
    const GrowthEstimate g = fit_log_slope(t, m, se);
    fp.theta_grid.push_back(th);
    fp.l_hat.push_back(g.rate);
    fp.l_stderr.push_back(g.std_error);
    fp.n_sites.push_back(exterior_last);
    fp.n_times.push_back(g.n_times);
  }
  return fp;
}

FrontBracket bracket_fronts(const FrontProfile& fp, const BoundsReport& bounds) {
  return bracket_fronts(fp, bounds.theta_l_bound);
}

FrontBracket bracket_fronts(const FrontProfile& fp, std::optional<double> theta_l_bound) {
  FrontBracket b;
  b.theta_l_bound = theta_l_bound;
  for (std::size_t i = 0; i < fp.size(); ++i) {
    const double th = fp.theta_grid[i];
    const double l = fp.l_hat[i];
    const double se = fp.l_stderr[i];
    if (l > b.sigmas * se) b.theta_minus = th;
    if (l < -b.sigmas * se && !b.theta_plus) b.theta_plus = th;
    if (theta_l_bound && th > 1.5 * *theta_l_bound && l > 3.0 * se) {
      b.violation = true;
      b.violating_thetas.push_back(th);
    }
  }
  if (b.theta_plus && theta_l_bound) b.consistent = *b.theta_plus <= *theta_l_bound;
  if (!b.theta_plus && theta_l_bound) b.consistent = std::nullopt;
  if (!b.theta_minus || !b.theta_plus) {
    b.inconclusive = true;
    b.recommendation = !b.theta_minus && !b.theta_plus
        ? "no sign information at 2 sigma: increase replicates or the horizon"
        : (!b.theta_minus ? "no significant positivity: increase replicates or the horizon, or the noise strength"
                          : "no significant negativity: extend the theta grid or the horizon");
  }
  return b;
}

SpatialDecay estimate_spatial_decay(const MomentField& mf, std::size_t record, double r_min,
                                    double floor_rel) {
  mf.validate();
  if (record >= mf.times.size()) throw ParameterError("estimate_spatial_decay: record out of range");
  if (!(floor_rel > 0.0 && floor_rel < 1.0)) throw ParameterError("estimate_spatial_decay: floor_rel must lie in (0, 1)");
  double peak = 0.0;
  for (std::size_t x = 0; x < mf.sites(); ++x) peak = std::max(peak, mf.at(record, x));
  std::vector<double> r, m, se;
  for (std::size_t x = 0; x < mf.sites(); ++x) {
    const double rad = mf.grid.radius(x);
    if (!(rad > r_min) || !(mf.at(record, x) >= floor_rel * peak)) continue;
    r.push_back(rad);
    m.push_back(mf.at(record, x));
    se.push_back(mf.err(record, x));
  }
  if (r.size() < 4) throw EstimationError("estimate_spatial_decay: fewer than 4 sites above the floor");
  const GrowthEstimate g = fit_log_slope(r, m, se);
  SpatialDecay out;
  out.slope = g.rate;
  out.std_error = g.std_error;
  out.r_min = *std::min_element(r.begin(), r.end());
  out.r_max = *std::max_element(r.begin(), r.end());
  out.n_sites = r.size();
  return out;
}

}  // namespace fracfront
