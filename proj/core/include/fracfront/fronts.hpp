#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fracfront/bounds.hpp"
#include "fracfront/simulate.hpp"

namespace fracfront {

struct FrontProfile {
  std::vector<double> theta_grid;
  std::vector<double> l_hat;
  std::vector<double> l_stderr;
  // Exterior sites {|x| > theta t} at the latest recorded time.
  std::vector<std::size_t> n_sites;
  std::vector<std::size_t> n_times;
  // Recorded times entering every fit.
  std::vector<double> times_used;
  std::optional<double> theta_l_bound;
  // Dropped theta values and why.
  std::vector<std::string> notes;

  std::size_t size() const { return theta_grid.size(); }
};

// l_hat(theta): slope of log sup_{|x| > theta t} E|u_t(x)|^2 over the latest half of the
// recorded times (t > 0). Theta values are sorted and deduplicated.
FrontProfile front_profile(const MomentField& moments, std::span<const double> theta_grid);

// 16 points from 0 to 2 * bound.
std::vector<double> default_theta_grid(double theta_l_bound, std::size_t points = 16);

struct FrontBracket {
  // Largest theta with l_hat > 0 and smallest with l_hat < 0, each at `sigmas` errors.
  std::optional<double> theta_minus;
  std::optional<double> theta_plus;
  std::optional<double> theta_l_bound;
  // theta_plus <= theta_l_bound, when both exist.
  std::optional<bool> consistent;
  // Some theta > 1.5 * bound has l_hat > 0 at 3 errors.
  bool violation = false;
  std::vector<double> violating_thetas;
  bool inconclusive = false;
  double sigmas = 2.0;
  std::string recommendation;
};

FrontBracket bracket_fronts(const FrontProfile& profile, const BoundsReport& bounds);

struct SpatialDecay {
  // Least-squares slope of log E|u_t(x)|^2 against |x| (1/length); negative for decay.
  double slope = 0.0;
  double std_error = 0.0;
  double r_min = 0.0;
  double r_max = 0.0;
  std::size_t n_sites = 0;
};

// Fit over sites with |x| > r_min whose mean_sq is at least floor_rel times the peak of
// that record; the floor keeps round-off out of the fit.
SpatialDecay estimate_spatial_decay(const MomentField& moments, std::size_t record, double r_min,
                                    double floor_rel = 1e-12);
FrontBracket bracket_fronts(const FrontProfile& profile, std::optional<double> theta_l_bound);

}  // namespace fracfront
