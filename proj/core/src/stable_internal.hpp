#pragma once

// Shared pieces of the one-sided stable density used by specfun and kernel.

#include <cmath>

namespace fracfront::detail {

// The convergent large-argument series is used once w^(-beta) drops below this.
constexpr double kStableSeriesRatio = 0.2;

inline double stable_series_start(double beta) {
  return std::pow(1.0 / kStableSeriesRatio, 1.0 / beta);
}

// int_W^inf w^p g_beta(w) dw from term-wise integration of the large-w series; p < beta.
double stable_tail_moment(double beta, double p, double W);

}  // namespace fracfront::detail
