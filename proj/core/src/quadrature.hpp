#pragma once

// Globally adaptive Gauss-Kronrod (10/21) quadrature on finite intervals.
// Nodes and weights come from Boost.Math; the panel bisection strategy is local.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <queue>
#include <vector>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace fracfront::detail {

struct QuadResult {
  double value = 0.0;
  double error = 0.0;
  std::size_t panels = 0;
  bool converged = false;
};

struct Panel {
  double a, b, value, error;
  bool operator<(const Panel& o) const { return error < o.error; }
};

template <class F>
Panel gk21_panel(F& f, double a, double b) {
  using GK = boost::math::quadrature::gauss_kronrod<double, 21>;
  using G = boost::math::quadrature::gauss<double, 10>;
  const auto& x = GK::abscissa();
  const auto& wk = GK::weights();
  const auto& wg = G::weights();
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  double k = f(c) * wk[0];
  double g = 0.0;
  for (std::size_t i = 1; i < x.size(); ++i) {
    const double s = f(c + h * x[i]) + f(c - h * x[i]);
    k += s * wk[i];
    if (i % 2 == 1) g += s * wg[i / 2];
  }
  return Panel{a, b, k * h, std::abs((k - g) * h)};
}

// Integrate f over [breaks.front(), breaks.back()], starting from the panels given by
// consecutive breakpoints. Breakpoints must be sorted; duplicates are ignored.
template <class F>
QuadResult integrate(F&& f, const std::vector<double>& breaks, double rel_tol,
                     double abs_tol, std::size_t max_panels) {
  QuadResult out;
  std::priority_queue<Panel> queue;
  double value = 0.0;
  double error = 0.0;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    if (!(breaks[i + 1] > breaks[i])) continue;
    Panel p = gk21_panel(f, breaks[i], breaks[i + 1]);
    value += p.value;
    error += p.error;
    queue.push(p);
  }
  out.panels = queue.size();
  auto done = [&] { return error <= std::max(abs_tol, rel_tol * std::abs(value)); };
  while (!queue.empty() && !done() && out.panels < max_panels) {
    Panel worst = queue.top();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) break;
    queue.pop();
    Panel left = gk21_panel(f, worst.a, mid);
    Panel right = gk21_panel(f, mid, worst.b);
    value += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    queue.push(left);
    queue.push(right);
    ++out.panels;
  }
  // Re-sum to shed the drift of the running updates.
  value = 0.0;
  error = 0.0;
  while (!queue.empty()) {
    value += queue.top().value;
    error += queue.top().error;
    queue.pop();
  }
  out.value = value;
  out.error = error;
  out.converged = done();
  return out;
}

template <class F>
QuadResult integrate(F&& f, std::initializer_list<double> breaks, double rel_tol,
                     double abs_tol, std::size_t max_panels) {
  return integrate(std::forward<F>(f), std::vector<double>(breaks), rel_tol, abs_tol,
                   max_panels);
}

// Sorted, deduplicated breakpoints clipped to [lo, hi].
inline std::vector<double> make_breaks(double lo, double hi, std::vector<double> interior) {
  std::vector<double> out{lo};
  std::sort(interior.begin(), interior.end());
  for (double p : interior)
    if (p > out.back() && p < hi && std::isfinite(p)) out.push_back(p);
  out.push_back(hi);
  return out;
}

}  // namespace fracfront::detail
