#include <cmath>
#include <sstream>

#include <boost/math/special_functions/gamma.hpp>

#include "fracfront/error.hpp"
#include "fracfront/specfun.hpp"
#include "quadrature.hpp"
#include "stable_internal.hpp"

namespace fracfront {

double inv_subordinator_moment(double beta, double k, double t) {
  if (!(beta > 0.0 && beta <= 1.0)) throw ParameterError("inv_subordinator_moment: beta must lie in (0, 1]");
  if (!(k >= 0.0)) throw ParameterError("inv_subordinator_moment: k must be >= 0");
  if (!(t >= 0.0)) throw ParameterError("inv_subordinator_moment: t must be >= 0");
  if (k == 0.0) return 1.0;
  if (t == 0.0) return 0.0;
  return std::exp(std::lgamma(1.0 + k) - std::lgamma(1.0 + beta * k) + beta * k * std::log(t));
}

double stable_moment(double beta, double p, const EvalOptions& opts) {
  if (!(beta > 0.0 && beta < 1.0)) throw ParameterError("stable_moment: beta must lie in (0, 1)");
  if (!(p < beta)) throw ParameterError("stable_moment: exponent p must be < beta");
  opts.validate();
  // Integrate w^p g(w) in y = log w up to W, then add the series tail beyond W.
  const double W = detail::stable_series_start(beta);
  const double yw = std::log(W);
  auto h = [&](double y) { return (1.0 + p) * y + log_stable_pdf(beta, std::exp(y), opts); };

  // Locate the bulk of the log-integrand on a coarse scan.
  constexpr double kStep = 0.5;
  constexpr double kDrop = 50.0;
  double ypk = std::min(0.0, yw);
  double hpk = h(ypk);
  double y = ypk;
  for (;;) {
    y -= kStep;
    const double v = h(y);
    if (v > hpk) { hpk = v; ypk = y; }
    if (v < hpk - kDrop) break;
    if (y < -2000.0) throw EvaluationFailure("stable_moment: left tail not found", 0.0, 0);
  }
  const double ylo = y;
  for (double z = ypk + kStep; z < yw; z += kStep) {
    const double v = h(z);
    if (v > hpk) { hpk = v; ypk = z; }
  }
  auto f = [&](double yy) { return std::exp(h(yy) - hpk); };
  std::vector<double> interior{ypk - 2.0, ypk, ypk + 2.0};
  auto res = detail::integrate(f, detail::make_breaks(ylo, yw, interior), opts.rel_tolerance,
                               0.0, opts.quadrature_nodes);
  const double body = res.value * std::exp(hpk);
  if (!res.converged) {
    std::ostringstream msg;
    msg << "stable_moment quadrature did not converge (beta=" << beta << ", p=" << p << ")";
    throw EvaluationFailure(msg.str(), body, res.panels);
  }
  return body + detail::stable_tail_moment(beta, p, W);
}

double a_coeff(double beta, int d, int k, const EvalOptions& opts) {
  if (d < 1 || d > 3) throw ParameterError("a_coeff: d must be 1, 2 or 3");
  if (k < 0) throw ParameterError("a_coeff: k must be >= 0");
  if (!(beta > 0.0 && beta < 1.0)) throw ParameterError("a_coeff: beta must lie in (0, 1)");
  const double r = static_cast<double>(k) - d / 4.0;
  return stable_moment(beta, -beta * r, opts);
}

double weighted_power_integral(double exponent, double rate, double t) {
  if (!(exponent > -1.0))
    throw ParameterError("weighted_power_integral: exponent must be > -1 for integrability at 0");
  if (!(rate > 0.0)) throw ParameterError("weighted_power_integral: rate must be > 0");
  if (!(t > 0.0)) throw ParameterError("weighted_power_integral: t must be > 0");
  const double a = 1.0 + exponent;
  return std::exp(-a * std::log(rate)) * boost::math::tgamma_lower(a, rate * t);
}

double b_coeff(double beta, int d, double gamma, double t, int k, int n) {
  if (!(beta > 0.0 && beta <= 1.0)) throw ParameterError("b_coeff: beta must lie in (0, 1]");
  if (d < 1 || d > 3) throw ParameterError("b_coeff: d must be 1, 2 or 3");
  if (k < 0 || n < 0) throw ParameterError("b_coeff: k and n must be >= 0");
  const double e = beta * (k + n - d / 2.0);
  if (!(e > -1.0)) {
    std::ostringstream msg;
    msg << "b_coeff: beta*(k+n-d/2) = " << e << " violates beta*(k+n-d/2) > -1";
    throw ParameterError(msg.str());
  }
  if (!(gamma > 0.0)) throw ParameterError("b_coeff: gamma must be > 0");
  if (!(t > 0.0)) throw ParameterError("b_coeff: t must be > 0");
  return weighted_power_integral(e, gamma, t);
}

double a_coeff_bound(double beta, int k) {
  if (!(beta > 0.0 && beta <= 1.0)) throw ParameterError("a_coeff_bound: beta must lie in (0, 1]");
  if (k < 1) throw ParameterError("a_coeff_bound: the bound is stated for k >= 1");
  return 3.0 * std::exp(std::lgamma(1.0 + k) - std::lgamma(1.0 + beta * k));
}

double b_coeff_diagonal_bound(double beta, int d, double gamma, int k) {
  if (!(gamma > 0.0)) throw ParameterError("b_coeff_diagonal_bound: gamma must be > 0");
  const double e = beta * (2.0 * k - d / 2.0);
  if (!(e > -1.0)) throw ParameterError("b_coeff_diagonal_bound: beta*(2k-d/2) must be > -1");
  return std::exp(-(1.0 + e) * std::log(gamma) + std::lgamma(1.0 + e));
}

}  // namespace fracfront
