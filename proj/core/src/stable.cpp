#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include <boost/math/special_functions/sin_pi.hpp>

#include "fracfront/error.hpp"
#include "fracfront/specfun.hpp"
#include "quadrature.hpp"
#include "stable_internal.hpp"

namespace fracfront {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kNegInf = -std::numeric_limits<double>::infinity();

void check_beta(double beta) {
  if (!(beta > 0.0 && beta < 1.0)) throw ParameterError("stable density: beta must lie in (0, 1)");
}

// log of g_beta(w) = (1/pi) sum_{k>=1} (-1)^(k+1) Gamma(beta k + 1)/k! sin(pi beta k) w^(-beta k - 1)
double log_series(double beta, double w, const EvalOptions& opts) {
  const double lw = std::log(w);
  double sum = 0.0;
  for (std::size_t k = 1; k < opts.max_terms; ++k) {
    const double kd = static_cast<double>(k);
    const double mag = std::exp(std::lgamma(beta * kd + 1.0) - std::lgamma(kd + 1.0) -
                                beta * kd * lw);
    const double term = ((k % 2 == 1) ? 1.0 : -1.0) * mag * boost::math::sin_pi(beta * kd);
    sum += term;
    if (k >= 2 && mag <= 0.25 * std::numeric_limits<double>::epsilon() * std::abs(sum))
      return std::log(sum / kPi) - lw;
  }
  throw EvaluationFailure("stable density series did not converge", sum / (kPi * w),
                          opts.max_terms);
}

// log(sin(x) / x), by its Taylor series near 0 where the quotient rounds to 1.
double log_sinc(double x) {
  if (std::abs(x) < 0.1) {
    const double x2 = x * x;
    return -x2 * (1.0 / 6.0 + x2 * (1.0 / 180.0 + x2 * (1.0 / 2835.0 + x2 * (1.0 / 37800.0 + x2 / 467775.0))));
  }
  return std::log(std::sin(x) / x);
}

// Zolotarev single-integral form:
//   g(w) = beta/((1-beta) pi) w^(-1/(1-beta)) int_0^pi A(phi) exp(-c A(phi)) dphi,
//   c = w^(-beta/(1-beta)),
//   A(phi) = (sin(beta phi)^beta sin((1-beta) phi)^(1-beta) / sin(phi))^(1/(1-beta)).
// The integrand is evaluated as A0 e^D exp(-c A0 expm1(D)) with D = log(A/A0), so the
// factor exp(-c A0) is carried in log scale even when c A0 is huge.
double log_zolotarev(double beta, double w, const EvalOptions& opts) {
  const double q = 1.0 - beta;
  auto delta = [beta, q](double phi) {
    return (beta * log_sinc(beta * phi) + q * log_sinc(q * phi) - log_sinc(phi)) / q;
  };
  const double log_a0 = (beta * std::log(beta) + q * std::log(q)) / q;
  const double log_c = -beta / q * std::log(w);
  const double ca0 = std::exp(log_c + log_a0);
  auto excess = [&](double phi) { return ca0 * std::expm1(delta(phi)); };

  // phi where c (A(phi) - A0) = level; A increases from A0 at 0 to infinity at pi.
  auto solve = [&](double level) {
    double lo = 0.0, hi = kPi;
    for (int i = 0; i < 60; ++i) {
      const double mid = 0.5 * (lo + hi);
      if (excess(mid) < level) lo = mid; else hi = mid;
    }
    return 0.5 * (lo + hi);
  };
  const double base = std::max(1.0, ca0) - ca0;
  const double phi_peak = solve(std::max(1.0 - ca0, 1.0));
  const double phi_mid = solve(base + 8.0);
  const double phi_cut = solve(base + 45.0);

  auto f = [&](double phi) {
    const double d = delta(phi);
    return std::exp(log_a0 + d - ca0 * std::expm1(d));
  };
  auto res = detail::integrate(f, detail::make_breaks(0.0, phi_cut, {phi_peak, phi_mid}),
                               opts.rel_tolerance, 0.0, opts.quadrature_nodes);
  if (!res.converged) {
    std::ostringstream msg;
    msg << "stable density quadrature did not converge for beta=" << beta << ", w=" << w;
    throw EvaluationFailure(msg.str(), res.value, res.panels);
  }
  return std::log(beta / (q * kPi)) - std::log(w) / q - ca0 + std::log(res.value);
}

}  // namespace

namespace detail {

double stable_tail_moment(double beta, double p, double W) {
  const double lw = std::log(W);
  double sum = 0.0;
  for (int k = 1; k < 2000; ++k) {
    const double kd = k;
    const double e = beta * kd - p;
    const double mag = std::exp(std::lgamma(beta * kd + 1.0) - std::lgamma(kd + 1.0) - e * lw) / e;
    const double term = ((k % 2 == 1) ? 1.0 : -1.0) * mag * boost::math::sin_pi(beta * kd);
    sum += term;
    if (k >= 2 && mag <= 0.25 * std::numeric_limits<double>::epsilon() * std::abs(sum)) break;
  }
  return sum / kPi;
}

}  // namespace detail

double log_stable_pdf(double beta, double w, const EvalOptions& opts) {
  check_beta(beta);
  opts.validate();
  if (std::isnan(w)) throw ParameterError("stable density: w is NaN");
  if (w <= 0.0) return kNegInf;
  if (std::isinf(w)) return kNegInf;
  if (std::pow(w, -beta) <= detail::kStableSeriesRatio) return log_series(beta, w, opts);
  return log_zolotarev(beta, w, opts);
}

double stable_pdf(double beta, double w, const EvalOptions& opts) {
  return std::exp(log_stable_pdf(beta, w, opts));
}

double inv_subordinator_pdf(double beta, double t, double s, const EvalOptions& opts) {
  check_beta(beta);
  if (!(t > 0.0)) throw ParameterError("inv_subordinator_pdf: t must be > 0");
  if (std::isnan(s)) throw ParameterError("inv_subordinator_pdf: s is NaN");
  if (s <= 0.0) return 0.0;
  const double ls = std::log(s);
  const double w = std::exp(std::log(t) - ls / beta);
  const double lg = log_stable_pdf(beta, w, opts);
  return std::exp(std::log(t / beta) - (1.0 + 1.0 / beta) * ls + lg);
}

}  // namespace fracfront
