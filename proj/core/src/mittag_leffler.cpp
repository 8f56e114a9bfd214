#include <cmath>
#include <numbers>
#include <sstream>

#include <boost/math/special_functions/gamma.hpp>
#include <boost/math/special_functions/sin_pi.hpp>

#include "fracfront/error.hpp"
#include "fracfront/specfun.hpp"
#include "quadrature.hpp"

namespace fracfront {
namespace {

constexpr double kPi = std::numbers::pi;

// Below this value of x^(1/beta) the alternating series is used for E_beta(-x);
// above kAsymptoticStart the asymptotic expansion is accurate to double precision.
constexpr double kSeriesLimit = 2.0;
constexpr double kAsymptoticStart = 40.0;

double series(double beta, double z, const EvalOptions& opts) {
  const double lz = std::log(std::abs(z));
  const bool alternating = z < 0.0;
  // Terms grow until k ~ |z|^(1/beta); stop only after the peak.
  const double peak = std::pow(std::abs(z), 1.0 / beta);
  double sum = 1.0;
  for (std::size_t k = 1; k < opts.max_terms; ++k) {
    const double kd = static_cast<double>(k);
    const double mag = std::exp(kd * lz - std::lgamma(1.0 + beta * kd));
    const double term = (alternating && (k % 2 == 1)) ? -mag : mag;
    sum += term;
    if (kd > peak && mag <= 0.25 * std::numeric_limits<double>::epsilon() * std::abs(sum))
      return sum;
  }
  std::ostringstream msg;
  msg << "Mittag-Leffler series did not converge for beta=" << beta << ", z=" << z;
  throw EvaluationFailure(msg.str(), sum, opts.max_terms);
}

double asymptotic(double beta, double x, const EvalOptions& opts) {
  // E_beta(-x) ~ sum_{k>=1} (-1)^(k+1) x^(-k) / Gamma(1 - beta k), truncated at the
  // smallest term.
  double sum = 0.0;
  double prev = std::numeric_limits<double>::infinity();
  for (std::size_t k = 1; k < opts.max_terms; ++k) {
    const double kd = static_cast<double>(k);
    const double y = beta * kd;
    const double mag = std::exp(std::lgamma(y) - kd * std::log(x)) / kPi;
    if (mag > prev && mag < 1e-3 * std::abs(sum)) break;
    const double s = boost::math::sin_pi(y);
    const double term = ((k % 2 == 1) ? 1.0 : -1.0) * mag * s;
    sum += term;
    if (mag <= 0.25 * std::numeric_limits<double>::epsilon() * std::abs(sum)) return sum;
    prev = mag;
  }
  return sum;
}

// E_beta(-x) = sin(beta pi)/(beta pi) int_0^inf exp(-(v x)^(1/beta)) / (v^2 + 2 v cos(beta pi) + 1) dv
double integral(double beta, double x, const EvalOptions& opts) {
  const double cb = std::cos(beta * kPi);
  const double sb = std::sin(beta * kPi);
  const double vmax = std::pow(kAsymptoticStart + 5.0, beta) / x;
  auto f = [&](double v) {
    return std::exp(-std::pow(v * x, 1.0 / beta)) / (v * v + 2.0 * v * cb + 1.0);
  };
  std::vector<double> interior{1.0 / x, 1.0};
  if (cb < 0.0) {
    interior.push_back(-cb);
    interior.push_back(-cb - sb);
    interior.push_back(-cb + sb);
  }
  auto res = detail::integrate(f, detail::make_breaks(0.0, vmax, interior),
                               std::min(opts.rel_tolerance, 1e-13), opts.abs_tolerance,
                               opts.quadrature_nodes);
  const double value = sb / (beta * kPi) * res.value;
  if (!res.converged)
    throw EvaluationFailure("Mittag-Leffler integral did not converge", value, res.panels);
  return value;
}

}  // namespace

double mittag_leffler(double beta, double z, const EvalOptions& opts) {
  opts.validate();
  if (!(beta > 0.0 && beta <= 1.0)) throw ParameterError("mittag_leffler: beta must lie in (0, 1]");
  if (std::isnan(z)) throw ParameterError("mittag_leffler: z is NaN");
  if (z == 0.0) return 1.0;
  if (beta == 1.0) return std::exp(z);
  if (z > 0.0) return series(beta, z, opts);
  const double x = -z;
  if (std::isinf(x)) return 0.0;
  const double scale = std::pow(x, 1.0 / beta);
  if (scale <= kSeriesLimit) return series(beta, z, opts);
  if (scale >= kAsymptoticStart) return asymptotic(beta, x, opts);
  return integral(beta, x, opts);
}

}  // namespace fracfront
