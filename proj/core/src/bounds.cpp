#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "fracfront/bounds.hpp"
#include "fracfront/error.hpp"
#include "fracfront/kernel.hpp"
#include "fracfront/specfun.hpp"

namespace fracfront {
namespace {

constexpr double kPi = std::numbers::pi;

void require_beta_d(double beta, int d, const char* op) {
  if (!(beta * d < 2.0)) {
    std::ostringstream msg;
    msg << op << ": beta*d = " << beta * d << " must be < 2";
    throw HypothesisViolation(msg.str(), 2.0 - beta * d);
  }
}

double m_branch_a(double beta, int d, const EvalOptions& opts) {
  return a_coeff(beta, d, 0, opts) * std::sqrt(std::tgamma(1.0 - beta * d / 2.0));
}

double m_branch_b(double beta, int d) {
  return 3.0 * std::sqrt(beta * std::tgamma(2.0 * beta * (1.0 - d / 4.0))) /
         (std::pow(2.0, beta) * std::tgamma(1.0 + beta));
}

// a_0^d(1) = E(D_1^(d/4)) with D_1 = 1 when beta = 1.
double m_branch_a_any(double beta, int d, const EvalOptions& opts) {
  if (beta == 1.0) return std::sqrt(std::tgamma(1.0 - d / 2.0));
  return m_branch_a(beta, d, opts);
}

void check_beta_d_range(double beta, int d) {
  if (!(beta > 0.0 && beta <= 1.0)) throw ParameterError("beta must lie in (0, 1]");
  if (d < 1 || d > 3) throw ParameterError("d must be 1, 2 or 3");
}

}  // namespace

double const_M(double beta, int d, const EvalOptions& opts) {
  check_beta_d_range(beta, d);
  require_beta_d(beta, d, "const_M");
  return std::max(m_branch_a_any(beta, d, opts), m_branch_b(beta, d));
}

int const_M_branch(double beta, int d, const EvalOptions& opts) {
  check_beta_d_range(beta, d);
  require_beta_d(beta, d, "const_M");
  return m_branch_a_any(beta, d, opts) >= m_branch_b(beta, d) ? 0 : 1;
}

double young_margin(double c_norm, double gamma, const ModelParams& params) {
  return 1.0 - std::pow(2.0, params.beta - 1.0) * params.nu * c_norm * c_norm /
                   std::pow(gamma, params.beta);
}

double young_constant(double c_norm, double gamma, const ModelParams& params, const EvalOptions& opts) {
  params.validate();
  if (!(c_norm >= 0.0)) throw ParameterError("young_constant: c_norm must be >= 0");
  if (!(gamma > 0.0)) throw ParameterError("young_constant: gamma must be > 0");
  const double margin = young_margin(c_norm, gamma, params);
  if (!(margin > 0.0)) {
    std::ostringstream msg;
    msg << "young_constant: (gamma/2)^beta > nu c^2/2 fails (series ratio 1 - margin = " << 1.0 - margin << ")";
    throw HypothesisViolation(msg.str(), margin);
  }
  const double beta = params.beta;
  const int d = params.dim;
  const double m = const_M(beta, d, opts);
  return m * std::pow(gamma, beta * d / 4.0 - 0.5) / (std::pow(8.0 * kPi * params.nu, d / 4.0) * margin);
}

double c0_threshold(const ModelParams& params, const EvalOptions& opts) {
  params.validate();
  const double beta = params.beta;
  const int d = params.dim;
  require_beta_d(beta, d, "c0_threshold");
  const double m = const_M(beta, d, opts);
  const double q = 1.0 - std::pow(2.0, beta - 2.0);
  return std::sqrt(m * m / (std::pow(2.0 * params.nu, 1.0 / beta - d / 2.0) * q * q *
                            std::pow(8.0 * kPi * params.nu, d / 2.0)));
}

double admissible_c(const ModelParams& params, double margin, const EvalOptions& opts) {
  params.validate();
  if (!(margin >= 1.0)) throw ParameterError("admissible_c: margin must be >= 1");
  require_beta_d(params.beta, params.dim, "admissible_c");
  if (params.lip_sigma == 0.0)
    throw DegenerateInput("admissible_c: Lip_sigma = 0 makes the moment envelope trivial");
  const double e = 2.0 * params.beta / (2.0 - params.beta * params.dim);
  return margin * std::pow(params.lip_sigma * c0_threshold(params, opts), e);
}

double envelope_growth_rate(const ModelParams& params, double c_norm) {
  return std::pow(2.0 * params.nu * c_norm * c_norm, 1.0 / params.beta);
}

double theta_lower_front_bound(const ModelParams& params, const EvalOptions& opts) {
  params.validate();
  if (params.alpha != 2.0)
    throw UnsupportedRoute("theta_lower_front_bound: the front bound is proved for alpha = 2 only");
  if (!params.sigma_vanishes_at_zero())
    throw HypothesisViolation("theta_lower_front_bound: requires sigma(0) = 0",
                              std::numeric_limits<double>::quiet_NaN());
  const double beta = params.beta;
  const int d = params.dim;
  require_beta_d(beta, d, "theta_lower_front_bound");
  const double e = 2.0 * (2.0 - beta) / (2.0 - beta * d);
  return std::pow(2.0 * params.nu, 1.0 / beta) * std::pow(params.lip_sigma * c0_threshold(params, opts), e);
}

double eta2_lower_bound(const ModelParams& params, const EvalOptions& opts) {
  params.validate();
  const double q = params.l2_exponent();
  if (!(q < 1.0)) {
    std::ostringstream msg;
    msg << "eta2_lower_bound: beta*d/alpha = " << q << " must be < 1";
    throw HypothesisViolation(msg.str(), 1.0 - q);
  }
  if (params.l_sigma == 0.0) return 0.0;
  const double base = cstar(params, opts) * params.l_sigma * params.l_sigma * std::tgamma(1.0 - q);
  return std::pow(base, 1.0 / (1.0 - q));
}

double l2_energy_bound(const ModelParams& params, double eps, double t, double u0_l2_norm,
                       const EvalOptions& opts) {
  params.validate();
  if (!(eps > 0.0 && eps < 1.0)) throw ParameterError("l2_energy_bound: eps must lie in (0, 1)");
  if (!(t >= 0.0)) throw ParameterError("l2_energy_bound: t must be >= 0");
  if (!(u0_l2_norm >= 0.0)) throw ParameterError("l2_energy_bound: |u0| must be >= 0");
  const double q = params.l2_exponent();
  if (!(q < 1.0)) {
    std::ostringstream msg;
    msg << "l2_energy_bound: beta*d/alpha = " << q << " must be < 1";
    throw HypothesisViolation(msg.str(), 1.0 - q);
  }
  const double lip2 = params.lip_sigma * params.lip_sigma;
  const double rate = lip2 == 0.0 ? 0.0
      : std::pow(cstar(params, opts) * std::tgamma(1.0 - q) * lip2 / (1.0 - eps), 1.0 / (1.0 - q));
  return u0_l2_norm * u0_l2_norm / eps * std::exp(rate * t);
}

BoundsReport compute_bounds(const ModelParams& params, const BoundsOptions& opts) {
  params.validate();
  BoundsReport rep;
  rep.params = params;
  rep.options = opts;
  auto attempt = [&](const char* name, auto&& fn) {
    try {
      fn();
    } catch (const HypothesisViolation& e) {
      rep.issues.push_back({name, "hypothesis", e.what()});
    } catch (const DegenerateInput& e) {
      rep.issues.push_back({name, "degenerate", e.what()});
    } catch (const UnsupportedRoute& e) {
      rep.issues.push_back({name, "scope", e.what()});
    } catch (const EvaluationFailure& e) {
      rep.issues.push_back({name, "numerical", e.what()});
    } catch (const ParameterError& e) {
      rep.issues.push_back({name, "parameter", e.what()});
    }
  };
  attempt("cstar", [&] { rep.cstar = cstar(params, opts.eval); });
  attempt("big_m", [&] {
    rep.big_m = const_M(params.beta, params.dim, opts.eval);
    rep.big_m_branch = const_M_branch(params.beta, params.dim, opts.eval);
  });
  attempt("c0", [&] { rep.c0 = c0_threshold(params, opts.eval); });
  attempt("theta_l_bound", [&] { rep.theta_l_bound = theta_lower_front_bound(params, opts.eval); });
  attempt("eta2_lower", [&] {
    rep.eta2_lower = eta2_lower_bound(params, opts.eval);
    if (params.l_sigma == 0.0) rep.notes.push_back("eta2_lower: L_sigma = 0, bound degenerates to 0");
  });
  attempt("admissible_c", [&] {
    const double c = admissible_c(params, opts.margin, opts.eval);
    rep.admissible_c = c;
    const double gamma = envelope_growth_rate(params, c);
    rep.envelope_growth = gamma;
    YoungValidity& v = rep.young_validity;
    v.gamma = gamma;
    v.c_norm = c;
    v.lhs = std::pow(gamma / 2.0, params.beta);
    v.rhs = params.nu * c * c / 2.0;
    v.series_ratio = 1.0 - young_margin(c, gamma, params);
    v.holds = v.lhs > v.rhs;
    rep.young_constant = young_constant(c, gamma, params, opts.eval);
    const double beta = params.beta;
    const int d = params.dim;
    const double closed = const_M(beta, d, opts.eval) * std::pow(2.0 * params.nu, d / 4.0 - 0.5 / beta) *
                          std::pow(c, d / 2.0 - 1.0 / beta) /
                          ((1.0 - std::pow(2.0, beta - 2.0)) * std::pow(8.0 * kPi * params.nu, d / 4.0));
    rep.young_closed_form = closed;
    rep.young_identity_gap = std::abs(closed - *rep.young_constant) / *rep.young_constant;
  });
  attempt("l2_energy", [&] {
    rep.l2_energy = l2_energy_bound(params, opts.eps, opts.t, opts.u0_l2_norm, opts.eval);
  });
  if (params.beta >= 0.5)
    rep.notes.push_back("beta >= 1/2: the noise term's fractional integral is stated to be well defined only for beta < 1/2");
  return rep;
}

}  // namespace fracfront
