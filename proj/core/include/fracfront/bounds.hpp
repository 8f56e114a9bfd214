#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fracfront/model.hpp"
#include "fracfront/options.hpp"

namespace fracfront {

// M = max{a_0^d(beta) sqrt(Gamma(1 - beta d/2)), 3 sqrt(beta Gamma(2 beta (1 - d/4))) / (2^beta Gamma(1 + beta))}.
double const_M(double beta, int d, const EvalOptions& opts = {});
// 0 if the a_0 branch attains M, 1 otherwise.
int const_M_branch(double beta, int d, const EvalOptions& opts = {});

// Weighted Young constant C_d(c, gamma, beta); requires (gamma/2)^beta > nu c^2 / 2.
double young_constant(double c_norm, double gamma, const ModelParams& params,
                      const EvalOptions& opts = {});
// 1 - 2^(beta-1) nu c^2 / gamma^beta; positive exactly when the Young bound is valid.
double young_margin(double c_norm, double gamma, const ModelParams& params);

// c_0 = sqrt(M^2 / ((2 nu)^(1/beta - d/2) (1 - 2^(beta-2))^2 (8 pi nu)^(d/2))).
double c0_threshold(const ModelParams& params, const EvalOptions& opts = {});
// margin * (Lip c_0)^(2 beta / (2 - beta d)).
double admissible_c(const ModelParams& params, double margin, const EvalOptions& opts = {});
// (2 nu c^2)^(1/beta): the time-growth exponent paired with spatial decay rate c.
double envelope_growth_rate(const ModelParams& params, double c_norm);
// (2 nu)^(1/beta) (Lip c_0)^(2 (2 - beta) / (2 - beta d)).
double theta_lower_front_bound(const ModelParams& params, const EvalOptions& opts = {});
// [C* L_sigma^2 Gamma(1 - beta d/alpha)]^(1/(1 - beta d/alpha)); 0 when L_sigma = 0.
double eta2_lower_bound(const ModelParams& params, const EvalOptions& opts = {});
// eps^-1 |u0|^2 exp([C* Gamma(1 - beta d/alpha) Lip^2 / (1 - eps)]^(1/(1 - beta d/alpha)) t).
double l2_energy_bound(const ModelParams& params, double eps, double t, double u0_l2_norm,
                       const EvalOptions& opts = {});

struct BoundsOptions {
  double margin = 1.5;
  double eps = 0.5;
  double t = 1.0;
  double u0_l2_norm = 1.0;
  EvalOptions eval;
};

struct YoungValidity {
  double gamma = 0.0;
  double c_norm = 0.0;
  double lhs = 0.0;           // (gamma/2)^beta
  double rhs = 0.0;           // nu c^2 / 2
  double series_ratio = 0.0;  // 2^(beta-1) nu c^2 / gamma^beta
  bool holds = false;
};

struct BoundsIssue {
  std::string quantity;
  std::string kind;  // hypothesis | degenerate | scope | numerical
  std::string message;
};

struct BoundsReport {
  static constexpr const char* kFormulaVersion = "fracfront-bounds-1";

  ModelParams params;
  BoundsOptions options;
  std::optional<double> cstar;
  std::optional<double> big_m;
  int big_m_branch = -1;
  std::optional<double> c0;
  std::optional<double> theta_l_bound;
  std::optional<double> eta2_lower;
  std::optional<double> admissible_c;
  std::optional<double> envelope_growth;
  std::optional<double> young_constant;
  // Closed form of C_d at gamma^beta = 2 nu c^2 and its relative gap to young_constant.
  std::optional<double> young_closed_form;
  std::optional<double> young_identity_gap;
  std::optional<double> l2_energy;
  YoungValidity young_validity;
  std::vector<BoundsIssue> issues;
  std::vector<std::string> notes;

  bool ok() const { return issues.empty(); }
};

// Evaluates every constant that the parameters admit; failures land in `issues`.
BoundsReport compute_bounds(const ModelParams& params, const BoundsOptions& opts = {});

}  // namespace fracfront
