#pragma once

#include "fracfront/options.hpp"

namespace fracfront {

// E_beta(z) = sum_k z^k / Gamma(1 + beta k), beta in (0, 1].
double mittag_leffler(double beta, double z, const EvalOptions& opts = {});

// Density of the one-sided stable variable D_1 with E exp(-s D_1) = exp(-s^beta).
double stable_pdf(double beta, double w, const EvalOptions& opts = {});
// Natural log of stable_pdf; -inf for w <= 0. Stays finite where the density underflows.
double log_stable_pdf(double beta, double w, const EvalOptions& opts = {});

// Density of the inverse stable subordinator E_t at s.
double inv_subordinator_pdf(double beta, double t, double s, const EvalOptions& opts = {});

// E(E_t^k) = Gamma(1 + k) / Gamma(1 + beta k) * t^(beta k).
double inv_subordinator_moment(double beta, double k, double t);

// a_k^d(beta) = E(D_1^(-beta (k - d/4))), computed by quadrature against g_beta.
double a_coeff(double beta, int d, int k, const EvalOptions& opts = {});

// E(D_1^p) for p < beta by quadrature against g_beta.
double stable_moment(double beta, double p, const EvalOptions& opts = {});

// b_{k,n}(beta) = int_0^t exp(-gamma s) s^(beta (k + n - d/2)) ds.
double b_coeff(double beta, int d, double gamma, double t, int k, int n);

// Right-hand side 3 Gamma(1 + k) / Gamma(1 + beta k) of the a-priori bound on a_k^d, k >= 1.
double a_coeff_bound(double beta, int k);
// gamma^-(1 + 2 beta (k - d/4)) Gamma(1 + beta (2k - d/2)), the t-free bound on b_{k,k}.
double b_coeff_diagonal_bound(double beta, int d, double gamma, int k);

// int_0^t exp(-rate s) s^exponent ds for exponent > -1.
double weighted_power_integral(double exponent, double rate, double t);

}  // namespace fracfront
