#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include <boost/math/special_functions/bessel.hpp>

#include "fracfront/error.hpp"
#include "fracfront/kernel.hpp"
#include "fracfront/specfun.hpp"
#include "quadrature.hpp"

namespace fracfront {
namespace {

constexpr double kPi = std::numbers::pi;

void require_l2_finite(const ModelParams& params, const char* op) {
  const double e = params.l2_exponent();
  if (!(e < 1.0)) {
    std::ostringstream msg;
    msg << op << ": beta*d/alpha = " << e
        << " >= 1, so t -> int G_t^2 dx is not integrable at t = 0 and C* is undefined";
    throw HypothesisViolation(msg.str(), 1.0 - e);
  }
}

// Asymptotic coefficients A_m = (-1)^(m+1)/Gamma(1 - beta m) of E_beta(-z), m = 1..terms.
std::vector<double> ml_asymptotic_coefficients(double beta, int terms) {
  std::vector<double> a(terms + 1, 0.0);
  for (int m = 1; m <= terms; ++m) {
    const double y = beta * m;
    if (std::floor(y) == y) continue;
    double v = std::tgamma(y) * std::sin(kPi * y) / kPi;
    a[m] = (m % 2 == 1) ? v : -v;
  }
  return a;
}

double log_radial_weight(int d, double s) {
  switch (d) {
    case 1: return s + std::log1p(std::exp(-2.0 * s));
    case 2: {
      if (s > 700.0) throw ResolutionError("exp_moment: tilt too large for the radial weight", 0.0);
      return std::log(2.0 * kPi * boost::math::cyl_bessel_i(0, s));
    }
    default:
      if (s < 1e-8) return std::log(4.0 * kPi);
      return std::log(4.0 * kPi) + s + std::log(-std::expm1(-2.0 * s) / (2.0 * s));
  }
}

}  // namespace

double cstar(const ModelParams& params, const EvalOptions& opts) {
  params.validate();
  opts.validate();
  require_l2_finite(params, "cstar");
  const double beta = params.beta;
  const double q = params.dim / params.alpha;
  const double tol = std::min(opts.rel_tolerance, 1e-10);
  auto e2 = [&](double z) {
    const double e = mittag_leffler(beta, -z, opts);
    return e * e;
  };
  // [0, 1] with u = z^q removes the z^(q-1) singularity.
  auto f1 = [&](double u) { return e2(std::pow(u, 1.0 / q)) / q; };
  auto r1 = detail::integrate(f1, {0.0, 0.25, 0.5, 1.0}, tol, 0.0, opts.quadrature_nodes);
  // [1, Z] in v = log z.
  const double Z = std::max(std::pow(400.0, beta), 1e3);
  const double vz = std::log(Z);
  auto f2 = [&](double v) { return std::exp(q * v) * e2(std::exp(v)); };
  std::vector<double> br{0.0};
  for (double v = 1.0; v < vz; v += 1.0) br.push_back(v);
  br.push_back(vz);
  auto r2 = detail::integrate(f2, br, tol, 0.0, opts.quadrature_nodes);
  // [Z, inf) from the asymptotic expansion of E_beta(-z)^2.
  const auto a = ml_asymptotic_coefficients(beta, 8);
  double r3 = 0.0;
  for (int j = 1; j <= 8; ++j)
    for (int k = 1; k <= 8; ++k) {
      const double p = j + k - q;
      r3 += a[j] * a[k] * std::pow(Z, -p) / p;
    }
  const double integral = r1.value + r2.value + r3;
  if (!r1.converged || !r2.converged)
    throw EvaluationFailure("cstar: z-integral did not converge", integral, r1.panels + r2.panels);
  const int d = params.dim;
  const double pref = std::pow(params.nu, -q) * 2.0 * std::pow(kPi, 0.5 * d) /
                      (params.alpha * std::tgamma(0.5 * d)) / std::pow(2.0 * kPi, d);
  return pref * integral;
}

double kernel_l2(const ModelParams& params, double t, const L2Options& opts) {
  params.validate();
  require_l2_finite(params, "kernel_l2");
  if (!(t > 0.0)) throw ParameterError("kernel_l2: t must be > 0");
  std::size_t n = opts.points_per_dim;
  if (n == 0) n = params.dim == 1 ? 4096 : (params.dim == 2 ? 512 : 128);
  if (n < 8 || n % 4 != 0) throw ParameterError("kernel_l2: points_per_dim must be a multiple of 4, >= 8");
  const double widths = params.alpha == 2.0 ? 8.0 : 40.0;
  const double L = widths * kernel_width(params, t);
  FourierOptions fo;
  fo.view = FourierView::Spectral;
  fo.nyquist_tolerance = std::numeric_limits<double>::infinity();
  fo.threads = opts.threads;
  fo.eval = opts.eval;
  auto lattice_sum = [&](std::size_t m) {
    const LatticeSpec grid{params.dim, m, 2.0 * L / static_cast<double>(m)};
    const KernelTable table = kernel_grid_fourier(params, t, grid, fo);
    double s = 0.0;
    for (double v : table.values) s += v * v;
    return s * grid.cell_volume();
  };
  // The multiplier decays like |xi|^(-alpha), so truncating the lattice spectrum at
  // pi/dx leaves an error proportional to dx^(2 alpha - d); one Richardson step removes it.
  const double fine = lattice_sum(n);
  const double coarse = lattice_sum(n / 2);
  const double gain = std::pow(2.0, 2.0 * params.alpha - params.dim);
  return (gain * fine - coarse) / (gain - 1.0);
}

double exp_moment(const ModelParams& params, double t, std::span<const double> lambda,
                  const ExpMomentOptions& opts) {
  params.validate();
  if (params.alpha != 2.0)
    throw UnsupportedRoute("exp_moment: the exponential-moment identity is stated for alpha = 2 only");
  if (!(t > 0.0)) throw ParameterError("exp_moment: t must be > 0");
  if (static_cast<int>(lambda.size()) != params.dim)
    throw ParameterError("exp_moment: lambda dimension does not match params.dim");
  double l2 = 0.0;
  for (double v : lambda) l2 += v * v;
  const double lam = std::sqrt(l2);
  const int d = params.dim;
  EvalOptions eo = opts.eval;
  eo.rel_tolerance = std::min(eo.rel_tolerance, 1e-10);

  // Radial reduction: int_0^inf G(r) r^(d-1) Omega_d(|lambda| r) dr, in y = log r.
  auto h = [&](double y) {
    const double r = std::exp(y);
    const double g = kernel_radial_subordination(params, t, r, eo);
    if (g <= 0.0) return -std::numeric_limits<double>::infinity();
    return std::log(g) + d * y + log_radial_weight(d, lam * r);
  };
  const double y0 = std::log(kernel_width(params, t));
  const double ymax = opts.max_radius > 0.0 ? std::log(opts.max_radius) : std::numeric_limits<double>::infinity();
  constexpr double kStep = 0.25;
  constexpr double kDrop = 40.0;
  double ypk = std::min(y0, ymax), hpk = h(ypk);
  double ylo = ypk;
  for (;;) {
    ylo -= kStep;
    const double v = h(ylo);
    if (v > hpk) { hpk = v; ypk = ylo; }
    if (v < hpk - kDrop) break;
  }
  double yhi = ypk;
  bool clipped = false;
  for (;;) {
    yhi += kStep;
    if (yhi >= ymax) { yhi = ymax; clipped = true; break; }
    const double v = h(yhi);
    if (v > hpk) { hpk = v; ypk = yhi; }
    if (v < hpk - kDrop) break;
    if (yhi > y0 + 40.0) { clipped = true; break; }
  }
  auto f = [&](double y) {
    const double v = h(y);
    return std::isfinite(v) ? std::exp(v - hpk) : 0.0;
  };
  auto res = detail::integrate(f, detail::make_breaks(ylo, yhi, {ypk - 3.0, ypk - 1.0, ypk, ypk + 1.0, ypk + 3.0}),
                               opts.rel_tolerance, 0.0, eo.quadrature_nodes);
  const double value = res.value * std::exp(hpk);
  if (!res.converged) throw EvaluationFailure("exp_moment: radial quadrature did not converge", value, res.panels);
  if (clipped) {
    // Tail beyond the cutoff, estimated from the local log-slope of the integrand.
    const double hb = h(yhi), ha = h(yhi - kStep);
    const double slope = (hb - ha) / kStep;
    const double tail = slope < 0.0 ? std::exp(hb - hpk) / (-slope) : std::numeric_limits<double>::infinity();
    if (tail > opts.tail_tolerance * res.value) {
      std::ostringstream msg;
      msg << "exp_moment: radial extent " << std::exp(yhi) << " leaves an estimated tail fraction "
          << tail / res.value << " above tolerance " << opts.tail_tolerance;
      throw ResolutionError(msg.str(), 0.0);
    }
  }
  return value;
}

}  // namespace fracfront
