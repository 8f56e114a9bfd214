#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "fracfront/error.hpp"
#include "fracfront/kernel.hpp"
#include "fracfront/parallel.hpp"
#include "fracfront/specfun.hpp"
#include "quadrature.hpp"
#include "stable_internal.hpp"

namespace fracfront {
namespace {

constexpr double kPi = std::numbers::pi;

void require_gaussian(const ModelParams& params, const char* op) {
  params.validate();
  if (params.alpha != 2.0) {
    std::ostringstream msg;
    msg << op << ": the subordination route needs alpha = 2 (Gaussian kernel); "
        << "use kernel_grid_fourier for alpha = " << params.alpha;
    throw UnsupportedRoute(msg.str());
  }
}

double heat_kernel(const ModelParams& p, double u, double r) {
  const double var4 = 4.0 * p.nu * u;
  return std::exp(-r * r / var4 - 0.5 * p.dim * std::log(kPi * var4));
}

}  // namespace

double kernel_radial_subordination(const ModelParams& params, double t, double r,
                                   const EvalOptions& opts) {
  require_gaussian(params, "kernel_radial_subordination");
  opts.validate();
  if (!(t > 0.0)) throw ParameterError("kernel_radial_subordination: t must be > 0");
  if (!(r >= 0.0)) throw ParameterError("kernel_radial_subordination: r must be >= 0");
  const double beta = params.beta;
  const int d = params.dim;
  if (beta == 1.0) return heat_kernel(params, t, r);
  if (r == 0.0 && d >= 2) return std::numeric_limits<double>::infinity();

  const double log_t = std::log(t);
  const double r2 = r * r;
  const double c4 = 4.0 * params.nu;
  // log of the integrand in y = log w: w g(w) p_u(r), u = (t/w)^beta.
  auto h = [&](double y) {
    const double log_u = beta * (log_t - y);
    const double lg = log_stable_pdf(beta, std::exp(y), opts);
    return y + lg - r2 * std::exp(-log_u) / c4 - 0.5 * d * (std::log(kPi * c4) + log_u);
  };

  const double W = detail::stable_series_start(beta);
  const double yw = std::log(W);
  // Beyond y_cut the Gaussian factor is below exp(-60).
  double yend = yw;
  if (r > 0.0) yend = std::max(yw, (std::log(60.0 * c4 / r2) + beta * log_t) / beta);

  constexpr double kStep = 0.5;
  constexpr double kDrop = 45.0;
  double ypk = std::min(0.0, yend);
  double hpk = h(ypk);
  double ylo = ypk;
  for (;;) {
    ylo -= kStep;
    const double v = h(ylo);
    if (v > hpk) { hpk = v; ypk = ylo; }
    if (v < hpk - kDrop) break;
    if (ylo < -5000.0) throw EvaluationFailure("subordination integrand: left tail not found", 0.0, 0);
  }
  double yhi = ypk;
  for (;;) {
    yhi += kStep;
    if (yhi >= yend) { yhi = yend; break; }
    const double v = h(yhi);
    if (v > hpk) { hpk = v; ypk = yhi; }
    if (v < hpk - kDrop) break;
  }
  auto f = [&](double y) { return std::exp(h(y) - hpk); };
  std::vector<double> interior{ypk - 6.0, ypk - 2.0, ypk, ypk + 2.0, ypk + 6.0, yw};
  auto res = detail::integrate(f, detail::make_breaks(ylo, yhi, interior), opts.rel_tolerance,
                               0.0, opts.quadrature_nodes);
  double value = res.value * std::exp(hpk);
  if (!res.converged) {
    std::ostringstream msg;
    msg << "subordination quadrature did not converge (t=" << t << ", r=" << r << ")";
    throw EvaluationFailure(msg.str(), value, res.panels);
  }
  if (r == 0.0 && yhi >= yw) {
    // d = 1 at the origin: p_u(0) = (4 pi nu t^beta)^(-1/2) w^(beta/2); integrate the
    // large-w series of g exactly beyond W.
    const double pref = std::exp(-0.5 * (std::log(kPi * c4) + beta * log_t));
    value += pref * detail::stable_tail_moment(beta, 0.5 * beta, W);
  }
  return value;
}

double kernel_point_subordination(const ModelParams& params, double t, std::span<const double> x,
                                  const EvalOptions& opts) {
  if (static_cast<int>(x.size()) != params.dim)
    throw ParameterError("kernel_point_subordination: point dimension does not match params.dim");
  double r2 = 0.0;
  for (double v : x) r2 += v * v;
  return kernel_radial_subordination(params, t, std::sqrt(r2), opts);
}

KernelTable kernel_grid_subordination(const ModelParams& params, double t, const LatticeSpec& grid,
                                      unsigned threads, const EvalOptions& opts) {
  require_gaussian(params, "kernel_grid_subordination");
  grid.validate();
  if (grid.dim != params.dim) throw ParameterError("lattice dimension does not match params.dim");
  KernelTable table;
  table.params = params;
  table.t = t;
  table.grid = grid;
  table.method = KernelMethod::Subordination;
  table.view = FourierView::Pointwise;
  table.values.assign(grid.size(), 0.0);
  parallel_for(grid.size(), threads, [&](std::size_t i) {
    table.values[i] = kernel_radial_subordination(params, t, grid.radius(i), opts);
  });
  table.singular_origin = params.dim >= 2 && params.beta < 1.0;
  table.tail_mass_estimate = kernel_tail_mass(params, t, grid.half_extent(), opts);
  return table;
}

}  // namespace fracfront
