#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <sstream>

#include <boost/math/special_functions/bessel.hpp>

#include "fft.hpp"
#include "fracfront/error.hpp"
#include "fracfront/kernel.hpp"
#include "fracfront/parallel.hpp"
#include "fracfront/specfun.hpp"
#include "quadrature.hpp"
#include "stable_internal.hpp"

namespace fracfront {
namespace {

constexpr double kPi = std::numbers::pi;
// Bessel-potential images farther than this many kernel widths stay below 1e-20 of the peak,
// including the rho^(s - d/2) growth of the highest correction term.
constexpr double kImageCutoff = 80.0;

void check_inputs(const ModelParams& params, double t, const LatticeSpec& grid) {
  params.validate();
  grid.validate();
  if (grid.dim != params.dim) throw ParameterError("lattice dimension does not match params.dim");
  if (!(t > 0.0) || !std::isfinite(t)) throw ParameterError("kernel time t must be > 0");
}

// Spacing of the dual lattice: xi_k = k * pi / L.
double dual_step(const LatticeSpec& grid) { return kPi / grid.half_extent(); }

// Inverse of E_beta(-z) ~ sum_m A_m z^(-m) re-expanded in powers of 1/(1+z):
// E_beta(-z) = sum_{k=1}^K c_k (1+z)^(-k) + O(z^(-K-1)).
std::vector<double> bessel_potential_weights(double beta, int terms) {
  std::vector<double> c(terms + 1, 0.0);
  for (int m = 1; m <= terms; ++m) {
    const double y = beta * m;
    // A_m = (-1)^(m+1) / Gamma(1 - beta m), finite at the poles.
    const double s = std::sin(kPi * y);
    double am = (std::abs(s) < 1e-300 || std::floor(y) == y) ? 0.0 : std::tgamma(y) * s / kPi;
    if (m % 2 == 0) am = -am;
    double acc = am;
    for (int k = 1; k < m; ++k) {
      // (-1)^(m-k) C(m-1, m-k)
      double binom = 1.0;
      for (int j = 1; j <= m - k; ++j) binom *= static_cast<double>(k - 1 + j) / j;
      acc -= c[k] * (((m - k) % 2 == 0) ? binom : -binom);
    }
    c[m] = acc;
  }
  return c;
}

// Inverse Fourier transforms of (1 + |xi|^2)^(-s) in R^d at distance rho, s = 1..terms:
// B_s(rho) = 2^(1-s) / ((2 pi)^(d/2) Gamma(s)) rho^(s-d/2) K_(s-d/2)(rho).
void bessel_potentials(int d, int terms, double rho, double* out) {
  const double half_d = 0.5 * d;
  if (rho == 0.0) {
    for (int s = 1; s <= terms; ++s) {
      const double order = s - half_d;
      out[s] = order <= 0.0 ? std::numeric_limits<double>::infinity()
                            : std::tgamma(order) / (std::pow(4.0 * kPi, half_d) * std::tgamma(double(s)));
    }
    return;
  }
  // K_nu for nu = |s - d/2|, via closed forms (half-integer) or upward recurrence.
  double k[16];
  if (d % 2 == 1) {
    // K_(1/2) and K_(3/2) are elementary; K_(m+1) = K_(m-1) + (2m/rho) K_m.
    const double base = std::sqrt(kPi / (2.0 * rho)) * std::exp(-rho);
    k[0] = base;                      // order 1/2
    k[1] = base * (1.0 + 1.0 / rho);  // order 3/2
    for (int m = 1; m + 1 < 16; ++m) k[m + 1] = k[m - 1] + (2.0 * (m + 0.5) / rho) * k[m];
  } else {
    k[0] = boost::math::cyl_bessel_k(0, rho);
    k[1] = boost::math::cyl_bessel_k(1, rho);
    for (int m = 1; m + 1 < 16; ++m) k[m + 1] = k[m - 1] + (2.0 * m / rho) * k[m];
  }
  for (int s = 1; s <= terms; ++s) {
    const double order = s - half_d;
    // Index into k[] by |order| (shifted by 1/2 for odd d).
    const int idx = d % 2 == 1 ? static_cast<int>(std::abs(order) - 0.5 + 0.1) : static_cast<int>(std::abs(order) + 0.1);
    out[s] = std::pow(2.0, 1.0 - s) / (std::pow(2.0 * kPi, half_d) * std::tgamma(double(s))) *
             std::pow(rho, order) * k[idx];
  }
}

// Multiplier tail beyond the Nyquist radius after subtracting the correction terms.
double residual_at(const ModelParams& p, double t, double xi, const std::vector<double>& c,
                   const EvalOptions& opts) {
  double r = kernel_multiplier(p, t, xi, opts);
  const double z = p.nu * std::pow(t, p.beta) * xi * xi;
  for (std::size_t k = 1; k < c.size(); ++k) r -= c[k] * std::pow(1.0 + z, -static_cast<double>(k));
  return std::abs(r);
}

double suggest_dx(const ModelParams& p, double t, double dx, double tol,
                  const std::vector<double>& c, const EvalOptions& opts) {
  double h = dx;
  for (int i = 0; i < 60; ++i) {
    h *= 0.5;
    if (residual_at(p, t, kPi / h, c, opts) <= tol) return h;
  }
  return h;
}

}  // namespace

double kernel_multiplier(const ModelParams& params, double t, double xi_norm, const EvalOptions& opts) {
  const double z = params.nu * std::pow(xi_norm, params.alpha) * std::pow(t, params.beta);
  return mittag_leffler(params.beta, -z, opts);
}

std::vector<double> kernel_spectrum(const ModelParams& params, double t, const LatticeSpec& grid,
                                    const EvalOptions& opts) {
  check_inputs(params, t, grid);
  const auto index = detail::spectral_index(grid);
  const double h = dual_step(grid);
  std::vector<double> by_key(static_cast<std::size_t>(index.max_norm_sq) + 1,
                             std::numeric_limits<double>::quiet_NaN());
  std::vector<double> out(index.norm_sq.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    double& v = by_key[static_cast<std::size_t>(index.norm_sq[i])];
    if (std::isnan(v))
      v = kernel_multiplier(params, t, h * std::sqrt(static_cast<double>(index.norm_sq[i])), opts);
    out[i] = v;
  }
  return out;
}

double kernel_width(const ModelParams& params, double t) {
  return std::pow(params.nu * std::pow(t, params.beta), 1.0 / params.alpha);
}

LatticeSpec recommended_lattice(const ModelParams& params, double t, double dx,
                                double requested_half_extent) {
  params.validate();
  const double L = std::max(8.0 * kernel_width(params, t), requested_half_extent);
  return LatticeSpec::from_extent(params.dim, dx, L);
}

double kernel_tail_mass(const ModelParams& params, double t, double half_extent,
                        const EvalOptions& opts) {
  params.validate();
  const double L = half_extent;
  const int d = params.dim;
  const double beta = params.beta;
  if (params.alpha != 2.0) {
    // Symmetric alpha-stable tail P(|X_1| > L) ~ 2 Gamma(alpha) sin(pi alpha/2)/pi * s L^(-alpha),
    // with scale s = nu E(E_t), union bound over the d axes.
    const double a = params.alpha;
    const double s = params.nu * inv_subordinator_moment(beta, 1.0, t);
    return std::min(1.0, d * 2.0 * std::tgamma(a) * std::sin(kPi * a / 2.0) / kPi * s * std::pow(L, -a));
  }
  auto axis_tail = [&](double u) { return std::erfc(L / std::sqrt(4.0 * params.nu * u)); };
  if (beta == 1.0) return std::min(1.0, d * axis_tail(t));
  // d * E[erfc(L / sqrt(4 nu E_t))] with E_t = (t/D)^beta, integrated in y = log D.
  const double log_t = std::log(t);
  auto h = [&](double y) {
    const double e = axis_tail(std::exp(beta * (log_t - y)));
    if (e <= 0.0) return -std::numeric_limits<double>::infinity();
    return y + log_stable_pdf(beta, std::exp(y), opts) + std::log(e);
  };
  const double yw = std::log(detail::stable_series_start(beta));
  double ypk = 0.0, hpk = h(0.0), y = 0.0;
  for (;;) {
    y -= 0.5;
    const double v = h(y);
    if (v > hpk) { hpk = v; ypk = y; }
    if (std::isfinite(hpk) && v < hpk - 40.0) break;
    if (y < -3000.0) return 0.0;
  }
  const double ylo = y;
  for (double z = 0.5; z < yw; z += 0.5) {
    const double v = h(z);
    if (v > hpk) { hpk = v; ypk = z; }
  }
  if (!std::isfinite(hpk)) return 0.0;
  auto f = [&](double yy) {
    const double v = h(yy);
    return std::isfinite(v) ? std::exp(v - hpk) : 0.0;
  };
  auto res = detail::integrate(f, detail::make_breaks(ylo, yw, {ypk - 2.0, ypk, ypk + 2.0}), 1e-6,
                               0.0, opts.quadrature_nodes);
  return std::min(1.0, d * res.value * std::exp(hpk));
}

KernelTable kernel_grid_fourier(const ModelParams& params, double t, const LatticeSpec& grid,
                                const FourierOptions& opts) {
  check_inputs(params, t, grid);
  if (opts.correction_terms < 0 || opts.correction_terms > 12)
    throw ParameterError("correction_terms must lie in [0, 12]");
  const bool corrected = opts.view == FourierView::Pointwise && params.alpha == 2.0 &&
                         params.beta < 1.0 && opts.correction_terms > 0;
  const std::vector<double> c =
      corrected ? bessel_potential_weights(params.beta, opts.correction_terms) : std::vector<double>{0.0};

  KernelTable table;
  table.params = params;
  table.t = t;
  table.grid = grid;
  table.method = KernelMethod::Fourier;
  table.view = opts.view;

  const double nyq = kPi / grid.dx;
  table.nyquist_residual = residual_at(params, t, nyq, c, opts.eval);
  if (table.nyquist_residual > opts.nyquist_tolerance) {
    const double h = suggest_dx(params, t, grid.dx, opts.nyquist_tolerance, c, opts.eval);
    std::ostringstream msg;
    msg << "lattice spacing dx=" << grid.dx << " leaves |multiplier| " << table.nyquist_residual
        << " at the Nyquist frequency (tolerance " << opts.nyquist_tolerance << "); try dx <= " << h;
    throw ResolutionError(msg.str(), h);
  }

  const auto index = detail::spectral_index(grid);
  std::vector<double> spec = kernel_spectrum(params, t, grid, opts.eval);
  const double a = params.nu * std::pow(t, params.beta);
  const double h = dual_step(grid);
  std::vector<std::complex<double>> buf(spec.size());
  for (std::size_t i = 0; i < spec.size(); ++i) {
    double v = spec[i];
    if (corrected) {
      const double z = a * h * h * static_cast<double>(index.norm_sq[i]);
      double pw = 1.0;
      for (std::size_t k = 1; k < c.size(); ++k) {
        pw /= (1.0 + z);
        v -= c[k] * pw;
      }
    }
    // The lattice origin sits at index n/2, hence the parity factor.
    buf[i] = v * static_cast<double>(index.parity[i]);
  }
  detail::RealFft fft(grid);
  table.values.assign(grid.size(), 0.0);
  fft.inverse(buf.data(), table.values.data());
  const double norm = 1.0 / std::pow(2.0 * grid.half_extent(), grid.dim);
  for (double& v : table.values) v *= norm;

  if (corrected) {
    const int d = grid.dim;
    const double sa = std::sqrt(a);
    const double prefactor = std::pow(a, -0.5 * d);
    const double period = 2.0 * grid.half_extent();
    const int shells = std::clamp(static_cast<int>(std::ceil((kImageCutoff * sa / grid.half_extent() + 1.0) / 2.0)), 1, 8);
    std::vector<std::array<double, 3>> shifts;
    for (int i = -shells; i <= shells; ++i)
      for (int j = (d >= 2 ? -shells : 0); j <= (d >= 2 ? shells : 0); ++j)
        for (int k = (d >= 3 ? -shells : 0); k <= (d >= 3 ? shells : 0); ++k)
          shifts.push_back({i * period, j * period, k * period});
    const std::size_t row = grid.n;
    const std::size_t rows = grid.size() / row;
    parallel_for(rows, opts.threads, [&](std::size_t rr) {
      for (std::size_t q = 0; q < row; ++q) {
        const std::size_t site = rr * row + q;
        const auto x = grid.position(site);
        double add = 0.0;
        double bp[16];
        for (const auto& sh : shifts) {
          const double dxs = x[0] + sh[0], dys = x[1] + sh[1], dzs = x[2] + sh[2];
          const double rho = std::sqrt(dxs * dxs + dys * dys + dzs * dzs) / sa;
          if (rho > kImageCutoff) continue;
          bessel_potentials(d, static_cast<int>(c.size()) - 1, rho, bp);
          for (std::size_t k = 1; k < c.size(); ++k)
            if (c[k] != 0.0) add += c[k] * bp[k];
        }
        table.values[site] += prefactor * add;
      }
    });
    table.singular_origin = std::isinf(table.values[grid.origin()]);
  }
  table.tail_mass_estimate = kernel_tail_mass(params, t, grid.half_extent(), opts.eval);
  return table;
}

double KernelTable::mass() const {
  double s = 0.0;
  for (double v : values) s += v;
  return s * grid.cell_volume();
}

double KernelTable::peak() const {
  double m = -std::numeric_limits<double>::infinity();
  for (double v : values)
    if (std::isfinite(v)) m = std::max(m, v);
  return m;
}

std::vector<double> KernelTable::density_view() const {
  std::vector<double> out(values);
  for (double& v : out) v = std::max(v, 0.0);
  return out;
}

LatticeField sample_initial_datum(const ModelParams& params, const LatticeSpec& grid) {
  grid.validate();
  if (grid.dim != params.dim) throw ParameterError("lattice dimension does not match params.dim");
  LatticeField f{grid, std::vector<double>(grid.size())};
  for (std::size_t i = 0; i < f.values.size(); ++i) {
    const auto x = grid.position(i);
    f.values[i] = params.u0(std::span<const double>(x.data(), grid.dim));
  }
  return f;
}

LatticeField convolve_u0(const ModelParams& params, double t, const LatticeField& u0,
                         const EvalOptions& opts) {
  u0.validate();
  if (u0.grid.dim != params.dim) throw ParameterError("convolve_u0: field dimension does not match params.dim");
  for (double v : u0.values)
    if (!std::isfinite(v)) throw ParameterError("convolve_u0: u0 must be finite");
  if (!(t >= 0.0)) throw ParameterError("convolve_u0: t must be >= 0");
  if (t == 0.0) return u0;
  const std::vector<double> mult = kernel_spectrum(params, t, u0.grid, opts);
  detail::RealFft fft(u0.grid);
  std::vector<std::complex<double>> buf(fft.spectral_size());
  fft.forward(u0.values.data(), buf.data());
  const double inv_n = 1.0 / static_cast<double>(fft.real_size());
  for (std::size_t i = 0; i < buf.size(); ++i) buf[i] *= mult[i] * inv_n;
  LatticeField out{u0.grid, std::vector<double>(u0.values.size())};
  fft.inverse(buf.data(), out.values.data());
  return out;
}

}  // namespace fracfront
