#pragma once

#include <span>
#include <vector>

#include "fracfront/lattice.hpp"
#include "fracfront/model.hpp"
#include "fracfront/options.hpp"

namespace fracfront {

enum class KernelMethod { Subordination, Fourier };

// Spectral: band-limited synthesis of the multiplier on the lattice (exact lattice
// operator, mass exactly 1). Pointwise: samples of the periodized continuum kernel; for
// alpha = 2 the slowly decaying part of the multiplier is synthesized analytically.
enum class FourierView { Spectral, Pointwise };

struct FourierOptions {
  FourierView view = FourierView::Spectral;
  // Number of Bessel-potential terms subtracted in the pointwise view.
  int correction_terms = 4;
  // Largest tolerated |unresolved multiplier| at the Nyquist frequency.
  double nyquist_tolerance = 1e-2;
  unsigned threads = 1;
  EvalOptions eval;
};

struct KernelTable {
  ModelParams params;
  double t = 0.0;
  LatticeSpec grid;
  std::vector<double> values;
  KernelMethod method = KernelMethod::Fourier;
  FourierView view = FourierView::Spectral;
  // Set when G_t is unbounded at the origin (alpha = 2, d >= 2) in a pointwise table;
  // the origin entry then holds +inf.
  bool singular_origin = false;
  // Estimated mass of G_t outside the box [-L, L)^d.
  double tail_mass_estimate = 0.0;
  // |unresolved multiplier| at the Nyquist frequency.
  double nyquist_residual = 0.0;

  double mass() const;
  double peak() const;
  // Copy with negative ripple clamped to 0.
  std::vector<double> density_view() const;
};

// Fourier multiplier of G_t: E_beta(-nu |xi|^alpha t^beta).
double kernel_multiplier(const ModelParams& params, double t, double xi_norm,
                         const EvalOptions& opts = {});

// G_t(x) = int_0^inf p_{(t/w)^beta}(x) g_beta(w) dw, alpha = 2 only.
double kernel_point_subordination(const ModelParams& params, double t, std::span<const double> x,
                                  const EvalOptions& opts = {});
double kernel_radial_subordination(const ModelParams& params, double t, double r,
                                   const EvalOptions& opts = {});

KernelTable kernel_grid_fourier(const ModelParams& params, double t, const LatticeSpec& grid,
                                const FourierOptions& opts = {});
// Subordination values at every site (alpha = 2), parallel over sites.
KernelTable kernel_grid_subordination(const ModelParams& params, double t,
                                      const LatticeSpec& grid, unsigned threads = 1,
                                      const EvalOptions& opts = {});

// Multipliers on the real-FFT half spectrum of `grid` (FFTW r2c layout).
std::vector<double> kernel_spectrum(const ModelParams& params, double t, const LatticeSpec& grid,
                                    const EvalOptions& opts = {});

// Kernel width (nu t^beta)^(1/alpha).
double kernel_width(const ModelParams& params, double t);
// Lattice with spacing dx and half-extent max(8 widths, requested).
LatticeSpec recommended_lattice(const ModelParams& params, double t, double dx,
                                double requested_half_extent = 0.0);
// Upper estimate of the mass of G_t outside [-L, L)^d.
double kernel_tail_mass(const ModelParams& params, double t, double half_extent,
                        const EvalOptions& opts = {});

struct L2Options {
  // 0 selects a size from the dimension.
  std::size_t points_per_dim = 0;
  unsigned threads = 1;
  EvalOptions eval;
};

// int G_t^2 dx by lattice quadrature over a spectral KernelTable.
double kernel_l2(const ModelParams& params, double t, const L2Options& opts = {});

// Constant C* with int G_t^2 dx = C* t^(-beta d / alpha).
double cstar(const ModelParams& params, const EvalOptions& opts = {});

struct ExpMomentOptions {
  double rel_tolerance = 1e-8;
  // Radial cutoff; 0 selects it from the tilted integrand.
  double max_radius = 0.0;
  // Largest tolerated fraction of the integral beyond max_radius.
  double tail_tolerance = 1e-6;
  EvalOptions eval;
};

// int exp(lambda . x) G_t(x) dx by radial quadrature of the subordination kernel.
double exp_moment(const ModelParams& params, double t, std::span<const double> lambda,
                  const ExpMomentOptions& opts = {});

// (G_t * u0) by circular FFT convolution with the spectral multiplier.
LatticeField convolve_u0(const ModelParams& params, double t, const LatticeField& u0,
                         const EvalOptions& opts = {});

// u0 sampled at the lattice sites.
LatticeField sample_initial_datum(const ModelParams& params, const LatticeSpec& grid);

}  // namespace fracfront
