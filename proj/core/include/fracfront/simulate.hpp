#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fracfront/lattice.hpp"
#include "fracfront/model.hpp"
#include "fracfront/options.hpp"

namespace fracfront {

// How the kernel lag couples to the noise increment on [t_m, t_{m+1}].
// LeftPoint uses G_{t_n - t_m}; CellIntegrated uses the time average of G over the cell.
enum class NoiseCoupling { LeftPoint, CellIntegrated };

enum class BlowUpPolicy { Abort, Tolerate };

// Spectral: the band-limited lattice operator with multiplier E_beta(-nu |xi|^2 t^beta).
// Pointwise: lattice samples of the periodized continuum kernel (d = 1), whose transform
// is the aliased multiplier; it avoids the algebraic far-field tail of the spectral
// operator, which stems from the multiplier's kink at the Nyquist frequency.
// Auto picks Pointwise for d = 1 with left-point coupling and Spectral otherwise.
enum class KernelSampling { Auto, Spectral, Pointwise };

struct SimConfig {
  ModelParams params;
  LatticeSpec grid;
  double dt = 0.01;
  double horizon = 1.0;
  std::size_t replicates = 2;
  std::uint64_t base_seed = 0;
  // Step indices n (time n dt) to record; empty records every step including 0.
  std::vector<std::size_t> record_steps;
  NoiseCoupling coupling = NoiseCoupling::LeftPoint;
  BlowUpPolicy blowup = BlowUpPolicy::Abort;
  KernelSampling sampling = KernelSampling::Auto;
  // Front speed used by the boundary-clearance check; negative selects the
  // theoretical lower-front bound when it is defined, else 0.
  double theta_max = -1.0;
  // Ceiling on the precomputed kernel slices.
  std::size_t cache_limit_bytes = std::size_t{2} << 30;
  unsigned threads = 0;
  EvalOptions eval;

  std::size_t steps() const;
  // Sorted, deduplicated record steps (resolving the empty default).
  std::vector<std::size_t> resolved_record_steps() const;
  double resolved_theta_max() const;
  KernelSampling resolved_sampling() const;
  // Throws ParameterError, including for boundary-clearance failures.
  void validate() const;
  // Model-validity notes that do not block a run.
  std::vector<std::string> warnings() const;
  bool sigma_is_zero() const;
};

struct SimCost {
  std::size_t steps = 0;
  std::size_t sites = 0;
  std::size_t spectral_size = 0;
  std::size_t kernel_cache_bytes = 0;
  std::size_t history_bytes_per_worker = 0;
  std::size_t ffts_per_replicate = 0;
  // Complex multiply-adds of the history sum per replicate: spectral_size * N_t (N_t + 1) / 2.
  std::size_t history_madds_per_replicate = 0;
};
SimCost estimate_cost(const SimConfig& config);

// Gaussian increments of one time step, N(0, dt dx^d) per cell.
struct NoiseSlab {
  std::size_t step = 0;
  std::size_t replicate = 0;
  double variance = 0.0;
  std::vector<double> values;
};

// Deterministic in (base_seed, replicate, step, cell).
NoiseSlab gen_noise(const SimConfig& config, std::size_t step, std::size_t replicate);
void fill_noise(const SimConfig& config, std::size_t step, std::size_t replicate,
                std::span<double> out);

// Multipliers of every kernel lag on the half spectrum, plus the transformed u0.
struct SimKernelCache {
  LatticeSpec grid;
  // point[j], noise[j]: multiplier of lag j dt, j = 0..N_t (index 0 unused by noise).
  // noise is empty under left-point coupling, which reuses point.
  std::vector<std::vector<double>> point;
  std::vector<std::vector<double>> noise;
  std::vector<std::complex<double>> u0_hat;
};
SimKernelCache build_kernel_cache(const SimConfig& config);

struct ReplicateHistory {
  std::vector<std::size_t> steps;
  std::vector<double> times;
  // fields[r][site] at times[r].
  std::vector<std::vector<double>> fields;
};

// Discrete mild recursion u_n = G_n * u0 + sum_{m<n} G_{n-m} * (sigma(u_m) dW_m).
// Throws BlowUpError on a non-finite field.
ReplicateHistory solve_replicate(const SimConfig& config, std::size_t replicate,
                                 const SimKernelCache& cache);
ReplicateHistory solve_replicate(const SimConfig& config, std::size_t replicate);

struct MomentField {
  LatticeSpec grid;
  std::vector<double> times;
  std::vector<std::size_t> steps;
  // Row-major [record][site].
  std::vector<double> mean_sq;
  std::vector<double> std_err;
  // Per record: mean over sites of E|u|^2 and its standard error across replicates.
  std::vector<double> site_mean;
  std::vector<double> site_mean_err;
  // Row-major [replicate][record]: each aggregated replicate's site-averaged |u|^2.
  std::vector<double> replicate_site_mean;
  std::size_t replicates = 0;
  std::size_t requested_replicates = 0;
  std::uint64_t base_seed = 0;
  std::size_t blowups = 0;
  std::vector<std::size_t> blown_replicates;
  // False when a blow-up aborted the run; the aggregate then covers replicates before it.
  bool usable = true;
  std::string blowup_message;
  std::vector<std::string> warnings;

  std::size_t sites() const { return grid.size(); }
  double at(std::size_t record, std::size_t site) const { return mean_sq[record * sites() + site]; }
  double err(std::size_t record, std::size_t site) const { return std_err[record * sites() + site]; }
  // Throws Error on negative, non-finite or misshaped entries.
  void validate() const;
};

// Parallel over replicates; aggregation runs in replicate order, so the result does not
// depend on the thread count.
MomentField run_replicates(const SimConfig& config);

struct GrowthEstimate {
  double rate = 0.0;
  double std_error = 0.0;
  double intercept = 0.0;
  std::size_t n_times = 0;
  // True when std_error accounts for the correlation between recorded times.
  bool covariance_aware = false;
};

struct TimeWindow {
  double t_min = 0.0;
  double t_max = 1e300;
};

// Least-squares slope of log E|u_t(x)|^2 against t at one site.
GrowthEstimate estimate_growth(const MomentField& moments, std::size_t site,
                               const TimeWindow& window = {});
// Same fit on the site-averaged series. With per-replicate series present the error is the
// delta-method standard error of the slope across replicates, which keeps the correlation
// between recorded times.
GrowthEstimate estimate_growth_site_mean(const MomentField& moments, const TimeWindow& window = {});
// Slope fit of log m_i against t_i with log-scale errors se_i / m_i.
GrowthEstimate fit_log_slope(std::span<const double> t, std::span<const double> m,
                             std::span<const double> se);

}  // namespace fracfront
