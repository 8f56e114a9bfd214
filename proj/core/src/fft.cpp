#include <mutex>

#include <fftw3.h>

#include "fft.hpp"

namespace fracfront::detail {
namespace {

// FFTW planning is not thread-safe; execution with the new-array interface is.
std::mutex& planner_mutex() {
  static std::mutex mu;
  return mu;
}

}  // namespace

RealFft::RealFft(const LatticeSpec& grid) {
  grid.validate();
  const int d = grid.dim;
  int dims[3];
  for (int a = 0; a < d; ++a) dims[a] = static_cast<int>(grid.n);
  real_size_ = grid.size();
  spectral_size_ = real_size_ / grid.n * (grid.n / 2 + 1);
  std::vector<double> r(real_size_);
  std::vector<std::complex<double>> c(spectral_size_);
  auto* cp = reinterpret_cast<fftw_complex*>(c.data());
  // FFTW_ESTIMATE keeps plans, and therefore round-off, identical across runs.
  const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
  std::lock_guard<std::mutex> lock(planner_mutex());
  forward_plan_ = fftw_plan_dft_r2c(d, dims, r.data(), cp, flags);
  inverse_plan_ = fftw_plan_dft_c2r(d, dims, cp, r.data(), flags);
}

RealFft::~RealFft() {
  std::lock_guard<std::mutex> lock(planner_mutex());
  if (forward_plan_) fftw_destroy_plan(static_cast<fftw_plan>(forward_plan_));
  if (inverse_plan_) fftw_destroy_plan(static_cast<fftw_plan>(inverse_plan_));
}

void RealFft::forward(const double* in, std::complex<double>* out) const {
  fftw_execute_dft_r2c(static_cast<fftw_plan>(forward_plan_), const_cast<double*>(in),
                       reinterpret_cast<fftw_complex*>(out));
}

void RealFft::inverse(std::complex<double>* in, double* out) const {
  fftw_execute_dft_c2r(static_cast<fftw_plan>(inverse_plan_), reinterpret_cast<fftw_complex*>(in),
                       out);
}

SpectralIndex spectral_index(const LatticeSpec& grid) {
  const std::int64_t n = static_cast<std::int64_t>(grid.n);
  const std::int64_t half = n / 2 + 1;
  std::size_t full = 1;
  for (int a = 0; a + 1 < grid.dim; ++a) full *= grid.n;
  SpectralIndex out;
  out.norm_sq.resize(full * half);
  out.parity.resize(full * half);
  for (std::size_t f = 0; f < full; ++f) {
    std::int64_t rest = static_cast<std::int64_t>(f);
    std::int64_t ksq = 0, ksum = 0;
    for (int a = grid.dim - 2; a >= 0; --a) {
      std::int64_t k = rest % n;
      rest /= n;
      if (k >= n / 2) k -= n;
      ksq += k * k;
      ksum += k;
    }
    for (std::int64_t k = 0; k < half; ++k) {
      const std::size_t idx = f * half + k;
      out.norm_sq[idx] = ksq + k * k;
      out.parity[idx] = ((ksum + k) % 2 == 0) ? 1 : -1;
      out.max_norm_sq = std::max(out.max_norm_sq, out.norm_sq[idx]);
    }
  }
  return out;
}

}  // namespace fracfront::detail
