#pragma once

// Thin RAII wrapper over FFTW real-to-complex transforms on a LatticeSpec.

#include <complex>
#include <cstdint>
#include <vector>

#include "fracfront/lattice.hpp"

namespace fracfront::detail {

class RealFft {
 public:
  explicit RealFft(const LatticeSpec& grid);
  ~RealFft();
  RealFft(const RealFft&) = delete;
  RealFft& operator=(const RealFft&) = delete;

  std::size_t real_size() const { return real_size_; }
  std::size_t spectral_size() const { return spectral_size_; }

  // Unnormalized forward transform; `in` is preserved.
  void forward(const double* in, std::complex<double>* out) const;
  // Unnormalized inverse transform; `in` is overwritten.
  void inverse(std::complex<double>* in, double* out) const;

 private:
  void* forward_plan_ = nullptr;
  void* inverse_plan_ = nullptr;
  std::size_t real_size_ = 0;
  std::size_t spectral_size_ = 0;
};

// Signed integer wavenumbers per half-spectrum entry.
struct SpectralIndex {
  std::vector<std::int64_t> norm_sq;  // |k|^2
  std::vector<std::int8_t> parity;    // (-1)^(k_1 + ... + k_d)
  std::int64_t max_norm_sq = 0;
};
SpectralIndex spectral_index(const LatticeSpec& grid);

}  // namespace fracfront::detail
