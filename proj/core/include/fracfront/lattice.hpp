#pragma once

#include <array>
#include <cstddef>
#include <vector>

namespace fracfront {

// Periodic cubic lattice with n points per axis at x_j = (j - n/2) dx, row-major,
// last axis fastest. The torus is [-L, L)^d with L = n dx / 2.
struct LatticeSpec {
  int dim = 1;
  std::size_t n = 64;
  double dx = 0.1;

  // Smallest even n with n dx / 2 >= half_extent.
  static LatticeSpec from_extent(int dim, double dx, double half_extent);

  void validate() const;
  double half_extent() const { return 0.5 * static_cast<double>(n) * dx; }
  std::size_t size() const;
  double cell_volume() const;
  double coordinate(std::size_t j) const {
    return (static_cast<double>(j) - 0.5 * static_cast<double>(n)) * dx;
  }
  std::array<std::size_t, 3> unflatten(std::size_t flat) const;
  std::size_t flatten(const std::array<std::size_t, 3>& idx) const;
  std::array<double, 3> position(std::size_t flat) const;
  double radius(std::size_t flat) const;
  // Index of the site at the origin.
  std::size_t origin() const;

  bool operator==(const LatticeSpec&) const = default;
};

struct LatticeField {
  LatticeSpec grid;
  std::vector<double> values;

  void validate() const;
};

}  // namespace fracfront
