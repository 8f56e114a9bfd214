#include <cmath>

#include "fracfront/error.hpp"
#include "fracfront/lattice.hpp"

namespace fracfront {

LatticeSpec LatticeSpec::from_extent(int dim, double dx, double half_extent) {
  if (!(dx > 0.0)) throw ParameterError("lattice spacing must be > 0");
  if (!(half_extent > 0.0)) throw ParameterError("lattice half-extent must be > 0");
  auto half = static_cast<std::size_t>(std::ceil(half_extent / dx - 1e-9));
  LatticeSpec g{dim, 2 * std::max<std::size_t>(half, 1), dx};
  g.validate();
  return g;
}

void LatticeSpec::validate() const {
  if (dim < 1 || dim > 3) throw ParameterError("lattice dimension must be 1, 2 or 3");
  if (n < 2 || n % 2 != 0) throw ParameterError("lattice points per axis must be even and >= 2");
  if (!(dx > 0.0) || !std::isfinite(dx)) throw ParameterError("lattice spacing must be > 0");
}

std::size_t LatticeSpec::size() const {
  std::size_t s = 1;
  for (int i = 0; i < dim; ++i) s *= n;
  return s;
}

double LatticeSpec::cell_volume() const { return std::pow(dx, dim); }

std::array<std::size_t, 3> LatticeSpec::unflatten(std::size_t flat) const {
  std::array<std::size_t, 3> idx{0, 0, 0};
  for (int a = dim - 1; a >= 0; --a) {
    idx[a] = flat % n;
    flat /= n;
  }
  return idx;
}

std::size_t LatticeSpec::flatten(const std::array<std::size_t, 3>& idx) const {
  std::size_t flat = 0;
  for (int a = 0; a < dim; ++a) flat = flat * n + idx[a];
  return flat;
}

std::array<double, 3> LatticeSpec::position(std::size_t flat) const {
  const auto idx = unflatten(flat);
  std::array<double, 3> x{0.0, 0.0, 0.0};
  for (int a = 0; a < dim; ++a) x[a] = coordinate(idx[a]);
  return x;
}

double LatticeSpec::radius(std::size_t flat) const {
  const auto x = position(flat);
  return std::sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]);
}

std::size_t LatticeSpec::origin() const { return flatten({n / 2, n / 2, n / 2}); }

void LatticeField::validate() const {
  grid.validate();
  if (values.size() != grid.size())
    throw ParameterError("lattice field size does not match its grid specification");
}

}  // namespace fracfront
