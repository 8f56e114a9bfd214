#include "fracfront/error.hpp"
#include "fracfront/options.hpp"

namespace fracfront {

void EvalOptions::validate() const {
  if (!(rel_tolerance > 0.0 && rel_tolerance < 1.0))
    throw ParameterError("rel_tolerance must lie in (0, 1)");
  if (!(abs_tolerance >= 0.0)) throw ParameterError("abs_tolerance must be >= 0");
  if (max_terms < 8) throw ParameterError("max_terms must be >= 8");
  if (quadrature_nodes < 16) throw ParameterError("quadrature_nodes must be >= 16");
}

}  // namespace fracfront
