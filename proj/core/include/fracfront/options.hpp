#pragma once

#include <cstddef>

namespace fracfront {

// Accuracy controls shared by series and quadrature evaluations.
struct EvalOptions {
  double rel_tolerance = 1e-11;
  double abs_tolerance = 0.0;
  std::size_t max_terms = 5000;
  // Upper bound on adaptive Gauss-Kronrod panels per integral.
  std::size_t quadrature_nodes = 4000;

  void validate() const;
};

}  // namespace fracfront
