#pragma once

#include <vector>

namespace fracfront {

// Samples of a function of time on a grid starting at 0.
struct SampledFunction {
  std::vector<double> times;
  std::vector<double> values;

  void validate() const;
  // Throws ParameterError unless the grid spacing is uniform; returns the step.
  double uniform_step() const;
};

// Discrete Caputo derivative of order beta in (0, 1) by the L1 product rule.
SampledFunction caputo_derivative(const SampledFunction& f, double beta);

// Riemann-Liouville integral of order gamma > 0 by product trapezoidal weights.
SampledFunction fractional_integral(const SampledFunction& f, double gamma);

}  // namespace fracfront
