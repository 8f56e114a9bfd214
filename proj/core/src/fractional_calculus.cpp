#include <cmath>

#include "fracfront/error.hpp"
#include "fracfront/fractional_calculus.hpp"

namespace fracfront {

void SampledFunction::validate() const {
  if (times.size() != values.size())
    throw ParameterError("SampledFunction: times and values differ in length");
  if (times.size() < 2) throw ParameterError("SampledFunction: at least two samples required");
  if (times.front() != 0.0) throw ParameterError("SampledFunction: times[0] must be 0");
  for (std::size_t i = 1; i < times.size(); ++i)
    if (!(times[i] > times[i - 1]))
      throw ParameterError("SampledFunction: times must be strictly increasing");
  for (double v : values)
    if (!std::isfinite(v)) throw ParameterError("SampledFunction: values must be finite");
}

double SampledFunction::uniform_step() const {
  validate();
  const double h = times.back() / static_cast<double>(times.size() - 1);
  for (std::size_t i = 1; i < times.size(); ++i) {
    const double step = times[i] - times[i - 1];
    if (std::abs(step - h) > 1e-9 * h) throw ParameterError("SampledFunction: grid is not uniform");
  }
  return h;
}

SampledFunction caputo_derivative(const SampledFunction& f, double beta) {
  if (!(beta > 0.0 && beta < 1.0)) throw ParameterError("caputo_derivative: beta must lie in (0, 1)");
  const double h = f.uniform_step();
  const std::size_t n = f.times.size();
  const double e = 1.0 - beta;
  std::vector<double> b(n);
  for (std::size_t m = 0; m < n; ++m)
    b[m] = std::pow(static_cast<double>(m + 1), e) - std::pow(static_cast<double>(m), e);
  const double scale = std::pow(h, -beta) / std::tgamma(2.0 - beta);
  SampledFunction out{f.times, std::vector<double>(n, 0.0)};
  for (std::size_t i = 1; i < n; ++i) {
    double acc = 0.0;
    for (std::size_t j = 0; j < i; ++j) acc += b[i - j - 1] * (f.values[j + 1] - f.values[j]);
    out.values[i] = scale * acc;
  }
  return out;
}

SampledFunction fractional_integral(const SampledFunction& f, double gamma) {
  if (!(gamma > 0.0)) throw ParameterError("fractional_integral: gamma must be > 0");
  const double h = f.uniform_step();
  const std::size_t n = f.times.size();
  const double g1 = gamma + 1.0;
  auto p = [g1](double m) { return m <= 0.0 ? 0.0 : std::pow(m, g1); };
  // Interior weight depends only on the lag n - j.
  std::vector<double> lag(n, 0.0);
  for (std::size_t m = 1; m < n; ++m) {
    const double md = static_cast<double>(m);
    lag[m] = p(md + 1.0) - 2.0 * p(md) + p(md - 1.0);
  }
  const double scale = std::pow(h, gamma) / std::tgamma(gamma + 2.0);
  SampledFunction out{f.times, std::vector<double>(n, 0.0)};
  for (std::size_t i = 1; i < n; ++i) {
    const double id = static_cast<double>(i);
    double acc = (p(id - 1.0) - (id - 1.0 - gamma) * std::pow(id, gamma)) * f.values[0];
    for (std::size_t j = 1; j < i; ++j) acc += lag[i - j] * f.values[j];
    acc += f.values[i];
    out.values[i] = scale * acc;
  }
  return out;
}

}  // namespace fracfront
