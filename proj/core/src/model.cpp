#include <cmath>
#include <iomanip>
#include <limits>
#include <sstream>

#include "fracfront/error.hpp"
#include "fracfront/model.hpp"

namespace fracfront {

double SigmaModel::operator()(double u) const {
  switch (kind) {
    case SigmaKind::Linear: return lambda * u;
    case SigmaKind::Tanh: return lambda * std::tanh(u);
    case SigmaKind::Custom: return custom(u);
  }
  return 0.0;
}

double SigmaModel::lipschitz() const {
  if (kind == SigmaKind::Custom) return std::numeric_limits<double>::quiet_NaN();
  return std::abs(lambda);
}

double SigmaModel::cone() const {
  switch (kind) {
    case SigmaKind::Linear: return std::abs(lambda);
    // tanh(z)/z -> 0 as |z| -> inf.
    case SigmaKind::Tanh: return 0.0;
    case SigmaKind::Custom: return std::numeric_limits<double>::quiet_NaN();
  }
  return 0.0;
}

std::string SigmaModel::name() const {
  switch (kind) {
    case SigmaKind::Linear: return "linear";
    case SigmaKind::Tanh: return "tanh";
    case SigmaKind::Custom: return "custom";
  }
  return "unknown";
}

double InitialDatum::operator()(std::span<const double> x) const {
  if (kind == InitialKind::Flat) return height;
  double r2 = 0.0;
  for (double v : x) r2 += v * v;
  const double q = r2 / (radius * radius);
  if (q >= 1.0) return 0.0;
  return height * std::exp(1.0 - 1.0 / (1.0 - q));
}

double InitialDatum::support_radius() const {
  return kind == InitialKind::Flat ? std::numeric_limits<double>::infinity() : radius;
}

std::string InitialDatum::name() const { return kind == InitialKind::Flat ? "flat" : "bump"; }

ModelParams ModelParams::linear(double beta, int dim, double lambda, double nu, double alpha) {
  ModelParams p;
  p.beta = beta;
  p.alpha = alpha;
  p.nu = nu;
  p.dim = dim;
  p.sigma.kind = SigmaKind::Linear;
  p.sigma.lambda = lambda;
  p.lip_sigma = std::abs(lambda);
  p.l_sigma = std::abs(lambda);
  return p;
}

void ModelParams::validate() const {
  if (!(beta > 0.0 && beta <= 1.0)) throw ParameterError("beta must lie in (0, 1]");
  if (!(alpha > 0.0 && alpha <= 2.0)) throw ParameterError("alpha must lie in (0, 2]");
  if (!(nu > 0.0) || !std::isfinite(nu)) throw ParameterError("nu must be a positive finite number");
  if (dim < 1 || dim > 3) throw ParameterError("dim must be 1, 2 or 3");
  if (!(dim < std::min(2.0, 1.0 / beta) * alpha)) {
    std::ostringstream msg;
    msg << "standing assumption d < min(2, 1/beta)*alpha fails: d=" << dim << ", beta=" << beta
        << ", alpha=" << alpha;
    throw ParameterError(msg.str());
  }
  if (!(lip_sigma >= 0.0) || !std::isfinite(lip_sigma)) throw ParameterError("lip_sigma must be >= 0");
  if (!(l_sigma >= 0.0) || !std::isfinite(l_sigma)) throw ParameterError("l_sigma must be >= 0");
  if (l_sigma > lip_sigma * (1.0 + 1e-12)) throw ParameterError("l_sigma must not exceed lip_sigma");
  switch (sigma.kind) {
    case SigmaKind::Linear:
    case SigmaKind::Tanh:
      if (!std::isfinite(sigma.lambda)) throw ParameterError("sigma lambda must be finite");
      if (std::abs(lip_sigma - sigma.lipschitz()) > 1e-12 * (1.0 + lip_sigma))
        throw ParameterError("lip_sigma disagrees with the Lipschitz constant of sigma");
      if (l_sigma > sigma.cone() + 1e-12 * (1.0 + l_sigma))
        throw ParameterError("l_sigma exceeds inf |sigma(z)/z| for this sigma");
      break;
    case SigmaKind::Custom:
      if (!sigma.custom) throw ParameterError("custom sigma requires a callable");
      break;
  }
  if (!std::isfinite(u0.height)) throw ParameterError("u0 height must be finite");
  if (u0.kind == InitialKind::Bump && !(u0.radius > 0.0 && std::isfinite(u0.radius)))
    throw ParameterError("u0 bump radius must be positive");
}

bool ModelParams::sigma_vanishes_at_zero() const {
  if (sigma.kind == SigmaKind::Custom) return sigma.custom && sigma.custom(0.0) == 0.0;
  return true;
}

std::string ModelParams::canonical() const {
  std::ostringstream os;
  os << std::setprecision(17);
  os << "beta=" << beta << ";alpha=" << alpha << ";nu=" << nu << ";dim=" << dim
     << ";lip_sigma=" << lip_sigma << ";l_sigma=" << l_sigma << ";sigma=" << sigma.name()
     << ";lambda=" << sigma.lambda << ";u0=" << u0.name() << ";height=" << u0.height
     << ";radius=" << u0.radius;
  return os.str();
}

}  // namespace fracfront
