#pragma once

#include <functional>
#include <span>
#include <string>

namespace fracfront {

enum class SigmaKind { Linear, Tanh, Custom };

// Noise coefficient sigma(u). Linear is lambda*u, Tanh is lambda*tanh(u).
struct SigmaModel {
  SigmaKind kind = SigmaKind::Linear;
  double lambda = 0.0;
  // Used when kind == Custom. The front bound additionally needs sigma(0) = 0.
  std::function<double(double)> custom;

  double operator()(double u) const;
  // Sharp constants implied by the kind (Custom returns NaN: caller supplies them).
  double lipschitz() const;
  double cone() const;
  std::string name() const;
};

enum class InitialKind { Flat, Bump };

// Flat: u0 = height. Bump: height * exp(1 - 1/(1 - (r/radius)^2)) for r < radius, else 0.
struct InitialDatum {
  InitialKind kind = InitialKind::Flat;
  double height = 1.0;
  double radius = 1.0;

  double operator()(std::span<const double> x) const;
  // Radius outside which u0 vanishes; +inf for Flat.
  double support_radius() const;
  std::string name() const;
};

struct ModelParams {
  double beta = 0.5;
  double alpha = 2.0;
  double nu = 1.0;
  int dim = 1;
  double lip_sigma = 0.0;
  double l_sigma = 0.0;
  SigmaModel sigma;
  InitialDatum u0;

  // Linear sigma(u) = lambda*u with Lip = L = |lambda|.
  static ModelParams linear(double beta, int dim, double lambda, double nu = 1.0,
                            double alpha = 2.0);

  // Throws ParameterError. Enforces d < min(2, 1/beta) * alpha and L_sigma <= Lip_sigma.
  void validate() const;
  bool sigma_vanishes_at_zero() const;
  // beta * d / alpha, the exponent in the L2 norm of G_t.
  double l2_exponent() const { return beta * dim / alpha; }
  // Canonical text used for hashing and for echoing inputs.
  std::string canonical() const;
};

}  // namespace fracfront
