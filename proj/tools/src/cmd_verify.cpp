#include <array>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "common.hpp"
#include "fracfront/bounds.hpp"
#include "fracfront/config.hpp"
#include "fracfront/error.hpp"
#include "fracfront/kernel.hpp"
#include "fracfront/serialize.hpp"
#include "fracfront/specfun.hpp"

namespace fracfront::cli {
namespace {

struct Check {
  std::string name;
  bool passed = false;
  bool hypothesis = false;
  double measured = 0.0;
  double tolerance = 0.0;
  std::string detail;
};

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

template <class F>
Check run_check(const std::string& name, double tol, F&& f) {
  Check c;
  c.name = name;
  c.tolerance = tol;
  try {
    c.measured = f(c.detail);
    c.passed = c.measured <= tol;
  } catch (const HypothesisViolation& e) {
    c.hypothesis = true;
    c.detail = std::string("hypothesis violation: ") + e.what();
  } catch (const Error& e) {
    c.detail = e.what();
  }
  return c;
}

std::vector<Check> suite(const ModelParams& p, const EvalOptions& eval, unsigned threads) {
  std::vector<Check> out;
  const double t = 1.0;

  out.push_back(run_check("kernel mass", 1e-10, [&](std::string& detail) {
    const LatticeSpec grid = recommended_lattice(p, t, kernel_width(p, t) / 8.0, 12.0 * kernel_width(p, t));
    FourierOptions fo;
    fo.eval = eval;
    fo.threads = threads;
    const KernelTable k = kernel_grid_fourier(p, t, grid, fo);
    detail = "spectral table, " + std::to_string(grid.size()) + " sites";
    return std::abs(k.mass() - 1.0);
  }));

  for (double ti : {0.5, 1.0, 2.0}) {
    std::ostringstream name;
    name << "plancherel vs C* (t=" << ti << ")";
    out.push_back(run_check(name.str(), 1e-3, [&](std::string& detail) {
      L2Options lo;
      lo.eval = eval;
      lo.threads = threads;
      const double l2 = kernel_l2(p, ti, lo);
      const double pred = cstar(p, eval) * std::pow(ti, -p.l2_exponent());
      std::ostringstream os;
      os << std::setprecision(12) << "int G^2 = " << l2 << ", C* t^(-beta d/alpha) = " << pred;
      detail = os.str();
      return rel(l2, pred);
    }));
  }

  if (p.alpha == 2.0) {
    for (double lam : {0.5, 1.0}) {
      std::ostringstream name;
      name << "exponential moment vs E_beta (|lambda|=" << lam << ")";
      out.push_back(run_check(name.str(), 1e-6, [&](std::string& detail) {
        std::vector<double> l(p.dim, 0.0);
        l[0] = lam;
        ExpMomentOptions eo;
        eo.eval = eval;
        const double m = exp_moment(p, t, l, eo);
        const double e = mittag_leffler(p.beta, p.nu * lam * lam * std::pow(t, p.beta), eval);
        std::ostringstream os;
        os << std::setprecision(12) << "moment = " << m << ", E_beta = " << e;
        detail = os.str();
        return rel(m, e);
      }));
    }

    out.push_back(run_check("route agreement (subordination vs Fourier)", p.dim == 3 ? 1e-3 : 1e-5,
                            [&](std::string& detail) {
      const double w = kernel_width(p, t);
      const LatticeSpec grid = p.dim == 3 ? LatticeSpec::from_extent(3, w / 4.0, 16.0 * w)
                                          : LatticeSpec::from_extent(p.dim, w / 8.0, 24.0 * w);
      FourierOptions fo;
      fo.view = FourierView::Pointwise;
      fo.eval = eval;
      fo.threads = threads;
      const KernelTable k = kernel_grid_fourier(p, t, grid, fo);
      double worst = 0.0;
      std::size_t compared = 0;
      for (double r : {0.25, 0.5, 1.0, 2.0, 4.0}) {
        std::array<std::size_t, 3> idx{grid.n / 2, grid.n / 2, grid.n / 2};
        idx[0] += static_cast<std::size_t>(std::llround(r * w / grid.dx));
        const std::size_t site = grid.flatten(idx);
        const double fourier = k.values[site];
        const double sub = kernel_radial_subordination(p, t, grid.radius(site), eval);
        if (sub < 1e-8 * k.peak()) continue;
        worst = std::max(worst, rel(fourier, sub));
        ++compared;
      }
      detail = std::to_string(compared) + " sites compared on a " + std::to_string(grid.n) + "^" +
               std::to_string(p.dim) + " lattice";
      return worst;
    }));
  }

  if (p.beta < 1.0) {
    out.push_back(run_check("a_k^d <= 3 Gamma(1+k)/Gamma(1+beta k), k = 1..20", 0.0, [&](std::string& detail) {
      double worst = -1e300;
      for (int k = 1; k <= 20; ++k)
        worst = std::max(worst, a_coeff(p.beta, p.dim, k, eval) / a_coeff_bound(p.beta, k) - 1.0);
      std::ostringstream os;
      os << "max (a / bound - 1) = " << worst;
      detail = os.str();
      return std::max(0.0, worst);
    }));
    out.push_back(run_check("a_k^d vs Gamma(1+r)/Gamma(1+beta r), k = 0..10", 1e-6, [&](std::string&) {
      double worst = 0.0;
      for (int k = 0; k <= 10; ++k) {
        const double r = k - p.dim / 4.0;
        worst = std::max(worst, rel(a_coeff(p.beta, p.dim, k, eval),
                                    std::exp(std::lgamma(1.0 + r) - std::lgamma(1.0 + p.beta * r))));
      }
      return worst;
    }));
  }

  out.push_back(run_check("b_{k,n} Cauchy-Schwarz and diagonal bounds", 0.0, [&](std::string& detail) {
    double worst = 0.0;
    std::size_t tuples = 0;
    for (int k = 0; k <= 6; ++k)
      for (int n = 0; n <= 6; ++n)
        for (double gamma : {0.5, 1.0, 2.0})
          for (double tt : {1.0, 10.0}) {
            const double lo = p.beta * (2.0 * std::min(k, n) - p.dim / 2.0);
            if (!(lo > -1.0)) continue;
            const double b = b_coeff(p.beta, p.dim, gamma, tt, k, n);
            const double bkk = b_coeff(p.beta, p.dim, gamma, tt, k, k);
            const double bnn = b_coeff(p.beta, p.dim, gamma, tt, n, n);
            worst = std::max(worst, b / std::sqrt(bkk * bnn) - 1.0 - 1e-13);
            worst = std::max(worst, bkk / b_coeff_diagonal_bound(p.beta, p.dim, gamma, k) - 1.0 - 1e-13);
            ++tuples;
          }
    detail = std::to_string(tuples) + " tuples";
    return std::max(0.0, worst);
  }));

  if (p.lip_sigma > 0.0 && p.beta * p.dim < 2.0) {
    out.push_back(run_check("Young constant closed form at gamma^beta = 2 nu c^2", 1e-12, [&](std::string& detail) {
      BoundsOptions bo;
      bo.eval = eval;
      const BoundsReport r = compute_bounds(p, bo);
      if (!r.young_identity_gap) throw Error("Young constant unavailable for these parameters");
      detail = "c = " + io::format_real(*r.admissible_c);
      return *r.young_identity_gap;
    }));
  }
  return out;
}

}  // namespace

int cmd_verify(const GlobalOptions& g, Streams s) {
  if (g.config.empty()) throw ParameterError("verify: --config is required");
  const RunConfig cfg = load_config(g.config);
  const std::vector<Check> checks = suite(cfg.params(), eval_options(g), g.threads);
  bool any_hypothesis = false;
  std::size_t failed = 0;
  for (const Check& c : checks) {
    s.out << (c.passed ? "PASS" : "FAIL") << "  " << c.name << "  measured=" << io::format_real(c.measured)
          << "  tol=" << io::format_real(c.tolerance);
    if (!c.detail.empty()) s.out << "  (" << c.detail << ")";
    s.out << "\n";
    if (!c.passed) {
      ++failed;
      any_hypothesis = any_hypothesis || c.hypothesis;
    }
  }
  s.out << (checks.size() - failed) << "/" << checks.size() << " checks passed\n";
  if (failed == 0) return kOk;
  return any_hypothesis ? kValidation : kNumerical;
}

}  // namespace fracfront::cli
