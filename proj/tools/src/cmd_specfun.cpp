#include <cmath>
#include <memory>
#include <ostream>

#include "CLI11.hpp"
#include "common.hpp"
#include "fracfront/error.hpp"
#include "fracfront/fractional_calculus.hpp"
#include "fracfront/serialize.hpp"
#include "fracfront/specfun.hpp"

namespace fracfront::cli {
namespace {

using io::format_real;

// Values given explicitly plus an optional LO HI N grid.
std::vector<double> expand(const std::vector<double>& values, const std::vector<double>& range,
                           const char* name) {
  std::vector<double> out = values;
  if (!range.empty()) {
    if (range.size() != 3 || !(range[2] >= 2.0) || range[2] != std::floor(range[2]))
      throw ParameterError(std::string("--") + name + "-range takes LO HI N with integer N >= 2");
    const auto n = static_cast<std::size_t>(range[2]);
    for (std::size_t i = 0; i < n; ++i)
      out.push_back(range[0] + (range[1] - range[0]) * static_cast<double>(i) / static_cast<double>(n - 1));
  }
  if (out.empty()) throw ParameterError(std::string("specfun: give --") + name + " or --" + name + "-range");
  return out;
}

struct Args {
  double beta = 0.5;
  double gamma = 1.0;
  double t = 1.0;
  double power = 1.0;
  double horizon = 1.0;
  int d = 1;
  int k = 1;
  int n = 0;
  std::size_t points = 65;
  std::vector<double> values;
  std::vector<double> range;
  std::vector<double> kvalues;
};

template <class Body>
void attach(CLI::App* sub, const std::shared_ptr<Args>& a, const GlobalOptions& g, Streams s, int& code,
            Body body) {
  sub->callback([a, &g, s, &code, body] {
    try {
      const EvalOptions eval = eval_options(g);
      body(*a, eval, s.out);
      code = kOk;
    } catch (const std::exception& e) {
      s.err << "error: " << e.what() << "\n";
      code = exit_code_for(e);
    }
  });
}

}  // namespace

void add_specfun_commands(CLI::App& specfun, const GlobalOptions& g, Streams s, int& code) {
  specfun.require_subcommand(1);

  {
    auto a = std::make_shared<Args>();
    CLI::App* sub = specfun.add_subcommand("ml", "Mittag-Leffler function E_beta(z)");
    sub->add_option("--beta", a->beta, "order in (0, 1]")->required();
    sub->add_option("--z", a->values, "argument(s)");
    sub->add_option("--z-range", a->range, "LO HI N grid")->expected(3);
    attach(sub, a, g, s, code, [](const Args& a, const EvalOptions& eval, std::ostream& out) {
      const auto zs = expand(a.values, a.range, "z");
      std::vector<double> v;
      for (double z : zs) v.push_back(mittag_leffler(a.beta, z, eval));
      out << "beta,z,E\n";
      for (std::size_t i = 0; i < zs.size(); ++i)
        out << format_real(a.beta) << "," << format_real(zs[i]) << "," << format_real(v[i]) << "\n";
    });
  }
  {
    auto a = std::make_shared<Args>();
    CLI::App* sub = specfun.add_subcommand("stable", "one-sided stable density g_beta(w)");
    sub->add_option("--beta", a->beta, "index in (0, 1)")->required();
    sub->add_option("--w", a->values, "argument(s) > 0");
    sub->add_option("--w-range", a->range, "LO HI N grid")->expected(3);
    attach(sub, a, g, s, code, [](const Args& a, const EvalOptions& eval, std::ostream& out) {
      const auto ws = expand(a.values, a.range, "w");
      std::vector<double> v;
      for (double w : ws) v.push_back(stable_pdf(a.beta, w, eval));
      out << "beta,w,g\n";
      for (std::size_t i = 0; i < ws.size(); ++i)
        out << format_real(a.beta) << "," << format_real(ws[i]) << "," << format_real(v[i]) << "\n";
    });
  }
  {
    auto a = std::make_shared<Args>();
    CLI::App* sub = specfun.add_subcommand("invsub-moment", "E(E_t^k) of the inverse stable subordinator");
    sub->add_option("--beta", a->beta, "index in (0, 1]")->required();
    sub->add_option("--k", a->kvalues, "moment order(s) >= 0")->required();
    sub->add_option("--t", a->t, "time >= 0")->required();
    attach(sub, a, g, s, code, [](const Args& a, const EvalOptions&, std::ostream& out) {
      std::vector<double> v;
      for (double k : a.kvalues) v.push_back(inv_subordinator_moment(a.beta, k, a.t));
      out << "beta,k,t,moment\n";
      for (std::size_t i = 0; i < v.size(); ++i)
        out << format_real(a.beta) << "," << format_real(a.kvalues[i]) << "," << format_real(a.t) << ","
            << format_real(v[i]) << "\n";
    });
  }
  {
    auto a = std::make_shared<Args>();
    CLI::App* sub = specfun.add_subcommand("a-coeff", "a_k^d(beta) = E(D_1^(-beta (k - d/4)))");
    sub->add_option("--beta", a->beta, "index in (0, 1)")->required();
    sub->add_option("--d", a->d, "dimension 1..3")->required();
    sub->add_option("--k", a->kvalues, "order(s), nonnegative integers")->required();
    attach(sub, a, g, s, code, [](const Args& a, const EvalOptions& eval, std::ostream& out) {
      std::vector<double> v;
      for (double k : a.kvalues) {
        if (k < 0 || k != std::floor(k)) throw ParameterError("a-coeff: k must be a nonnegative integer");
        v.push_back(a_coeff(a.beta, a.d, static_cast<int>(k), eval));
      }
      out << "beta,d,k,a\n";
      for (std::size_t i = 0; i < v.size(); ++i)
        out << format_real(a.beta) << "," << a.d << "," << a.kvalues[i] << "," << format_real(v[i]) << "\n";
    });
  }
  {
    auto a = std::make_shared<Args>();
    CLI::App* sub = specfun.add_subcommand("b-coeff", "b_{k,n}(beta) = int_0^t exp(-gamma s) s^(beta (k+n-d/2)) ds");
    sub->add_option("--beta", a->beta)->required();
    sub->add_option("--d", a->d)->required();
    sub->add_option("--gamma", a->gamma)->required();
    sub->add_option("--t", a->t)->required();
    sub->add_option("--k", a->k)->required();
    sub->add_option("--n", a->n)->required();
    attach(sub, a, g, s, code, [](const Args& a, const EvalOptions&, std::ostream& out) {
      const double v = b_coeff(a.beta, a.d, a.gamma, a.t, a.k, a.n);
      out << "beta,d,gamma,t,k,n,b\n"
          << format_real(a.beta) << "," << a.d << "," << format_real(a.gamma) << "," << format_real(a.t) << ","
          << a.k << "," << a.n << "," << format_real(v) << "\n";
    });
  }
  {
    auto a = std::make_shared<Args>();
    CLI::App* sub = specfun.add_subcommand("caputo", "Caputo derivative of f(t) = t^p on a uniform grid");
    sub->add_option("--beta", a->beta, "order in (0, 1)")->required();
    sub->add_option("--power", a->power, "p >= 0")->default_val(1.0);
    sub->add_option("--horizon", a->horizon, "grid end T")->default_val(1.0);
    sub->add_option("--points", a->points, "grid points")->default_val(65);
    attach(sub, a, g, s, code, [](const Args& a, const EvalOptions&, std::ostream& out) {
      if (!(a.power >= 0.0)) throw ParameterError("caputo: power must be >= 0");
      SampledFunction f;
      for (std::size_t i = 0; i < a.points; ++i) {
        const double t = a.horizon * static_cast<double>(i) / static_cast<double>(a.points - 1);
        f.times.push_back(t);
        f.values.push_back(std::pow(t, a.power));
      }
      const SampledFunction dv = caputo_derivative(f, a.beta);
      const double c = a.power == 0.0 ? 0.0 : std::tgamma(1.0 + a.power) / std::tgamma(1.0 + a.power - a.beta);
      out << "t,f,caputo,exact\n";
      for (std::size_t i = 0; i < dv.times.size(); ++i) {
        const double t = dv.times[i];
        const double exact = t == 0.0 ? 0.0 : c * std::pow(t, a.power - a.beta);
        out << format_real(t) << "," << format_real(f.values[i]) << "," << format_real(dv.values[i]) << ","
            << format_real(exact) << "\n";
      }
    });
  }
  {
    auto a = std::make_shared<Args>();
    CLI::App* sub = specfun.add_subcommand("frac-int", "fractional integral I^gamma of f(t) = t^p");
    sub->add_option("--gamma", a->gamma, "order > 0")->required();
    sub->add_option("--power", a->power, "p >= 0")->default_val(1.0);
    sub->add_option("--horizon", a->horizon, "grid end T")->default_val(1.0);
    sub->add_option("--points", a->points, "grid points")->default_val(65);
    attach(sub, a, g, s, code, [](const Args& a, const EvalOptions&, std::ostream& out) {
      if (!(a.power >= 0.0)) throw ParameterError("frac-int: power must be >= 0");
      SampledFunction f;
      for (std::size_t i = 0; i < a.points; ++i) {
        const double t = a.horizon * static_cast<double>(i) / static_cast<double>(a.points - 1);
        f.times.push_back(t);
        f.values.push_back(std::pow(t, a.power));
      }
      const SampledFunction iv = fractional_integral(f, a.gamma);
      const double c = std::tgamma(1.0 + a.power) / std::tgamma(1.0 + a.power + a.gamma);
      out << "t,f,integral,exact\n";
      for (std::size_t i = 0; i < iv.times.size(); ++i) {
        const double t = iv.times[i];
        out << format_real(t) << "," << format_real(f.values[i]) << "," << format_real(iv.values[i]) << ","
            << format_real(c * std::pow(t, a.power + a.gamma)) << "\n";
      }
    });
  }
}

}  // namespace fracfront::cli
