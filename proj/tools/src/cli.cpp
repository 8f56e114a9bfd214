#include <cstdlib>
#include <ostream>

#include "CLI11.hpp"
#include "common.hpp"
#include "fracfront/error.hpp"

namespace fracfront::cli {

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const ParameterError*>(&e) || dynamic_cast<const ParseError*>(&e) ||
      dynamic_cast<const HypothesisViolation*>(&e) || dynamic_cast<const UnsupportedRoute*>(&e) ||
      dynamic_cast<const DegenerateInput*>(&e))
    return kValidation;
  if (dynamic_cast<const EstimationError*>(&e)) return kInconclusive;
  return kNumerical;
}

std::filesystem::path resolve_out_dir(const GlobalOptions& g) {
  std::filesystem::path dir = ".";
  if (!g.out_dir.empty()) dir = g.out_dir;
  else if (const char* env = std::getenv("FRACFRONT_OUT_DIR"); env && *env) dir = env;
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error("cannot create output directory " + dir.string() + ": " + ec.message());
  return dir;
}

EvalOptions eval_options(const GlobalOptions& g) {
  EvalOptions e;
  if (g.tolerance) e.rel_tolerance = *g.tolerance;
  e.validate();
  return e;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  GlobalOptions g;
  g.argv = args;
  Streams s{out, err};
  int code = kOk;

  CLI::App app{"Time-fractional stochastic heat equation: kernels, bounds, Monte-Carlo fronts", "fracfront"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", FRACFRONT_VERSION);
  app.add_option("--config", g.config, "INI configuration file");
  app.add_option("--out", g.out_dir, "output directory (default $FRACFRONT_OUT_DIR or .)");
  app.add_option("--seed", g.seed, "base seed override");
  app.add_option("--threads", g.threads, "worker threads (0 = available parallelism)");
  app.add_option("--tolerance", g.tolerance, "relative tolerance for series and quadrature");

  CLI::App* specfun = app.add_subcommand("specfun", "evaluate special functions");
  specfun->fallthrough();
  add_specfun_commands(*specfun, g, s, code);

  CLI::App* verify = app.add_subcommand("verify", "run the kernel identity and inequality suite");
  verify->fallthrough();

  CLI::App* bounds = app.add_subcommand("bounds", "emit the explicit constants as JSON");
  bounds->fallthrough();

  SimulateOptions so;
  CLI::App* simulate = app.add_subcommand("simulate", "Monte-Carlo moments of the mild solution");
  simulate->fallthrough();
  simulate->add_option("--replicates", so.replicates, "replicate count override");
  simulate->add_flag("--dry-run", so.dry_run, "validate and print cost estimates only");

  FrontsOptions fo;
  CLI::App* fronts = app.add_subcommand("fronts", "front profile and brackets from a moment field");
  fronts->fallthrough();
  fronts->add_option("--moments", fo.moments, "moments.csv from simulate")->required();
  fronts->add_option("--bounds", fo.bounds, "bounds.json from bounds")->required();
  fronts->add_option("--theta", fo.thetas, "front speeds (default: grid over [0, 2 theta_L])");
  fronts->add_option("--points", fo.points, "default grid size")->default_val(16);
  fronts->add_flag("--require-conclusive", fo.require_conclusive, "exit 3 when no bracket is established");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::CallForVersion& e) {
    out << FRACFRONT_VERSION << "\n";
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kValidation;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(e);
  }
  if (specfun->parsed()) return code;
  try {
    if (verify->parsed()) return cmd_verify(g, s);
    if (bounds->parsed()) return cmd_bounds(g, s);
    if (simulate->parsed()) return cmd_simulate(g, so, s);
    if (fronts->parsed()) return cmd_fronts(g, fo, s);
  } catch (const BlowUpError& e) {
    err << "error: " << e.what() << "\n";
    return kNumerical;
  } catch (const ParseError& e) {
    err << "error: " << e.what();
    if (e.line() > 0) err << " (line " << e.line() << ")";
    if (!e.field().empty()) err << " [field " << e.field() << "]";
    err << "\n";
    return kValidation;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(e);
  }
  return kValidation;
}

}  // namespace fracfront::cli
