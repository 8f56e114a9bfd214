#pragma once

#include <exception>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "cli.hpp"
#include "fracfront/options.hpp"

namespace CLI {
class App;
}

namespace fracfront::cli {

struct GlobalOptions {
  std::vector<std::string> argv;
  std::string config;
  std::string out_dir;
  std::optional<std::uint64_t> seed;
  unsigned threads = 0;
  std::optional<double> tolerance;
};

struct Streams {
  std::ostream& out;
  std::ostream& err;
};

// Exit code for an exception escaping a command.
int exit_code_for(const std::exception& e);
// --out, else $FRACFRONT_OUT_DIR, else the working directory. Created if missing.
std::filesystem::path resolve_out_dir(const GlobalOptions& g);
EvalOptions eval_options(const GlobalOptions& g);

// Registers `specfun <fn>` subcommands; the chosen one stores its exit code in `code`.
void add_specfun_commands(CLI::App& specfun, const GlobalOptions& g, Streams s, int& code);
int cmd_verify(const GlobalOptions& g, Streams s);
int cmd_bounds(const GlobalOptions& g, Streams s);

struct SimulateOptions {
  std::optional<std::size_t> replicates;
  bool dry_run = false;
};
int cmd_simulate(const GlobalOptions& g, const SimulateOptions& o, Streams s);

struct FrontsOptions {
  std::string moments;
  std::string bounds;
  std::vector<double> thetas;
  std::size_t points = 16;
  bool require_conclusive = false;
};
int cmd_fronts(const GlobalOptions& g, const FrontsOptions& o, Streams s);

}  // namespace fracfront::cli
