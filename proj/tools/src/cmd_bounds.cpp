#include <ostream>

#include "common.hpp"
#include "fracfront/config.hpp"
#include "fracfront/error.hpp"
#include "fracfront/serialize.hpp"
#include "manifest.hpp"

namespace fracfront::cli {

int cmd_bounds(const GlobalOptions& g, Streams s) {
  if (g.config.empty()) throw ParameterError("bounds: --config is required");
  RunConfig cfg = load_config(g.config);
  cfg.bounds.eval = eval_options(g);
  const BoundsReport report = compute_bounds(cfg.params(), cfg.bounds);
  nlohmann::json j = io::to_json(report);
  j["manifest_hash"] = input_hash("bounds", cfg.text, {});
  const std::string text = j.dump(2) + "\n";
  s.out << text;
  const auto dir = resolve_out_dir(g);
  write_text_file(dir / "bounds.json", text);
  for (const auto& issue : report.issues)
    s.err << "bounds: " << issue.quantity << " [" << issue.kind << "]: " << issue.message << "\n";
  return report.ok() ? kOk : kValidation;
}

}  // namespace fracfront::cli
