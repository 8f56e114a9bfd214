#include <ostream>
#include <sstream>

#include "common.hpp"
#include "fracfront/config.hpp"
#include "fracfront/error.hpp"
#include "fracfront/hash.hpp"
#include "fracfront/serialize.hpp"
#include "manifest.hpp"

namespace fracfront::cli {

int cmd_simulate(const GlobalOptions& g, const SimulateOptions& o, Streams s) {
  if (g.config.empty()) throw ParameterError("simulate: --config is required");
  RunConfig cfg = load_config(g.config);
  SimConfig& sim = cfg.sim;
  if (g.seed) sim.base_seed = *g.seed;
  if (o.replicates) sim.replicates = *o.replicates;
  if (g.tolerance) sim.eval = eval_options(g);
  sim.threads = g.threads;
  sim.validate();
  for (const auto& w : sim.warnings()) s.err << "warning: " << w << "\n";

  const SimCost cost = estimate_cost(sim);
  if (o.dry_run) {
    s.out << "config: " << cfg.origin << " (valid)\n"
          << "lattice: " << sim.grid.n << "^" << sim.grid.dim << " sites, dx = " << io::format_real(sim.grid.dx)
          << ", half-extent = " << io::format_real(sim.grid.half_extent()) << "\n"
          << "steps: " << cost.steps << " (dt = " << io::format_real(sim.dt) << ")\n"
          << "replicates: " << sim.replicates << "\n"
          << "kernel cache bytes: " << cost.kernel_cache_bytes << "\n"
          << "history bytes per worker: " << cost.history_bytes_per_worker << "\n"
          << "ffts per replicate: " << cost.ffts_per_replicate << "\n"
          << "history multiply-adds per replicate (N_t^2 term): " << cost.history_madds_per_replicate << "\n";
    return kOk;
  }

  RunManifest m;
  m.command = "simulate";
  m.argv = g.argv;
  m.config_hash = hex64(fnv1a64(cfg.text));
  m.base_seed = sim.base_seed;
  m.warnings = sim.warnings();
  std::ostringstream tol;
  tol << "rel_tolerance=" << io::format_real(sim.eval.rel_tolerance);
  m.manifest_hash = input_hash("simulate", cfg.text,
                               {"seed=" + std::to_string(sim.base_seed),
                                "replicates=" + std::to_string(sim.replicates), tol.str()});
  m.start = std::chrono::system_clock::now();
  const MomentField field = run_replicates(sim);
  m.stop = std::chrono::system_clock::now();
  for (const auto& w : field.warnings)
    if (std::find(m.warnings.begin(), m.warnings.end(), w) == m.warnings.end()) m.warnings.push_back(w);

  const auto dir = resolve_out_dir(g);
  const io::CsvHeader header = m.csv_header();
  {
    std::ostringstream os;
    io::write_moment_csv(os, field, header);
    write_text_file(dir / "moments.csv", os.str());
    m.outputs.push_back("moments.csv");
  }
  {
    std::ostringstream os;
    os << "# fracfront site_mean\n";
    for (const auto& [k, v] : header) os << "# " << k << ": " << v << "\n";
    os << "# units: t: time; site_mean, std_err: u^2\n";
    os << "t,site_mean,std_err\n";
    for (std::size_t r = 0; r < field.times.size(); ++r)
      os << io::format_real(field.times[r]) << "," << io::format_real(field.site_mean[r]) << ","
         << io::format_real(field.site_mean_err[r]) << "\n";
    write_text_file(dir / "site_mean.csv", os.str());
    m.outputs.push_back("site_mean.csv");
  }
  m.outputs.push_back("manifest.json");
  nlohmann::json j = m.to_json();
  j["config"] = io::to_json(sim);
  j["replicates_used"] = field.replicates;
  j["blowups"] = field.blowups;
  j["blown_replicates"] = field.blown_replicates;
  j["usable"] = field.usable;
  write_text_file(dir / "manifest.json", j.dump(2) + "\n");

  s.out << "wrote " << (dir / "moments.csv").string() << " (" << field.replicates << " replicates, "
        << field.times.size() << " records)\n";
  if (!field.usable) {
    s.err << "error: run aborted by blow-up: " << field.blowup_message << "\n";
    return kNumerical;
  }
  return kOk;
}

}  // namespace fracfront::cli
