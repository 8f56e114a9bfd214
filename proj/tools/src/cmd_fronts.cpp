#include <fstream>
#include <ostream>
#include <sstream>

#include "common.hpp"
#include "fracfront/error.hpp"
#include "fracfront/fronts.hpp"
#include "fracfront/serialize.hpp"
#include "manifest.hpp"

namespace fracfront::cli {

int cmd_fronts(const GlobalOptions& g, const FrontsOptions& o, Streams s) {
  if (o.moments.empty() || o.bounds.empty()) throw ParameterError("fronts: --moments and --bounds are required");
  std::ifstream min(o.moments, std::ios::binary);
  if (!min) throw ParseError("cannot open moments file " + o.moments, 0, "");
  io::CsvHeader header;
  const MomentField field = io::read_moment_csv(min, &header);
  std::ifstream bin(o.bounds, std::ios::binary);
  if (!bin) throw ParseError("cannot open bounds file " + o.bounds, 0, "");
  nlohmann::json bj;
  try {
    bj = nlohmann::json::parse(bin);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("bounds JSON: ") + e.what(), 0, "");
  }
  const BoundsReport bounds = io::bounds_from_json(bj);
  if (!field.usable) s.err << "warning: moment field is flagged unusable (blow-up abort)\n";

  std::vector<double> thetas = o.thetas;
  if (thetas.empty()) {
    if (!bounds.theta_l_bound)
      throw ParameterError("fronts: the bounds report has no theta_l_bound; pass --theta values");
    thetas = default_theta_grid(*bounds.theta_l_bound, o.points);
  }
  FrontProfile profile = front_profile(field, thetas);
  profile.theta_l_bound = bounds.theta_l_bound;
  const FrontBracket bracket = bracket_fronts(profile, bounds);

  std::string source_hash;
  for (const auto& [k, v] : header)
    if (k == "manifest_hash") source_hash = v;
  std::ostringstream in;
  in << std::ifstream(o.moments, std::ios::binary).rdbuf() << bj.dump();
  std::vector<std::string> inputs;
  for (double t : thetas) inputs.push_back("theta=" + io::format_real(t));
  const std::string hash = input_hash("fronts", in.str(), inputs);

  const auto dir = resolve_out_dir(g);
  io::CsvHeader h{{"manifest_hash", hash}, {"command", "fronts"}, {"source_manifest_hash", source_hash},
                  {"version", FRACFRONT_VERSION}};
  std::ostringstream csv;
  io::write_front_csv(csv, profile, h);
  write_text_file(dir / "fronts.csv", csv.str());
  nlohmann::json j = io::to_json(bracket);
  j["manifest_hash"] = hash;
  j["source_manifest_hash"] = source_hash;
  j["notes"] = profile.notes;
  write_text_file(dir / "bracket.json", j.dump(2) + "\n");

  s.out << j.dump(2) << "\n";
  if (o.require_conclusive && (bracket.inconclusive || bracket.violation)) {
    s.err << "fronts: " << (bracket.violation ? "front-bound violation" : bracket.recommendation) << "\n";
    return kInconclusive;
  }
  return kOk;
}

}  // namespace fracfront::cli
