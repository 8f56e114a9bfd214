#include <charconv>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "fracfront/config.hpp"
#include "fracfront/error.hpp"

namespace fracfront {
namespace {

namespace pt = boost::property_tree;

// Recognized keys and defaults, in reference order.
const std::vector<std::pair<std::string, std::string>>& known_keys() {
  static const std::vector<std::pair<std::string, std::string>> keys = {
      {"model.beta", "0.5"},          {"model.alpha", "2"},
      {"model.nu", "1"},              {"model.dim", "1"},
      {"sigma.kind", "linear"},       {"sigma.lambda", "1"},
      {"u0.kind", "flat"},            {"u0.height", "1"},
      {"u0.radius", "1"},             {"grid.dx", "0.125"},
      {"grid.half_extent", "16"},     {"time.dt", "0.01"},
      {"time.horizon", "1"},          {"time.record_every", "1"},
      {"run.replicates", "64"},       {"run.seed", "1"},
      {"run.coupling", "left-point"}, {"run.blowup", "abort"},
      {"run.sampling", "auto"},
      {"run.theta_max", "-1"},        {"run.cache_limit_mb", "2048"},
      {"run.threads", "0"},           {"bounds.margin", "1.5"},
      {"bounds.eps", "0.5"},          {"bounds.t", "1"},
      {"bounds.u0_l2", "1"},          {"eval.rel_tolerance", "1e-11"},
      {"eval.max_terms", "5000"},     {"eval.quadrature_nodes", "4000"},
  };
  return keys;
}

// Line of the first "key" assignment inside "[section]", or 0.
std::size_t locate(std::string_view text, const std::string& dotted) {
  const auto dot = dotted.find('.');
  const std::string section = dotted.substr(0, dot);
  const std::string key = dotted.substr(dot + 1);
  std::istringstream in{std::string(text)};
  std::string line, current;
  for (std::size_t no = 1; std::getline(in, line); ++no) {
    const auto b = line.find_first_not_of(" \t");
    if (b == std::string::npos) continue;
    if (line[b] == '[') {
      const auto e = line.find(']', b);
      current = line.substr(b + 1, e == std::string::npos ? std::string::npos : e - b - 1);
      continue;
    }
    if (current != section) continue;
    const auto eq = line.find('=', b);
    if (eq == std::string::npos) continue;
    std::string k = line.substr(b, eq - b);
    while (!k.empty() && (k.back() == ' ' || k.back() == '\t')) k.pop_back();
    if (k == key) return no;
  }
  return 0;
}

class Reader {
 public:
  Reader(std::string_view text, const pt::ptree& tree) : text_(text) {
    for (const auto& [k, v] : known_keys()) values_[k] = v;
    for (const auto& [section, body] : tree) {
      if (body.empty() && !body.data().empty())
        throw ParseError("key outside any section: " + section, locate_top(section), section);
      for (const auto& [key, leaf] : body) {
        const std::string dotted = section + "." + key;
        if (!values_.count(dotted))
          throw ParseError("unknown config key " + dotted, locate(text_, dotted), dotted);
        values_[dotted] = leaf.data();
        present_.insert(dotted);
      }
    }
  }

  bool has(const std::string& k) const { return present_.count(k) > 0; }
  const std::string& str(const std::string& k) const { return values_.at(k); }

  double real(const std::string& k) const {
    const std::string& s = str(k);
    double v = 0.0;
    const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size()) fail(k, "not a number");
    return v;
  }

  std::uint64_t integer(const std::string& k) const {
    const std::string& s = str(k);
    std::uint64_t v = 0;
    const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size()) fail(k, "not a nonnegative integer");
    return v;
  }

  [[noreturn]] void fail(const std::string& k, const std::string& why) const {
    throw ParseError("config key " + k + " = '" + str(k) + "': " + why, locate(text_, k), k);
  }

 private:
  std::size_t locate_top(const std::string& key) const {
    std::istringstream in{std::string(text_)};
    std::string line;
    for (std::size_t no = 1; std::getline(in, line); ++no)
      if (line.find(key) != std::string::npos) return no;
    return 0;
  }

  std::string_view text_;
  std::map<std::string, std::string> values_;
  std::set<std::string> present_;
};

}  // namespace

RunConfig parse_config(std::string_view text, const std::string& origin) {
  pt::ptree tree;
  try {
    std::istringstream in{std::string(text)};
    pt::ini_parser::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ParseError(origin + ": " + e.message(), e.line(), "");
  }
  const Reader r(text, tree);

  RunConfig cfg;
  cfg.text = std::string(text);
  cfg.origin = origin;
  ModelParams& p = cfg.sim.params;
  p.beta = r.real("model.beta");
  p.alpha = r.real("model.alpha");
  p.nu = r.real("model.nu");
  p.dim = static_cast<int>(r.integer("model.dim"));
  const std::string& kind = r.str("sigma.kind");
  if (kind == "linear") p.sigma.kind = SigmaKind::Linear;
  else if (kind == "tanh") p.sigma.kind = SigmaKind::Tanh;
  else r.fail("sigma.kind", "expected linear or tanh");
  p.sigma.lambda = r.real("sigma.lambda");
  p.lip_sigma = p.sigma.lipschitz();
  p.l_sigma = p.sigma.cone();
  const std::string& u0 = r.str("u0.kind");
  if (u0 == "flat") p.u0.kind = InitialKind::Flat;
  else if (u0 == "bump") p.u0.kind = InitialKind::Bump;
  else r.fail("u0.kind", "expected flat or bump");
  p.u0.height = r.real("u0.height");
  p.u0.radius = r.real("u0.radius");
  p.validate();

  SimConfig& s = cfg.sim;
  const double dx = r.real("grid.dx");
  const double half = r.real("grid.half_extent");
  if (!(dx > 0.0)) r.fail("grid.dx", "must be > 0");
  if (!(half > 0.0)) r.fail("grid.half_extent", "must be > 0");
  s.grid = LatticeSpec::from_extent(p.dim, dx, half);
  s.dt = r.real("time.dt");
  s.horizon = r.real("time.horizon");
  if (!(s.dt > 0.0)) r.fail("time.dt", "must be > 0");
  if (!(s.horizon > 0.0)) r.fail("time.horizon", "must be > 0");
  const std::uint64_t every = r.integer("time.record_every");
  if (every == 0) r.fail("time.record_every", "must be >= 1");
  const std::size_t nt = s.steps();
  for (std::size_t n = 0; n <= nt; n += every) s.record_steps.push_back(n);
  if (s.record_steps.back() != nt) s.record_steps.push_back(nt);
  s.replicates = r.integer("run.replicates");
  s.base_seed = r.integer("run.seed");
  const std::string& coupling = r.str("run.coupling");
  if (coupling == "left-point") s.coupling = NoiseCoupling::LeftPoint;
  else if (coupling == "cell-integrated") s.coupling = NoiseCoupling::CellIntegrated;
  else r.fail("run.coupling", "expected left-point or cell-integrated");
  const std::string& blowup = r.str("run.blowup");
  if (blowup == "abort") s.blowup = BlowUpPolicy::Abort;
  else if (blowup == "tolerate") s.blowup = BlowUpPolicy::Tolerate;
  else r.fail("run.blowup", "expected abort or tolerate");
  const std::string& sampling = r.str("run.sampling");
  if (sampling == "auto") s.sampling = KernelSampling::Auto;
  else if (sampling == "spectral") s.sampling = KernelSampling::Spectral;
  else if (sampling == "pointwise") s.sampling = KernelSampling::Pointwise;
  else r.fail("run.sampling", "expected auto, spectral or pointwise");
  s.theta_max = r.real("run.theta_max");
  s.cache_limit_bytes = static_cast<std::size_t>(r.integer("run.cache_limit_mb")) << 20;
  s.threads = static_cast<unsigned>(r.integer("run.threads"));

  s.eval.rel_tolerance = r.real("eval.rel_tolerance");
  s.eval.max_terms = static_cast<std::size_t>(r.integer("eval.max_terms"));
  s.eval.quadrature_nodes = static_cast<std::size_t>(r.integer("eval.quadrature_nodes"));
  s.eval.validate();

  cfg.bounds.margin = r.real("bounds.margin");
  cfg.bounds.eps = r.real("bounds.eps");
  cfg.bounds.t = r.real("bounds.t");
  cfg.bounds.u0_l2_norm = r.real("bounds.u0_l2");
  cfg.bounds.eval = s.eval;
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open config file " + path.string(), 0, "");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str(), path.string());
}

std::string config_reference() {
  std::ostringstream os;
  std::string section;
  for (const auto& [k, v] : known_keys()) {
    const std::string sec = k.substr(0, k.find('.'));
    if (sec != section) {
      if (!section.empty()) os << "\n";
      os << "[" << sec << "]\n";
      section = sec;
    }
    os << k.substr(k.find('.') + 1) << " = " << v << "\n";
  }
  return os.str();
}

}  // namespace fracfront
