#include <charconv>
#include <cmath>
#include <iomanip>
#include <istream>
#include <limits>
#include <map>
#include <ostream>
#include <sstream>

#include "fracfront/error.hpp"
#include "fracfront/serialize.hpp"

namespace fracfront::io {
namespace {

using nlohmann::json;

json opt(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

std::optional<double> read_opt(const json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  return j.at(key).get<double>();
}

void write_header(std::ostream& os, const std::string& kind, const CsvHeader& header) {
  os << "# fracfront " << kind << "\n";
  for (const auto& [k, v] : header) os << "# " << k << ": " << v << "\n";
}

const char* axis_name(int a) {
  static const char* names[] = {"x1", "x2", "x3"};
  return names[a];
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

double parse_real(const std::string& s, std::size_t line, const std::string& field) {
  double v = 0.0;
  const char* b = s.data();
  const char* e = b + s.size();
  while (b < e && *b == ' ') ++b;
  const auto [p, ec] = std::from_chars(b, e, v);
  if (ec != std::errc() || p != e) throw ParseError("malformed number '" + s + "' in field " + field, line, field);
  return v;
}

}  // namespace

std::string format_real(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

void write_kernel_csv(std::ostream& os, const KernelTable& t, const CsvHeader& header) {
  CsvHeader h = header;
  h.emplace_back("t", format_real(t.t));
  h.emplace_back("dim", std::to_string(t.grid.dim));
  h.emplace_back("n", std::to_string(t.grid.n));
  h.emplace_back("dx", format_real(t.grid.dx));
  h.emplace_back("half_extent", format_real(t.grid.half_extent()));
  h.emplace_back("method", t.method == KernelMethod::Fourier ? "fourier" : "subordination");
  h.emplace_back("view", t.view == FourierView::Spectral ? "spectral" : "pointwise");
  h.emplace_back("units", "index: lattice index per axis; G: 1/length^d");
  write_header(os, "kernel_table", h);
  for (int a = 0; a < t.grid.dim; ++a) os << "i" << (a + 1) << ",";
  os << "G\n";
  for (std::size_t i = 0; i < t.values.size(); ++i) {
    const auto idx = t.grid.unflatten(i);
    for (int a = 0; a < t.grid.dim; ++a) os << idx[a] << ",";
    os << format_real(t.values[i]) << "\n";
  }
}

void write_moment_csv(std::ostream& os, const MomentField& f, const CsvHeader& header) {
  CsvHeader h = header;
  h.emplace_back("dim", std::to_string(f.grid.dim));
  h.emplace_back("n", std::to_string(f.grid.n));
  h.emplace_back("dx", format_real(f.grid.dx));
  h.emplace_back("replicates", std::to_string(f.replicates));
  h.emplace_back("blowups", std::to_string(f.blowups));
  h.emplace_back("usable", f.usable ? "true" : "false");
  h.emplace_back("units", "t: time; x: length; mean_sq, std_err: u^2");
  write_header(os, "moment_field", h);
  os << "t,";
  for (int a = 0; a < f.grid.dim; ++a) os << axis_name(a) << ",";
  os << "mean_sq,std_err\n";
  const std::size_t ns = f.sites();
  for (std::size_t r = 0; r < f.times.size(); ++r) {
    const std::string t = format_real(f.times[r]);
    for (std::size_t x = 0; x < ns; ++x) {
      const auto pos = f.grid.position(x);
      os << t << ",";
      for (int a = 0; a < f.grid.dim; ++a) os << format_real(pos[a]) << ",";
      os << format_real(f.at(r, x)) << "," << format_real(f.err(r, x)) << "\n";
    }
  }
}

MomentField read_moment_csv(std::istream& is, CsvHeader* header_out) {
  std::map<std::string, std::string> meta;
  CsvHeader header;
  std::string line;
  std::size_t no = 0;
  bool seen_columns = false;
  std::vector<std::string> columns;
  MomentField f;
  std::map<double, std::size_t> record_of;
  std::vector<std::vector<double>> ms, se;
  std::vector<std::vector<char>> filled;
  std::size_t ns = 0;

  while (std::getline(is, line)) {
    ++no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      const auto colon = line.find(':');
      if (colon == std::string::npos) continue;
      std::string k = line.substr(1, colon - 1);
      std::string v = line.substr(colon + 1);
      k.erase(0, k.find_first_not_of(' '));
      v.erase(0, v.find_first_not_of(' '));
      meta[k] = v;
      header.emplace_back(k, v);
      continue;
    }
    if (!seen_columns) {
      for (const char* key : {"dim", "n", "dx"})
        if (!meta.count(key)) throw ParseError(std::string("moment CSV lacks the '# ") + key + ":' header", no, key);
      f.grid.dim = static_cast<int>(parse_real(meta["dim"], no, "dim"));
      f.grid.n = static_cast<std::size_t>(parse_real(meta["n"], no, "n"));
      f.grid.dx = parse_real(meta["dx"], no, "dx");
      try {
        f.grid.validate();
      } catch (const Error& e) {
        throw ParseError(std::string("moment CSV lattice header invalid: ") + e.what(), no, "dim");
      }
      ns = f.grid.size();
      columns = split(line);
      std::vector<std::string> want{"t"};
      for (int a = 0; a < f.grid.dim; ++a) want.emplace_back(axis_name(a));
      want.emplace_back("mean_sq");
      want.emplace_back("std_err");
      if (columns != want) throw ParseError("moment CSV column header mismatch", no, line);
      seen_columns = true;
      continue;
    }
    const auto cells = split(line);
    if (cells.size() != columns.size())
      throw ParseError("expected " + std::to_string(columns.size()) + " fields, got " + std::to_string(cells.size()),
                       no, cells.empty() ? "" : cells.back());
    const double t = parse_real(cells[0], no, "t");
    std::array<std::size_t, 3> idx{0, 0, 0};
    for (int a = 0; a < f.grid.dim; ++a) {
      const double x = parse_real(cells[1 + a], no, columns[1 + a]);
      const double j = x / f.grid.dx + 0.5 * static_cast<double>(f.grid.n);
      const double jr = std::round(j);
      if (std::abs(j - jr) > 1e-6 || jr < 0 || jr >= static_cast<double>(f.grid.n))
        throw ParseError("coordinate is not a lattice site", no, columns[1 + a]);
      idx[a] = static_cast<std::size_t>(jr);
    }
    const double m = parse_real(cells[1 + f.grid.dim], no, "mean_sq");
    const double s = parse_real(cells[2 + f.grid.dim], no, "std_err");
    if (!std::isfinite(m) || m < 0.0) throw ParseError("mean_sq must be finite and >= 0", no, "mean_sq");
    if (!std::isfinite(s) || s < 0.0) throw ParseError("std_err must be finite and >= 0", no, "std_err");
    auto it = record_of.find(t);
    if (it == record_of.end()) {
      if (!f.times.empty() && !(t > f.times.back()))
        throw ParseError("times must appear in increasing order", no, "t");
      it = record_of.emplace(t, f.times.size()).first;
      f.times.push_back(t);
      ms.emplace_back(ns, 0.0);
      se.emplace_back(ns, 0.0);
      filled.emplace_back(ns, 0);
    }
    const std::size_t site = f.grid.flatten(idx);
    if (filled[it->second][site]) throw ParseError("duplicate row for a (t, site) pair", no, "t");
    filled[it->second][site] = 1;
    ms[it->second][site] = m;
    se[it->second][site] = s;
  }
  if (!seen_columns) throw ParseError("moment CSV has no column header", no, "");
  for (std::size_t r = 0; r < f.times.size(); ++r) {
    for (std::size_t x = 0; x < ns; ++x)
      if (!filled[r][x]) throw ParseError("missing site rows for t = " + format_real(f.times[r]), no, "t");
    f.mean_sq.insert(f.mean_sq.end(), ms[r].begin(), ms[r].end());
    f.std_err.insert(f.std_err.end(), se[r].begin(), se[r].end());
  }
  if (meta.count("replicates")) f.replicates = static_cast<std::size_t>(parse_real(meta["replicates"], 0, "replicates"));
  if (meta.count("blowups")) f.blowups = static_cast<std::size_t>(parse_real(meta["blowups"], 0, "blowups"));
  if (meta.count("usable")) f.usable = meta["usable"] == "true";
  if (header_out) *header_out = std::move(header);
  return f;
}

void write_front_csv(std::ostream& os, const FrontProfile& p, const CsvHeader& header) {
  CsvHeader h = header;
  h.emplace_back("theta_l_bound", p.theta_l_bound ? format_real(*p.theta_l_bound) : "none");
  std::string used;
  for (double t : p.times_used) used += (used.empty() ? "" : " ") + format_real(t);
  h.emplace_back("times_used", used);
  for (const auto& n : p.notes) h.emplace_back("note", n);
  h.emplace_back("units", "theta: length/time; l_hat, stderr: 1/time");
  write_header(os, "front_profile", h);
  os << "theta,l_hat,stderr,n_sites,n_times\n";
  for (std::size_t i = 0; i < p.size(); ++i)
    os << format_real(p.theta_grid[i]) << "," << format_real(p.l_hat[i]) << "," << format_real(p.l_stderr[i])
       << "," << p.n_sites[i] << "," << p.n_times[i] << "\n";
}

json to_json(const ModelParams& p) {
  return json{{"beta", p.beta},
              {"alpha", p.alpha},
              {"nu", p.nu},
              {"dim", p.dim},
              {"lip_sigma", p.lip_sigma},
              {"l_sigma", p.l_sigma},
              {"sigma", {{"kind", p.sigma.name()}, {"lambda", p.sigma.lambda}}},
              {"u0", {{"kind", p.u0.name()}, {"height", p.u0.height}, {"radius", p.u0.radius}}}};
}

json to_json(const SimConfig& c) {
  return json{{"params", to_json(c.params)},
              {"grid", {{"dim", c.grid.dim}, {"n", c.grid.n}, {"dx", c.grid.dx},
                        {"half_extent", c.grid.half_extent()}}},
              {"dt", c.dt},
              {"horizon", c.horizon},
              {"steps", c.steps()},
              {"replicates", c.replicates},
              {"base_seed", c.base_seed},
              {"record_steps", c.resolved_record_steps()},
              {"coupling", c.coupling == NoiseCoupling::LeftPoint ? "left-point" : "cell-integrated"},
              {"blowup", c.blowup == BlowUpPolicy::Abort ? "abort" : "tolerate"},
              {"sampling", c.resolved_sampling() == KernelSampling::Pointwise ? "pointwise" : "spectral"},
              {"theta_max", c.resolved_theta_max()},
              {"cache_limit_bytes", c.cache_limit_bytes}};
}

json to_json(const BoundsReport& r) {
  json issues = json::array();
  for (const auto& i : r.issues) issues.push_back({{"quantity", i.quantity}, {"kind", i.kind}, {"message", i.message}});
  const auto& v = r.young_validity;
  return json{{"schema_version", kSchemaVersion},
              {"formula_version", BoundsReport::kFormulaVersion},
              {"params", to_json(r.params)},
              {"options", {{"margin", r.options.margin}, {"eps", r.options.eps}, {"t", r.options.t},
                           {"u0_l2_norm", r.options.u0_l2_norm},
                           {"rel_tolerance", r.options.eval.rel_tolerance}}},
              {"cstar", opt(r.cstar)},
              {"big_m", opt(r.big_m)},
              {"big_m_branch", r.big_m_branch},
              {"c0", opt(r.c0)},
              {"theta_l_bound", opt(r.theta_l_bound)},
              {"eta2_lower", opt(r.eta2_lower)},
              {"admissible_c", opt(r.admissible_c)},
              {"envelope_growth", opt(r.envelope_growth)},
              {"young_constant", opt(r.young_constant)},
              {"young_closed_form", opt(r.young_closed_form)},
              {"young_identity_gap", opt(r.young_identity_gap)},
              {"l2_energy", opt(r.l2_energy)},
              {"young_validity", {{"gamma", v.gamma}, {"c_norm", v.c_norm}, {"lhs", v.lhs}, {"rhs", v.rhs},
                                  {"series_ratio", v.series_ratio}, {"holds", v.holds}}},
              {"issues", issues},
              {"notes", r.notes}};
}

json to_json(const FrontBracket& b) {
  return json{{"schema_version", kSchemaVersion},
              {"theta_minus", opt(b.theta_minus)},
              {"theta_plus", opt(b.theta_plus)},
              {"theta_l_bound", opt(b.theta_l_bound)},
              {"consistent", b.consistent ? json(*b.consistent) : json(nullptr)},
              {"violation", b.violation},
              {"violating_thetas", b.violating_thetas},
              {"inconclusive", b.inconclusive},
              {"sigmas", b.sigmas},
              {"recommendation", b.recommendation}};
}

json to_json(const GrowthEstimate& g) {
  return json{{"rate", g.rate}, {"stderr", g.std_error}, {"intercept", g.intercept}, {"n_times", g.n_times}};
}

BoundsReport bounds_from_json(const json& j) {
  try {
    BoundsReport r;
    const json& p = j.at("params");
    ModelParams& m = r.params;
    m.beta = p.at("beta").get<double>();
    m.alpha = p.at("alpha").get<double>();
    m.nu = p.at("nu").get<double>();
    m.dim = p.at("dim").get<int>();
    m.lip_sigma = p.at("lip_sigma").get<double>();
    m.l_sigma = p.at("l_sigma").get<double>();
    const std::string sk = p.at("sigma").at("kind").get<std::string>();
    m.sigma.kind = sk == "tanh" ? SigmaKind::Tanh : SigmaKind::Linear;
    m.sigma.lambda = p.at("sigma").at("lambda").get<double>();
    const std::string uk = p.at("u0").at("kind").get<std::string>();
    m.u0.kind = uk == "bump" ? InitialKind::Bump : InitialKind::Flat;
    m.u0.height = p.at("u0").at("height").get<double>();
    m.u0.radius = p.at("u0").at("radius").get<double>();
    if (j.contains("options")) {
      const json& o = j.at("options");
      r.options.margin = o.value("margin", r.options.margin);
      r.options.eps = o.value("eps", r.options.eps);
      r.options.t = o.value("t", r.options.t);
      r.options.u0_l2_norm = o.value("u0_l2_norm", r.options.u0_l2_norm);
    }
    r.cstar = read_opt(j, "cstar");
    r.big_m = read_opt(j, "big_m");
    r.big_m_branch = j.value("big_m_branch", -1);
    r.c0 = read_opt(j, "c0");
    r.theta_l_bound = read_opt(j, "theta_l_bound");
    r.eta2_lower = read_opt(j, "eta2_lower");
    r.admissible_c = read_opt(j, "admissible_c");
    r.envelope_growth = read_opt(j, "envelope_growth");
    r.young_constant = read_opt(j, "young_constant");
    r.young_closed_form = read_opt(j, "young_closed_form");
    r.young_identity_gap = read_opt(j, "young_identity_gap");
    r.l2_energy = read_opt(j, "l2_energy");
    if (j.contains("issues"))
      for (const auto& i : j.at("issues"))
        r.issues.push_back({i.at("quantity").get<std::string>(), i.at("kind").get<std::string>(),
                            i.at("message").get<std::string>()});
    return r;
  } catch (const json::exception& e) {
    throw ParseError(std::string("bounds JSON: ") + e.what(), 0, "");
  }
}

}  // namespace fracfront::io
