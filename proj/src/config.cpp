#include "quelab/config.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "quelab/lattice.hpp"

namespace quelab {

namespace pt = boost::property_tree;

double RadiusRule::radius(double t) const {
  switch (kind) {
    case RadiusKind::fixed:
      return R;
    case RadiusKind::power:
      return std::pow(t, -delta);
    case RadiusKind::planck:
      return std::pow(std::log(t), a) / t;
  }
  return R;
}

std::vector<double> ExperimentConfig::t_grid() const {
  if (!t_values.empty()) return t_values;
  std::vector<double> out;
  if (t_start > t_stop) return out;
  const long n = static_cast<long>(std::floor((t_stop - t_start) / t_step + 1e-9)) + 1;
  for (long i = 0; i < n; ++i) out.push_back(t_start + t_step * double(i));
  return out;
}

Point ExperimentConfig::center() const {
  if (dim() == 3) return center_h3;
  if (heegner) return make_heegner(heegner->a, heegner->b, heegner->c).z;
  return center_h2;
}

void ExperimentConfig::validate() const {
  if (!(t_step > 0.0)) throw UsageError("experiment.t_step: must be positive");
  if (!std::isfinite(t_start) || !std::isfinite(t_stop)) throw UsageError("experiment.t_start/t_stop: must be finite");
  if (radius.kind == RadiusKind::fixed && !(radius.R > 0.0)) throw UsageError("experiment.R: must be positive");
  if (radius.kind == RadiusKind::power && !(radius.delta > 0.0 && radius.delta < 1.0)) {
    throw UsageError("experiment.delta: must lie in (0, 1)");
  }
  if (radius.kind == RadiusKind::planck && !std::isfinite(radius.a)) throw UsageError("experiment.a: must be finite");
  if (kind == ExperimentKind::omega_scan && (dim() != 2 || !heegner)) {
    throw UsageError("center.heegner: omega-scan needs a Heegner center on h2");
  }
  if (dim() == 2 && !heegner && !(center_h2.y > 0.0)) throw UsageError("center.y: must be positive");
  if (dim() == 3 && !(center_h3.r > 0.0)) throw UsageError("center.r: must be positive");
  if (mass.order < 1 || mass.order > 256) throw UsageError("numerics.order: must be in [1, 256]");
  if (mass.method == MassMethod::monte_carlo && mass.samples < 1000) {
    throw UsageError("numerics.samples: Monte Carlo needs at least 1000");
  }
  if (truncation < 0) throw UsageError("numerics.truncation: must be non-negative");
  if (norm_cap < 0) throw UsageError("numerics.norm_cap: must be non-negative");
  if (!(grid_step > 0.0 && grid_step <= 0.5)) throw UsageError("numerics.grid_step: must be in (0, 0.5]");
  if (moment_k != 2 && moment_k != 6) throw UsageError("numerics.moment_k: must be 2 or 6");
  for (double t : t_values) {
    if (!std::isfinite(t)) throw UsageError("experiment.t_values: must be finite");
  }
}

ExperimentKind parse_kind(const std::string& name) {
  static const std::map<std::string, ExperimentKind> kinds = {
      {"omega_scan", ExperimentKind::omega_scan}, {"qe_scan", ExperimentKind::qe_scan},
      {"variance", ExperimentKind::variance},     {"moments", ExperimentKind::moments},
      {"selberg_check", ExperimentKind::selberg_check}, {"eval", ExperimentKind::eval}};
  std::string key = name;
  for (auto& c : key) {
    if (c == '-') c = '_';
  }
  auto it = kinds.find(key);
  if (it == kinds.end()) throw UsageError("experiment.kind: unknown kind '" + name + "'");
  return it->second;
}

std::string kind_name(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::omega_scan: return "omega-scan";
    case ExperimentKind::qe_scan: return "qe-scan";
    case ExperimentKind::variance: return "variance";
    case ExperimentKind::moments: return "moments";
    case ExperimentKind::selberg_check: return "selberg-check";
    case ExperimentKind::eval: return "eval";
  }
  return "";
}

RadiusRule radius_preset(const std::string& name) {
  static const std::map<std::string, double> deltas = {
      {"delta-third", 1.0 / 3.0}, {"delta-two-fifths", 0.4}, {"delta-three-quarters", 0.75}};
  auto it = deltas.find(name);
  if (it == deltas.end()) throw UsageError("experiment.preset: unknown preset '" + name + "'");
  RadiusRule rule;
  rule.kind = RadiusKind::power;
  rule.delta = it->second;
  return rule;
}

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

double to_double(const std::string& field, const std::string& v) {
  std::size_t used = 0;
  double x;
  try {
    x = std::stod(v, &used);
  } catch (const std::exception&) {
    throw UsageError(field + ": expected a number, got '" + v + "'");
  }
  if (trim(v.substr(used)) != "") throw UsageError(field + ": expected a number, got '" + v + "'");
  return x;
}

long to_long(const std::string& field, const std::string& v) {
  const double x = to_double(field, v);
  if (x != std::floor(x) || std::abs(x) > 9e15) throw UsageError(field + ": expected an integer, got '" + v + "'");
  return static_cast<long>(x);
}

std::vector<double> to_list(const std::string& field, const std::string& v) {
  std::vector<double> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(to_double(field, trim(item)));
  return out;
}

int parse_surface(const std::string& v) {
  const std::string s = trim(v);
  if (s == "h2") return 0;
  if (s.rfind("bianchi(", 0) == 0 && s.back() == ')') {
    const int D = static_cast<int>(to_long("experiment.surface", s.substr(8, s.size() - 9)));
    const auto& allowed = class_number_one_D();
    if (std::find(allowed.begin(), allowed.end(), D) == allowed.end()) {
      throw UsageError("experiment.surface: D must give class number one");
    }
    return D;
  }
  throw UsageError("experiment.surface: expected h2 or bianchi(D), got '" + v + "'");
}

}  // namespace

ExperimentConfig parse_config(const std::string& text) {
  pt::ptree tree;
  std::istringstream in(text);
  try {
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw UsageError(std::string("config: ") + e.message() + " at line " + std::to_string(e.line()));
  }
  static const std::map<std::string, std::set<std::string>> known = {
      {"experiment", {"kind", "surface", "t_start", "t_stop", "t_step", "t_values", "radius", "R", "delta",
                      "a", "preset", "seed"}},
      {"center", {"heegner", "x", "y", "z_re", "z_im", "r"}},
      {"numerics", {"method", "order", "samples", "truncation", "norm_cap", "normalization", "zeta",
                    "grid_step", "moment_k"}}};
  ExperimentConfig cfg;
  bool radius_given = false, preset_given = false;
  for (const auto& [section, body] : tree) {
    auto sec = known.find(section);
    if (sec == known.end()) throw UsageError("config: unknown section [" + section + "]");
    if (!body.data().empty()) throw UsageError("config: key '" + section + "' outside a section");
    for (const auto& [key, node] : body) {
      if (!sec->second.count(key)) throw UsageError(section + "." + key + ": unknown key");
      const std::string field = section + "." + key;
      const std::string v = trim(node.data());
      if (section == "experiment") {
        if (key == "kind") {
          cfg.kind = parse_kind(v);
          cfg.kind_given = true;
        }
        else if (key == "surface") cfg.surface_D = parse_surface(v);
        else if (key == "t_start") cfg.t_start = to_double(field, v);
        else if (key == "t_stop") cfg.t_stop = to_double(field, v);
        else if (key == "t_step") cfg.t_step = to_double(field, v);
        else if (key == "t_values") cfg.t_values = to_list(field, v);
        else if (key == "R") cfg.radius.R = to_double(field, v);
        else if (key == "delta") cfg.radius.delta = to_double(field, v);
        else if (key == "a") cfg.radius.a = to_double(field, v);
        else if (key == "seed") cfg.seed = static_cast<std::uint64_t>(to_long(field, v));
        else if (key == "radius") {
          radius_given = true;
          if (v == "fixed") cfg.radius.kind = RadiusKind::fixed;
          else if (v == "power") cfg.radius.kind = RadiusKind::power;
          else if (v == "planck") cfg.radius.kind = RadiusKind::planck;
          else throw UsageError(field + ": expected fixed, power or planck");
        } else if (key == "preset") {
          preset_given = true;
          const RadiusRule r = radius_preset(v);
          cfg.radius.kind = r.kind;
          cfg.radius.delta = r.delta;
        }
      } else if (section == "center") {
        if (key == "heegner") {
          std::vector<long> abc;
          std::stringstream ss(v);
          std::string item;
          while (std::getline(ss, item, ',')) abc.push_back(to_long(field, trim(item)));
          if (abc.size() != 3) throw UsageError(field + ": expected a, b, c");
          const BinaryQuadraticForm q{abc[0], abc[1], abc[2]};
          if (q.a <= 0 || q.discriminant() >= 0) throw UsageError(field + ": form must be positive definite");
          cfg.heegner = q;
        } else if (key == "x") cfg.center_h2.x = to_double(field, v);
        else if (key == "y") cfg.center_h2.y = to_double(field, v);
        else if (key == "z_re") cfg.center_h3.z.real(to_double(field, v));
        else if (key == "z_im") cfg.center_h3.z.imag(to_double(field, v));
        else if (key == "r") cfg.center_h3.r = to_double(field, v);
      } else {
        if (key == "method") {
          if (v == "quadrature") cfg.mass.method = MassMethod::quadrature;
          else if (v == "monte_carlo") cfg.mass.method = MassMethod::monte_carlo;
          else throw UsageError(field + ": expected quadrature or monte_carlo");
        } else if (key == "order") cfg.mass.order = static_cast<int>(to_long(field, v));
        else if (key == "samples") cfg.mass.samples = to_long(field, v);
        else if (key == "truncation") cfg.truncation = to_long(field, v);
        else if (key == "norm_cap") cfg.norm_cap = to_long(field, v);
        else if (key == "grid_step") cfg.grid_step = to_double(field, v);
        else if (key == "moment_k") cfg.moment_k = static_cast<int>(to_long(field, v));
        else if (key == "normalization") {
          if (v == "standard") cfg.normalization = H2Normalization::standard;
          else if (v == "all_pairs") cfg.normalization = H2Normalization::all_pairs;
          else throw UsageError(field + ": expected standard or all_pairs");
        } else if (key == "zeta") {
          if (v == "euler_maclaurin") cfg.zeta_method = ZetaMethod::euler_maclaurin;
          else if (v == "riemann_siegel") cfg.zeta_method = ZetaMethod::riemann_siegel;
          else throw UsageError(field + ": expected euler_maclaurin or riemann_siegel");
        }
      }
    }
  }
  if (radius_given && preset_given) throw UsageError("experiment.preset: conflicts with experiment.radius");
  if (cfg.heegner && cfg.surface_D != 0) throw UsageError("center.heegner: only valid on h2");
  cfg.validate();
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("config: cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

}  // namespace quelab
