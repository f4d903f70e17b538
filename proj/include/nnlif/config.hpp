#ifndef NNLIF_CONFIG_HPP
#define NNLIF_CONFIG_HPP

// INI run configurations:
//
//   [model]    a, b, v_reset, v_fire, delay
//   [grid]     v_min (optional), dv
//   [initial]  family, n, mu, sigma, max_truncated, path
//   [run]      label, t_end, snapshots (comma separated), record_interval, rate_cap, output_dir
//   [solver]   c_cfl, safety, source_sigma, single_node_source, max_step_mass_drift
//   [detector] window_fraction, window_delays, steady_tol_abs, steady_tol_rel,
//              steady_profile_tol, min_cycles, periodic_amplitude_tol,
//              periodic_period_tol, plateau_tol, plateau_min_mass

#include <cmath>
#include <filesystem>
#include <fstream>
#include <istream>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "experiments.hpp"
#include "init.hpp"
#include "params.hpp"

namespace nnlif {

class ConfigError : public Error {
 public:
  using Error::Error;
};

struct RunConfig {
  experiments::RunSpec spec;
  std::string output_dir;  // relative paths resolve against the output root
};

namespace config {

namespace detail {

inline double parse_double(const std::string& key, const std::string& text) {
  std::string t = text;
  t.erase(0, t.find_first_not_of(" \t"));
  t.erase(t.find_last_not_of(" \t") + 1);
  if (t == "inf" || t == "infinity") return std::numeric_limits<double>::infinity();
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(t, &used);
  } catch (const std::exception&) {
    throw ConfigError("'" + key + "' is not a number: '" + text + "'");
  }
  if (used != t.size()) throw ConfigError("'" + key + "' is not a number: '" + text + "'");
  return v;
}

inline bool parse_bool(const std::string& key, const std::string& text) {
  if (text == "true" || text == "1" || text == "yes") return true;
  if (text == "false" || text == "0" || text == "no") return false;
  throw ConfigError("'" + key + "' is not a boolean: '" + text + "'");
}

inline std::vector<double> parse_list(const std::string& key, const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.find_first_not_of(" \t") == std::string::npos) continue;
    out.push_back(parse_double(key, item));
  }
  return out;
}

inline const std::map<std::string, std::set<std::string>>& known_keys() {
  static const std::map<std::string, std::set<std::string>> keys = {
      {"model", {"a", "b", "v_reset", "v_fire", "delay"}},
      {"grid", {"v_min", "dv"}},
      {"initial", {"family", "n", "mu", "sigma", "max_truncated", "path"}},
      {"run", {"label", "t_end", "snapshots", "record_interval", "rate_cap", "output_dir"}},
      {"solver", {"c_cfl", "safety", "source_sigma", "single_node_source", "max_step_mass_drift"}},
      {"detector",
       {"window_fraction", "window_delays", "steady_tol_abs", "steady_tol_rel", "steady_profile_tol", "min_cycles",
        "periodic_amplitude_tol", "periodic_period_tol", "plateau_tol", "plateau_min_mass"}},
  };
  return keys;
}

}  // namespace detail

/// Parses and validates a run configuration. `base_dir` resolves a relative
/// CSV path of the initial profile.
inline RunConfig parse(std::istream& in, const std::filesystem::path& base_dir = {}) {
  namespace pt = boost::property_tree;
  pt::ptree tree;
  try {
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError(std::string("malformed configuration: ") + e.what());
  }
  for (const auto& [section, body] : tree) {
    const auto it = detail::known_keys().find(section);
    if (it == detail::known_keys().end()) throw ConfigError("unknown section [" + section + "]");
    for (const auto& [key, value] : body) {
      if (!it->second.count(key)) throw ConfigError("unknown key '" + key + "' in [" + section + "]");
    }
  }
  auto text = [&](const std::string& path) -> std::optional<std::string> {
    if (auto v = tree.get_optional<std::string>(pt::ptree::path_type(path, '.'))) return *v;
    return std::nullopt;
  };
  auto number = [&](const std::string& path, double& target) {
    if (auto v = text(path)) target = detail::parse_double(path, *v);
  };

  RunConfig cfg;
  auto& s = cfg.spec;
  number("model.a", s.params.a);
  if (!text("model.b")) throw ConfigError("missing required key model.b");
  number("model.b", s.params.b);
  number("model.v_reset", s.params.v_reset);
  number("model.v_fire", s.params.v_fire);
  number("model.delay", s.params.delay);
  try {
    s.params.validate();
  } catch (const DomainError& e) {
    throw ConfigError(e.what());
  }

  number("grid.v_min", s.v_min);
  number("grid.dv", s.dv);
  if (!(s.dv > 0.0)) throw ConfigError("grid.dv must be positive");
  if (!std::isnan(s.v_min) && !(s.v_min < s.params.v_reset)) throw ConfigError("grid.v_min must lie below v_reset");

  if (auto f = text("initial.family")) s.ic.family = *f;
  if (!init::is_known_family(s.ic.family)) throw ConfigError("unknown initial family '" + s.ic.family + "'");
  number("initial.n", s.ic.n);
  number("initial.mu", s.ic.mu);
  number("initial.sigma", s.ic.sigma);
  number("initial.max_truncated", s.ic.max_truncated);
  if (auto p = text("initial.path")) {
    std::filesystem::path path(*p);
    s.ic.path = path.is_relative() && !base_dir.empty() ? (base_dir / path).string() : path.string();
  }
  if (s.ic.family == "csv" && s.ic.path.empty()) throw ConfigError("initial.path is required for the csv family");
  if (s.ic.family == "pseudo-equilibrium" && !(s.ic.n >= 0.0)) throw ConfigError("initial.n must be >= 0");
  if (!(s.ic.sigma > 0.0)) throw ConfigError("initial.sigma must be positive");

  if (auto l = text("run.label")) s.label = *l;
  if (!text("run.t_end")) throw ConfigError("missing required key run.t_end");
  number("run.t_end", s.t_end);
  if (!(s.t_end > 0.0) || !std::isfinite(s.t_end)) throw ConfigError("run.t_end must be positive and finite");
  if (auto snaps = text("run.snapshots")) s.snapshot_times = detail::parse_list("run.snapshots", *snaps);
  for (double t : s.snapshot_times) {
    if (!(t >= 0.0 && t <= s.t_end)) throw ConfigError("snapshot times must lie in [0, t_end]");
  }
  number("run.record_interval", s.solver.record_interval);
  number("run.rate_cap", s.solver.rate_cap);
  cfg.output_dir = text("run.output_dir").value_or(s.label);

  number("solver.c_cfl", s.solver.c_cfl);
  number("solver.safety", s.solver.safety);
  number("solver.source_sigma", s.solver.source_sigma);
  number("solver.max_step_mass_drift", s.solver.max_step_mass_drift);
  if (auto b = text("solver.single_node_source")) {
    s.solver.single_node_source = detail::parse_bool("solver.single_node_source", *b);
  }
  if (!(s.solver.c_cfl > 0.0) || !(s.solver.safety > 0.0) || !(s.solver.source_sigma > 0.0)) {
    throw ConfigError("solver constants must be positive");
  }

  auto& d = s.detector;
  number("detector.window_fraction", d.window_fraction);
  number("detector.window_delays", d.window_delays);
  number("detector.steady_tol_abs", d.steady_tol_abs);
  number("detector.steady_tol_rel", d.steady_tol_rel);
  number("detector.steady_profile_tol", d.steady_profile_tol);
  double cycles = static_cast<double>(d.min_cycles);
  number("detector.min_cycles", cycles);
  if (!(cycles >= 2.0) || cycles != std::floor(cycles)) throw ConfigError("detector.min_cycles must be an integer >= 2");
  d.min_cycles = static_cast<std::size_t>(cycles);
  number("detector.periodic_amplitude_tol", d.periodic_amplitude_tol);
  number("detector.periodic_period_tol", d.periodic_period_tol);
  number("detector.plateau_tol", d.plateau_tol);
  number("detector.plateau_min_mass", d.plateau_min_mass);
  return cfg;
}

inline RunConfig load(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw ConfigError("cannot open configuration " + file.string());
  return parse(in, file.parent_path());
}

}  // namespace config
}  // namespace nnlif

#endif  // NNLIF_CONFIG_HPP
