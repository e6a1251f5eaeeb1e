// SPDX-License-Identifier: Apache-2.0
#include "pass/harness/config.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include <boost/algorithm/string.hpp>
#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "builtin_configs.hpp"

namespace pass::harness {

namespace {

using coupledmode::PowerModel;

template <typename Enum>
using NameTable = std::vector<std::pair<Enum, const char*>>;

const NameTable<SweepKind>& sweep_names() {
  static const NameTable<SweepKind> t{
      {SweepKind::kPowerVsSinr, "power_vs_sinr"},
      {SweepKind::kPowerVsDistance, "power_vs_distance"},
      {SweepKind::kPowerVsAntennas, "power_vs_antennas"},
      {SweepKind::kPowerVsDiscrete, "power_vs_discrete"},
      {SweepKind::kConvergenceTrace, "convergence_trace"},
      {SweepKind::kSinrVsChannelError, "sinr_vs_channel_error"},
  };
  return t;
}

const NameTable<Algorithm>& algorithm_names() {
  static const NameTable<Algorithm> t{
      {Algorithm::kPenalty, "penalty"},
      {Algorithm::kZf, "zf"},
      {Algorithm::kConventional, "conventional"},
  };
  return t;
}

const NameTable<Activation>& activation_names() {
  static const NameTable<Activation> t{
      {Activation::kContinuous, "continuous"},
      {Activation::kDiscrete, "discrete"},
  };
  return t;
}

const NameTable<PowerModel>& power_model_names() {
  static const NameTable<PowerModel> t{
      {PowerModel::kEqual, "equal"},
      {PowerModel::kProportional, "proportional"},
  };
  return t;
}

template <typename Enum>
std::string name_of(const NameTable<Enum>& table, Enum e) {
  for (const auto& [v, n] : table) {
    if (v == e) return n;
  }
  return "unknown";
}

template <typename Enum>
Enum parse_name(const NameTable<Enum>& table, const std::string& raw, const char* what) {
  const std::string s = boost::algorithm::to_lower_copy(boost::algorithm::trim_copy(raw));
  for (const auto& [v, n] : table) {
    if (s == n) return v;
  }
  std::string valid;
  for (const auto& [v, n] : table) {
    (void)v;
    valid += valid.empty() ? n : std::string(", ") + n;
  }
  throw ConfigError("unknown " + std::string(what) + " '" + raw + "' (expected one of: " + valid + ")");
}

double parse_double(const std::string& key, const std::string& raw) {
  const std::string s = boost::algorithm::trim_copy(raw);
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ConfigError(key + ": not a number: '" + raw + "'");
  }
}

long long parse_int(const std::string& key, const std::string& raw) {
  const double v = parse_double(key, raw);
  if (std::floor(v) != v || std::abs(v) > 9.0e15) {
    throw ConfigError(key + ": expected an integer, got '" + raw + "'");
  }
  return static_cast<long long>(v);
}

std::size_t parse_count(const std::string& key, const std::string& raw) {
  const long long v = parse_int(key, raw);
  if (v < 0) throw ConfigError(key + ": must be non-negative");
  return static_cast<std::size_t>(v);
}

std::vector<std::string> split_list(const std::string& raw) {
  std::vector<std::string> parts;
  boost::algorithm::split(parts, raw, boost::algorithm::is_any_of(","));
  std::vector<std::string> out;
  for (auto& p : parts) {
    boost::algorithm::trim(p);
    if (!p.empty()) out.push_back(p);
  }
  return out;
}

using Setter = std::function<void(ExperimentConfig&, const std::string&)>;

const std::map<std::string, Setter>& setters() {
  static const std::map<std::string, Setter> table = [] {
    std::map<std::string, Setter> t;
    auto num = [&t](const std::string& key, auto member) {
      t[key] = [key, member](ExperimentConfig& c, const std::string& v) {
        member(c) = parse_double(key, v);
      };
    };
    auto count = [&t](const std::string& key, auto member) {
      t[key] = [key, member](ExperimentConfig& c, const std::string& v) {
        member(c) = parse_count(key, v);
      };
    };
    count("scenario.n_waveguides", [](ExperimentConfig& c) -> auto& { return c.scenario.n_waveguides; });
    count("scenario.antennas_per_waveguide",
          [](ExperimentConfig& c) -> auto& { return c.scenario.antennas_per_waveguide; });
    count("scenario.n_users", [](ExperimentConfig& c) -> auto& { return c.scenario.n_users; });
    num("scenario.frequency_ghz", [](ExperimentConfig& c) -> auto& { return c.scenario.frequency_ghz; });
    num("scenario.n_g", [](ExperimentConfig& c) -> auto& { return c.scenario.n_g; });
    num("scenario.waveguide_spacing_m",
        [](ExperimentConfig& c) -> auto& { return c.scenario.waveguide_spacing; });
    num("scenario.waveguide_height_m",
        [](ExperimentConfig& c) -> auto& { return c.scenario.waveguide_height; });
    num("scenario.d0_m", [](ExperimentConfig& c) -> auto& { return c.scenario.d0; });
    num("scenario.dx_m", [](ExperimentConfig& c) -> auto& { return c.scenario.dx; });
    num("scenario.service_half_width_m",
        [](ExperimentConfig& c) -> auto& { return c.scenario.service_half_width; });
    num("scenario.x_max_m", [](ExperimentConfig& c) -> auto& { return c.scenario.x_max; });
    num("scenario.min_spacing_m", [](ExperimentConfig& c) -> auto& { return c.scenario.min_spacing; });
    num("scenario.positions_per_meter",
        [](ExperimentConfig& c) -> auto& { return c.scenario.positions_per_meter; });
    num("scenario.noise_dbm", [](ExperimentConfig& c) -> auto& { return c.scenario.noise_dbm; });
    num("scenario.sinr_db", [](ExperimentConfig& c) -> auto& { return c.scenario.sinr_db; });
    num("scenario.total_radiated", [](ExperimentConfig& c) -> auto& { return c.scenario.total_radiated; });
    num("scenario.segment_margin_m",
        [](ExperimentConfig& c) -> auto& { return c.scenario.segment_margin; });
    num("scenario.bs_height_m", [](ExperimentConfig& c) -> auto& { return c.scenario.bs_height; });

    t["sweep.kind"] = [](ExperimentConfig& c, const std::string& v) {
      c.sweep = parse_sweep_kind(v);
    };
    t["sweep.values"] = [](ExperimentConfig& c, const std::string& v) {
      c.values.clear();
      for (const auto& item : split_list(v)) c.values.push_back(parse_double("sweep.values", item));
    };

    t["run.algorithms"] = [](ExperimentConfig& c, const std::string& v) {
      c.algorithms.clear();
      for (const auto& item : split_list(v)) c.algorithms.push_back(parse_algorithm(item));
    };
    t["run.power_model"] = [](ExperimentConfig& c, const std::string& v) {
      c.power_model = parse_power_model(v);
    };
    t["run.activation"] = [](ExperimentConfig& c, const std::string& v) {
      c.activation = parse_activation(v);
    };
    t["run.drops"] = [](ExperimentConfig& c, const std::string& v) {
      c.n_drops = static_cast<int>(parse_int("run.drops", v));
    };
    t["run.seed"] = [](ExperimentConfig& c, const std::string& v) {
      const long long s = parse_int("run.seed", v);
      if (s < 0) throw ConfigError("run.seed: must be non-negative");
      c.seed = static_cast<std::uint64_t>(s);
    };
    t["run.grid_points"] = [](ExperimentConfig& c, const std::string& v) {
      c.grid_points = parse_count("run.grid_points", v);
    };
    t["run.profile"] = [](ExperimentConfig& c, const std::string& v) { apply_profile(c, v); };

    num("penalty.rho0", [](ExperimentConfig& c) -> auto& { return c.penalty.rho0; });
    num("penalty.epsilon", [](ExperimentConfig& c) -> auto& { return c.penalty.epsilon; });
    num("penalty.inner_tol", [](ExperimentConfig& c) -> auto& { return c.penalty.inner_tol; });
    num("penalty.violation_tol", [](ExperimentConfig& c) -> auto& { return c.penalty.violation_tol; });
    num("penalty.power_unit_w", [](ExperimentConfig& c) -> auto& { return c.penalty.power_unit_w; });
    t["penalty.max_inner"] = [](ExperimentConfig& c, const std::string& v) {
      c.penalty.max_inner = static_cast<int>(parse_int("penalty.max_inner", v));
    };
    t["penalty.max_outer"] = [](ExperimentConfig& c, const std::string& v) {
      c.penalty.max_outer = static_cast<int>(parse_int("penalty.max_outer", v));
    };

    num("zf.threshold", [](ExperimentConfig& c) -> auto& { return c.zf.threshold; });
    t["zf.max_sweeps"] = [](ExperimentConfig& c, const std::string& v) {
      c.zf.max_sweeps = static_cast<int>(parse_int("zf.max_sweeps", v));
    };
    return t;
  }();
  return table;
}

}  // namespace

std::string to_string(SweepKind kind) { return name_of(sweep_names(), kind); }
std::string to_string(Algorithm algo) { return name_of(algorithm_names(), algo); }
std::string to_string(Activation act) { return name_of(activation_names(), act); }
std::string to_string(PowerModel model) { return name_of(power_model_names(), model); }

SweepKind parse_sweep_kind(const std::string& s) { return parse_name(sweep_names(), s, "sweep kind"); }
Algorithm parse_algorithm(const std::string& s) { return parse_name(algorithm_names(), s, "algorithm"); }
Activation parse_activation(const std::string& s) {
  return parse_name(activation_names(), s, "activation");
}
PowerModel parse_power_model(const std::string& s) {
  return parse_name(power_model_names(), s, "power model");
}

double ScenarioParams::half_width() const {
  if (service_half_width >= 0.0) return service_half_width;
  return 0.5 * static_cast<double>(n_waveguides - 1) * waveguide_spacing;
}

double ScenarioParams::margin() const {
  if (segment_margin >= 0.0) return segment_margin;
  return 0.5 * (x_max - dx);
}

void ScenarioParams::validate() const {
  auto require = [](bool ok, const std::string& msg) {
    if (!ok) throw ConfigError("scenario: " + msg);
  };
  require(n_waveguides >= 1, "n_waveguides must be >= 1");
  require(antennas_per_waveguide >= 1, "antennas_per_waveguide must be >= 1");
  require(n_users >= 1, "n_users must be >= 1");
  require(n_users <= n_waveguides, "n_users must not exceed n_waveguides");
  require(frequency_ghz > 0.0, "frequency_ghz must be positive");
  require(n_g >= 1.0, "n_g must be >= 1");
  require(waveguide_spacing >= 0.0, "waveguide_spacing_m must be non-negative");
  require(waveguide_height > 0.0, "waveguide_height_m must be positive");
  require(d0 >= 0.0, "d0_m must be non-negative");
  require(dx > 0.0, "dx_m must be positive");
  require(x_max > 0.0, "x_max_m must be positive");
  require(min_spacing > 0.0, "min_spacing_m must be positive");
  require(static_cast<double>(antennas_per_waveguide - 1) * min_spacing <= x_max,
          "antennas do not fit on a waveguide at the minimum spacing");
  require(positions_per_meter > 0.0, "positions_per_meter must be positive");
  require(std::isfinite(noise_dbm), "noise_dbm must be finite");
  require(std::isfinite(sinr_db), "sinr_db must be finite");
  require(total_radiated > 0.0 && total_radiated < 1.0, "total_radiated must lie in (0, 1)");
  require(bs_height > 0.0, "bs_height_m must be positive");
}

bool ExperimentConfig::has(Algorithm a) const {
  return std::find(algorithms.begin(), algorithms.end(), a) != algorithms.end();
}

void ExperimentConfig::validate() const {
  scenario.validate();
  if (values.empty()) throw ConfigError("sweep.values must list at least one value");
  if (algorithms.empty()) throw ConfigError("run.algorithms must list at least one algorithm");
  if (n_drops < 1) throw ConfigError("run.drops must be >= 1");
  if (grid_points < 2) throw ConfigError("run.grid_points must be >= 2");
  for (double v : values) {
    if (!std::isfinite(v)) throw ConfigError("sweep.values must be finite");
    switch (sweep) {
      case SweepKind::kPowerVsSinr:
        break;
      case SweepKind::kPowerVsDistance:
        if (v < 0.0) throw ConfigError("power_vs_distance: d0 must be non-negative");
        break;
      case SweepKind::kPowerVsAntennas: {
        const double per = v / static_cast<double>(scenario.n_waveguides);
        if (v < 1.0 || std::floor(per) != per) {
          throw ConfigError("power_vs_antennas: total antenna count must be a positive multiple of "
                            "n_waveguides");
        }
        break;
      }
      case SweepKind::kPowerVsDiscrete:
        if (v <= 0.0) throw ConfigError("power_vs_discrete: positions per metre must be positive");
        break;
      case SweepKind::kConvergenceTrace:
        if (!(v > 0.0 && v < 1.0)) {
          throw ConfigError("convergence_trace: penalty reduction factor must lie in (0, 1)");
        }
        break;
      case SweepKind::kSinrVsChannelError:
        if (v < 0.0) throw ConfigError("sinr_vs_channel_error: error bound must be non-negative");
        break;
    }
  }
  try {
    penalty.validate();
  } catch (const std::exception& e) {
    throw ConfigError(std::string("penalty: ") + e.what());
  }
  if (!(zf.threshold > 0.0)) throw ConfigError("zf.threshold must be positive");
  if (zf.max_sweeps < 1) throw ConfigError("zf.max_sweeps must be >= 1");
}

void apply_profile(ExperimentConfig& cfg, const std::string& profile) {
  const std::string p = boost::algorithm::to_lower_copy(boost::algorithm::trim_copy(profile));
  if (p == "desk") {
    cfg.n_drops = 20;
    cfg.grid_points = 100000;
  } else if (p == "paper") {
    cfg.n_drops = 100;
    cfg.grid_points = 1000000;
  } else {
    throw ConfigError("unknown profile '" + profile + "' (expected desk or paper)");
  }
}

ExperimentConfig parse_config(std::istream& in, const std::string& name) {
  boost::property_tree::ptree tree;
  try {
    boost::property_tree::read_ini(in, tree);
  } catch (const boost::property_tree::ini_parser_error& e) {
    throw ConfigError(std::string("malformed config: ") + e.what());
  }
  ExperimentConfig cfg;
  cfg.name = name;

  // the profile sets defaults that explicit keys may then override
  std::vector<std::pair<std::string, std::string>> entries;
  for (const auto& [section, body] : tree) {
    if (body.empty() && !body.data().empty()) {
      throw ConfigError("key '" + section + "' must sit inside a section");
    }
    for (const auto& [key, value] : body) {
      const std::string full = section + "." + key;
      if (full == "run.profile") {
        apply_profile(cfg, value.data());
      } else {
        entries.emplace_back(full, value.data());
      }
    }
  }
  const auto& table = setters();
  for (const auto& [key, value] : entries) {
    const auto it = table.find(key);
    if (it == table.end()) throw ConfigError("unknown config key '" + key + "'");
    it->second(cfg, value);
  }
  cfg.penalty.grid_points = cfg.grid_points;
  cfg.zf.grid_points = cfg.grid_points;
  cfg.validate();
  return cfg;
}

std::vector<std::string> builtin_scenario_names() {
  std::vector<std::string> names;
  for (const auto& [n, text] : detail::builtin_configs()) {
    (void)text;
    names.push_back(n);
  }
  std::sort(names.begin(), names.end());
  return names;
}

const std::string& builtin_scenario_text(const std::string& name) {
  const auto& all = detail::builtin_configs();
  const auto it = all.find(name);
  if (it == all.end()) throw ConfigError("unknown scenario '" + name + "'");
  return it->second;
}

ExperimentConfig load_config(const std::string& name_or_path) {
  const auto& all = detail::builtin_configs();
  if (const auto it = all.find(name_or_path); it != all.end()) {
    std::istringstream in(it->second);
    return parse_config(in, name_or_path);
  }
  std::ifstream file(name_or_path);
  if (!file) {
    throw ConfigError("'" + name_or_path + "' is neither a built-in scenario nor a readable file");
  }
  return parse_config(file, std::filesystem::path(name_or_path).stem().string());
}

}  // namespace pass::harness
