#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "netres/error.hpp"
#include "netres/io.hpp"

namespace netres {
namespace {

namespace pt = boost::property_tree;

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& value) {
  const std::string v = trim(value);
  double out = 0.0;
  auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size() || !std::isfinite(out))
    fail(ErrorKind::config, key + ": expected a number, got '" + value + "'");
  return out;
}

std::uint64_t to_u64(const std::string& key, const std::string& value) {
  const std::string v = trim(value);
  std::uint64_t out = 0;
  auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size())
    fail(ErrorKind::config, key + ": expected a non-negative integer, got '" + value + "'");
  return out;
}

std::size_t to_size(const std::string& key, const std::string& value) {
  return static_cast<std::size_t>(to_u64(key, value));
}

bool to_bool(const std::string& key, const std::string& value) {
  const std::string v = trim(value);
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  fail(ErrorKind::config, key + ": expected a boolean, got '" + value + "'");
}

std::vector<std::string> split_list(const std::string& value) {
  std::vector<std::string> out;
  std::stringstream ss(value);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(trim(item));
  return out;
}

using Setter = std::function<void(RunConfig&, const std::string& key, const std::string& value)>;

const std::map<std::string, Setter>& setters() {
  static const std::map<std::string, Setter> table = [] {
    std::map<std::string, Setter> t;
    t["topology.kind"] = [](RunConfig& c, const std::string& k, const std::string& v) {
      const std::string s = trim(v);
      if (s == "er")
        c.topology.kind = TopologyKind::er;
      else if (s == "ba")
        c.topology.kind = TopologyKind::ba;
      else if (s == "file")
        c.topology.kind = TopologyKind::file;
      else
        fail(ErrorKind::config, k + ": expected er, ba or file, got '" + v + "'");
    };
    t["topology.er_n"] = [](RunConfig& c, auto& k, auto& v) { c.topology.er_n = to_size(k, v); };
    t["topology.er_p"] = [](RunConfig& c, auto& k, auto& v) { c.topology.er_p = to_double(k, v); };
    t["topology.ba_n"] = [](RunConfig& c, auto& k, auto& v) { c.topology.ba_n = to_size(k, v); };
    t["topology.ba_m"] = [](RunConfig& c, auto& k, auto& v) { c.topology.ba_m = to_size(k, v); };
    t["topology.ba_classic"] = [](RunConfig& c, auto& k, auto& v) { c.topology.ba_classic = to_bool(k, v); };
    t["topology.path"] = [](RunConfig& c, auto&, auto& v) { c.topology.path = trim(v); };
    t["topology.seed"] = [](RunConfig& c, auto& k, auto& v) { c.topology.seed = to_u64(k, v); };

    t["scenario.attack_time"] = [](RunConfig& c, auto& k, auto& v) { c.scenario.attack_time = to_size(k, v); };
    t["scenario.attacked_count"] = [](RunConfig& c, auto& k, auto& v) {
      c.scenario.attacked_count = to_size(k, v);
      c.attacked_fraction.reset();
    };
    t["scenario.attacked_fraction"] = [](RunConfig& c, auto& k, auto& v) {
      const double f = to_double(k, v);
      if (f < 0.0 || f > 1.0) fail(ErrorKind::config, k + ": must lie in [0,1]");
      c.attacked_fraction = f;
    };
    t["scenario.recovery_per_step"] = [](RunConfig& c, auto& k, auto& v) {
      c.scenario.recovery_per_step = to_size(k, v);
    };
    t["scenario.attack_prob"] = [](RunConfig& c, auto& k, auto& v) { c.scenario.attack_prob = to_double(k, v); };
    t["scenario.recovery_prob"] = [](RunConfig& c, auto& k, auto& v) { c.scenario.recovery_prob = to_double(k, v); };
    t["scenario.attack_pattern"] = [](RunConfig& c, auto&, auto& v) {
      c.scenario.attack_pattern = parse_target_pattern(trim(v));
    };
    t["scenario.recovery_pattern"] = [](RunConfig& c, auto&, auto& v) {
      c.scenario.recovery_pattern = parse_target_pattern(trim(v));
    };
    t["scenario.adaptation_policy"] = [](RunConfig& c, auto&, auto& v) {
      c.scenario.adaptation = parse_adaptation_mode(trim(v));
    };
    t["scenario.adaptation_shift"] = [](RunConfig& c, auto& k, auto& v) {
      c.scenario.adaptation_shift = to_double(k, v);
    };
    t["scenario.evolution_enabled"] = [](RunConfig& c, auto& k, auto& v) {
      c.scenario.evolution_enabled = to_bool(k, v);
    };
    t["scenario.evolution_bandwidth_rate"] = [](RunConfig& c, auto& k, auto& v) {
      c.scenario.evolution_bandwidth_rate = to_double(k, v);
    };
    t["scenario.evolution_capacity_rate"] = [](RunConfig& c, auto& k, auto& v) {
      c.scenario.evolution_capacity_rate = to_double(k, v);
    };
    t["scenario.cap_max"] = [](RunConfig& c, auto& k, auto& v) { c.scenario.cap_max = to_double(k, v); };
    t["scenario.count_basis"] = [](RunConfig& c, auto&, auto& v) { c.scenario.count_basis = parse_count_basis(v); };
    t["scenario.seed"] = [](RunConfig& c, auto& k, auto& v) { c.scenario.seed = to_u64(k, v); };
    t["scenario.max_steps"] = [](RunConfig& c, auto& k, auto& v) { c.scenario.max_steps = to_size(k, v); };

    t["dbn.factor_alpha"] = [](RunConfig& c, auto& k, auto& v) { c.dbn.factor_alpha = to_double(k, v); };
    t["dbn.weights"] = [](RunConfig& c, const std::string& k, const std::string& v) {
      const auto items = split_list(v);
      if (items.size() != 5) fail(ErrorKind::config, k + ": expected five comma-separated weights");
      for (std::size_t i = 0; i < 5; ++i) c.dbn.weights[i] = to_double(k, items[i]);
    };
    t["dbn.capability_map"] = [](RunConfig& c, const std::string& k, const std::string& v) {
      static const std::map<std::string, std::size_t> names{{"rrc", 0}, {"src", 1}, {"crc", 2}, {"rcc", 3}, {"dec", 4}};
      const auto items = split_list(v);
      if (items.size() != 5) fail(ErrorKind::config, k + ": expected five capability names");
      for (std::size_t i = 0; i < 5; ++i) {
        auto it = names.find(items[i]);
        if (it == names.end()) fail(ErrorKind::config, k + ": unknown capability '" + items[i] + "'");
        c.dbn.capability_source[i] = it->second;
      }
    };

    t["attributes.mai"] = [](RunConfig& c, auto& k, auto& v) { c.attributes.mai = to_double(k, v); };
    t["attributes.capacity_fill"] = [](RunConfig& c, auto& k, auto& v) {
      c.attributes.capacity_fill = to_double(k, v);
    };
    t["attributes.max_bandwidth_min"] = [](RunConfig& c, auto& k, auto& v) {
      c.attributes.max_bandwidth_lo = to_double(k, v);
    };
    t["attributes.max_bandwidth_max"] = [](RunConfig& c, auto& k, auto& v) {
      c.attributes.max_bandwidth_hi = to_double(k, v);
    };
    t["attributes.bandwidth_fraction"] = [](RunConfig& c, auto& k, auto& v) {
      c.attributes.bandwidth_fraction = to_double(k, v);
    };
    t["attributes.rtt_min"] = [](RunConfig& c, auto& k, auto& v) { c.attributes.rtt_lo = to_double(k, v); };
    t["attributes.rtt_max"] = [](RunConfig& c, auto& k, auto& v) { c.attributes.rtt_hi = to_double(k, v); };
    t["attributes.rtt_floor"] = [](RunConfig& c, auto& k, auto& v) { c.attributes.rtt_floor = to_double(k, v); };
    t["attributes.likelihood_min"] = [](RunConfig& c, auto& k, auto& v) {
      c.attributes.likelihood_lo = to_double(k, v);
    };
    t["attributes.likelihood_max"] = [](RunConfig& c, auto& k, auto& v) {
      c.attributes.likelihood_hi = to_double(k, v);
    };
    t["attributes.repair_min"] = [](RunConfig& c, auto& k, auto& v) { c.attributes.repair_lo = to_double(k, v); };
    t["attributes.repair_max"] = [](RunConfig& c, auto& k, auto& v) { c.attributes.repair_hi = to_double(k, v); };

    t["stages.p_up"] = [](RunConfig& c, auto& k, auto& v) { c.p_up_fraction = to_double(k, v); };
    t["stages.p_down"] = [](RunConfig& c, auto& k, auto& v) { c.p_down_fraction = to_double(k, v); };

    t["output.directory"] = [](RunConfig& c, auto&, auto& v) { c.output.directory = trim(v); };
    t["output.json"] = [](RunConfig& c, auto& k, auto& v) { c.output.json = to_bool(k, v); };
    return t;
  }();
  return table;
}

void validate_run_config(const RunConfig& cfg) {
  cfg.topology.validate();
  cfg.dbn.validate();
  cfg.attributes.validate();
  StageThresholds::relative(1.0, cfg.p_up_fraction, cfg.p_down_fraction).validate();
}

}  // namespace

void TopologySpec::validate() const {
  switch (kind) {
    case TopologyKind::er:
      if (er_n < 2) fail(ErrorKind::config, "topology.er_n must be >= 2");
      if (!(er_p >= 0.0 && er_p <= 1.0)) fail(ErrorKind::config, "topology.er_p must lie in [0,1]");
      break;
    case TopologyKind::ba:
      if (ba_m < 1 || ba_n <= ba_m) fail(ErrorKind::config, "topology needs ba_n > ba_m >= 1");
      break;
    case TopologyKind::file:
      if (path.empty()) fail(ErrorKind::config, "topology.path is required for kind = file");
      if (!std::filesystem::exists(path)) fail(ErrorKind::config, "topology file " + path.string() + " does not exist");
      break;
  }
}

void RunConfig::set_seed(std::uint64_t seed) {
  scenario.seed = seed;
  topology.seed.reset();
}

void RunConfig::set(const std::string& dotted_key, const std::string& value) {
  auto it = setters().find(dotted_key);
  if (it == setters().end()) fail(ErrorKind::config, "unknown configuration key '" + dotted_key + "'");
  it->second(*this, dotted_key, value);
}

RunConfig parse_run_config(std::istream& in) {
  pt::ptree tree;
  try {
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    fail(ErrorKind::input, "config line " + std::to_string(e.line()) + ": " + e.message());
  }
  RunConfig cfg;
  for (const auto& [section, body] : tree) {
    if (!body.data().empty()) fail(ErrorKind::config, "key '" + section + "' must live inside a [section]");
    for (const auto& [key, value] : body) cfg.set(section + "." + key, value.data());
  }
  return cfg;
}

RunConfig load_run_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::input, "cannot open config file " + path.string());
  RunConfig cfg = parse_run_config(in);
  if (!cfg.topology.path.empty() && cfg.topology.path.is_relative())
    cfg.topology.path = path.parent_path() / cfg.topology.path;
  validate_run_config(cfg);
  return cfg;
}

Topology build_topology(const RunConfig& cfg) {
  cfg.topology.validate();
  const std::uint64_t seed = cfg.topology.seed.value_or(derive_seed(cfg.scenario.seed, 101));
  switch (cfg.topology.kind) {
    case TopologyKind::er: return generate_er(cfg.topology.er_n, cfg.topology.er_p, seed);
    case TopologyKind::ba: return generate_ba(cfg.topology.ba_n, cfg.topology.ba_m, seed, cfg.topology.ba_classic);
    case TopologyKind::file: return load_graphml(cfg.topology.path).topology;
  }
  fail(ErrorKind::config, "unsupported topology kind");
}

PreparedRun prepare_run(const RunConfig& cfg) {
  validate_run_config(cfg);
  Topology topo = build_topology(cfg);
  const std::size_t n = topo.node_count();
  ScenarioConfig scenario = cfg.scenario;
  if (cfg.attacked_fraction)
    scenario.attacked_count = static_cast<std::size_t>(std::floor(*cfg.attacked_fraction * static_cast<double>(n)));
  ResilientNetwork net = ResilientNetwork::generate(std::move(topo), cfg.attributes, derive_seed(cfg.scenario.seed, 102));
  return PreparedRun{std::move(net), scenario};
}

RunRecord execute_run(const RunConfig& cfg) {
  PreparedRun run = prepare_run(cfg);
  return run_scenario(run.network, run.scenario, cfg.dbn,
                      StageThresholds::relative(1.0, cfg.p_up_fraction, cfg.p_down_fraction));
}

}  // namespace netres
