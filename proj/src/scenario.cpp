#include "netres/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "netres/error.hpp"
#include "netres/graph_metrics.hpp"

namespace netres {
namespace {

bool in_unit(double x) { return std::isfinite(x) && x >= 0.0 && x <= 1.0; }

std::size_t ceil_div(std::size_t a, std::size_t b) { return (a + b - 1) / b; }

}  // namespace

TargetPattern parse_target_pattern(std::string_view name) {
  if (name == "random") return TargetPattern::random;
  if (name == "centrality") return TargetPattern::centrality;
  fail(ErrorKind::config, "unknown pattern '" + std::string(name) + "' (expected random or centrality)");
}

std::string_view to_string(TargetPattern pattern) {
  return pattern == TargetPattern::random ? "random" : "centrality";
}

AdaptationMode parse_adaptation_mode(std::string_view name) {
  if (name == "staged") return AdaptationMode::staged;
  switch (parse_adaptation_policy(name)) {
    case AdaptationPolicy::none: return AdaptationMode::none;
    case AdaptationPolicy::resist: return AdaptationMode::resist;
    case AdaptationPolicy::recover: return AdaptationMode::recover;
  }
  return AdaptationMode::staged;
}

std::string_view to_string(AdaptationMode mode) {
  switch (mode) {
    case AdaptationMode::staged: return "staged";
    case AdaptationMode::none: return "none";
    case AdaptationMode::resist: return "resist";
    case AdaptationMode::recover: return "recover";
  }
  return "staged";
}

std::string_view to_string(Stage stage) {
  switch (stage) {
    case Stage::preparation: return "preparation";
    case Stage::resistance: return "resistance";
    case Stage::adaptation: return "adaptation";
    case Stage::recovery: return "recovery";
    case Stage::evolution: return "evolution";
  }
  return "preparation";
}

std::size_t ScenarioConfig::loop_bound() const {
  return attack_time + ceil_div(attacked_count, std::max<std::size_t>(recovery_per_step, 1));
}

std::size_t ScenarioConfig::effective_max_steps() const { return max_steps.value_or(loop_bound() + 10); }

void ScenarioConfig::validate(std::size_t node_count) const {
  if (attack_time < 1) fail(ErrorKind::config, "attack_time must be >= 1 (step 0 is the intact baseline)");
  if (attacked_count > node_count)
    fail(ErrorKind::config, "attacked_count " + std::to_string(attacked_count) + " exceeds " +
                                std::to_string(node_count) + " nodes");
  if (recovery_per_step < 1) fail(ErrorKind::config, "recovery_per_step must be >= 1");
  if (!in_unit(attack_prob)) fail(ErrorKind::config, "attack_prob must lie in [0,1]");
  if (!in_unit(recovery_prob)) fail(ErrorKind::config, "recovery_prob must lie in [0,1]");
  if (!in_unit(adaptation_shift)) fail(ErrorKind::config, "adaptation_shift must lie in [0,1]");
  if (!in_unit(evolution_bandwidth_rate) || !in_unit(evolution_capacity_rate))
    fail(ErrorKind::config, "evolution rates must lie in [0,1]");
  if (!(cap_max > 0.0) || !std::isfinite(cap_max)) fail(ErrorKind::config, "cap_max must be > 0");
  if (effective_max_steps() < loop_bound())
    fail(ErrorKind::config, "max_steps must be at least attack_time + ceil(attacked_count / recovery_per_step) = " +
                                std::to_string(loop_bound()));
}

StageThresholds StageThresholds::relative(double p_nor, double up_fraction, double down_fraction) {
  return StageThresholds{p_nor, up_fraction * p_nor, down_fraction * p_nor};
}

void StageThresholds::validate() const {
  if (!(0.0 < p_down && p_down < p_up && p_up <= p_nor))
    fail(ErrorKind::config, "stage thresholds need 0 < p_down < p_up <= p_nor");
}

AttackSelection select_attack_targets(const ResilientNetwork& net, const ScenarioConfig& cfg, Rng& rng) {
  const Topology& topo = net.topology();
  if (cfg.attacked_count > topo.node_count())
    fail(ErrorKind::config, "attacked_count exceeds the live node count");

  AttackSelection out;
  std::vector<NodeId> order = topo.nodes();
  if (cfg.attack_pattern == TargetPattern::random) {
    std::shuffle(order.begin(), order.end(), rng);
  } else {
    std::stable_sort(order.begin(), order.end(),
                     [&](NodeId a, NodeId b) { return topo.degree(a) > topo.degree(b); });
  }
  order.resize(cfg.attacked_count);
  out.targets = order;

  const auto& likelihood = net.live().risk.node_disruption;
  for (NodeId id : out.targets)
    if (cfg.attack_prob >= 1.0 || likelihood.at(id) > 1.0 - cfg.attack_prob) out.compromised.push_back(id);
  return out;
}

std::size_t recovery_step(ResilientNetwork& net, const ScenarioConfig& cfg, Rng& rng) {
  std::vector<NodeId> candidates(net.destroyed_nodes().begin(), net.destroyed_nodes().end());
  const Topology& original = net.original().topo;
  if (cfg.recovery_pattern == TargetPattern::random) {
    std::shuffle(candidates.begin(), candidates.end(), rng);
  } else {
    std::stable_sort(candidates.begin(), candidates.end(),
                     [&](NodeId a, NodeId b) { return original.degree(a) > original.degree(b); });
  }
  candidates.resize(std::min(candidates.size(), cfg.recovery_per_step));

  std::size_t restored = 0;
  const auto& repair = net.original().risk.node_repair;
  for (NodeId id : candidates) {
    if (bernoulli(rng, cfg.recovery_prob * repair.at(id))) {
      net.restore_node_alone(id);
      ++restored;
    }
  }
  const auto& edge_repair = net.original().risk.edge_repair;
  for (const Edge& e : net.restorable_edges())
    if (bernoulli(rng, cfg.recovery_prob * edge_repair.at(e))) net.restore_edge(e);
  return restored;
}

void evolution_step(ResilientNetwork& net, const ScenarioConfig& cfg) {
  if (!cfg.evolution_enabled) return;
  const Topology& topo = net.topology();
  for (const Edge& e : topo.edges()) {
    EdgeAttributes& a = net.mutable_edge(e);
    a.bandwidth += cfg.evolution_bandwidth_rate * (a.max_bandwidth - a.bandwidth);
    a.bandwidth = std::min(a.bandwidth, a.max_bandwidth);
  }

  const auto bn = node_betweenness(topo);
  const double top = bn.empty() ? 0.0 : *std::max_element(bn.begin(), bn.end());
  if (top <= 0.0) return;
  for (std::size_t i = 0; i < topo.node_count(); ++i) {
    NodeCapacity& cap = net.mutable_capacity(topo.nodes()[i]);
    const double gain = cfg.evolution_capacity_rate * std::max(cap.headroom(), 0.0) * bn[i] / top;
    cap.control += gain / 2.0;
    cap.decide += gain / 2.0;
  }
}

double baseline_relative_size(const ResilientNetwork& net) {
  const std::size_t n0 = net.original().topo.node_count();
  if (n0 == 0) return 0.0;
  return static_cast<double>(connected_components(net.topology()).largest_size()) / static_cast<double>(n0);
}

double baseline_flow_robustness(const ResilientNetwork& net) {
  const std::size_t n0 = net.original().topo.node_count();
  if (n0 < 2) return 0.0;
  double pairs = 0.0;
  for (const auto& c : connected_components(net.topology()).components) {
    const double s = static_cast<double>(c.size());
    pairs += s * (s - 1.0);
  }
  return pairs / (static_cast<double>(n0) * static_cast<double>(n0 - 1));
}

std::vector<Stage> label_stages(const std::vector<double>& performance, const StageThresholds& thresholds,
                                std::size_t attack_time, bool attacked) {
  std::vector<Stage> labels(performance.size(), Stage::preparation);
  if (!attacked) return labels;
  Stage current = Stage::resistance;
  for (std::size_t t = attack_time; t < performance.size(); ++t) {
    const double p = performance[t];
    const double prev = t > 0 ? performance[t - 1] : p;
    const bool above = p >= thresholds.p_up;
    switch (current) {
      case Stage::preparation:
      case Stage::resistance:
        current = above ? Stage::resistance : Stage::adaptation;
        break;
      case Stage::adaptation:
      case Stage::recovery:
        if (above)
          current = Stage::evolution;
        else
          current = p > prev ? Stage::recovery : Stage::adaptation;
        break;
      case Stage::evolution:
        if (!above) current = Stage::adaptation;
        break;
    }
    labels[t] = current;
  }
  return labels;
}

RunRecord run_scenario(const ResilientNetwork& initial, const ScenarioConfig& cfg, const TransitionModel& model,
                       std::optional<StageThresholds> thresholds) {
  model.validate();
  cfg.validate(initial.topology().node_count());

  ResilientNetwork net = initial;
  Rng rng(cfg.seed);

  RunRecord rec;
  rec.attack_time = cfg.attack_time;

  const CapabilityVector baseline = evaluate_capabilities(net, cfg.count_basis);
  CapabilityVector caps = normalize_capabilities(baseline, baseline, cfg.cap_max);
  PerformanceState state;  // all ones
  rec.series.p_nor = aggregate_performance(state, model);
  rec.thresholds = thresholds.value_or(StageThresholds::relative(rec.series.p_nor));
  rec.thresholds.validate();

  auto record_step = [&](std::size_t restored) {
    rec.series.performance.push_back(aggregate_performance(state, model));
    rec.series.states.push_back(state);
    rec.series.capabilities.push_back(caps);
    rec.baseline1.push_back(baseline_relative_size(net));
    rec.baseline2.push_back(baseline_flow_robustness(net));
    rec.destroyed_count.push_back(net.destroyed_nodes().size());
    rec.restored_count.push_back(restored);
  };
  record_step(0);

  bool attacked = false;
  bool first_adaptation = true;
  const std::size_t max_steps = cfg.effective_max_steps();
  for (std::size_t step = 1; step <= max_steps; ++step) {
    std::size_t restored = 0;
    if (step == cfg.attack_time) {
      const AttackSelection sel = select_attack_targets(net, cfg, rng);
      for (NodeId id : sel.compromised) (void)net.destroy_node(id);
      rec.compromised = sel.compromised;
      attacked = !sel.compromised.empty();
    }
    if (step > cfg.attack_time && attacked) {
      if (!net.destroyed_nodes().empty()) {
        AdaptationPolicy policy = AdaptationPolicy::none;
        switch (cfg.adaptation) {
          case AdaptationMode::staged:
            policy = first_adaptation ? AdaptationPolicy::resist : AdaptationPolicy::recover;
            break;
          case AdaptationMode::none: policy = AdaptationPolicy::none; break;
          case AdaptationMode::resist: policy = AdaptationPolicy::resist; break;
          case AdaptationMode::recover: policy = AdaptationPolicy::recover; break;
        }
        first_adaptation = false;
        net.adjust_capacities(policy, cfg.adaptation_shift);
        restored = recovery_step(net, cfg, rng);
        if (net.destroyed_nodes().empty()) {
          rec.restoration_complete = step;
          // Adapted allocations are released once the network is whole again.
          net.reset_capacities();
        }
      } else {
        if (!net.destroyed_edges().empty()) recovery_step(net, cfg, rng);
        evolution_step(net, cfg);
      }
    }

    caps = normalize_capabilities(evaluate_capabilities(net, cfg.count_basis), baseline, cfg.cap_max);
    state = dbn_step(state, caps.normalized, model);
    record_step(restored);
  }

  rec.stage_labels = label_stages(rec.series.performance, rec.thresholds, cfg.attack_time, attacked);
  const long horizon = static_cast<long>(rec.size()) - static_cast<long>(cfg.attack_time);
  rec.cumulative = cumulative_resilience(rec.series, cfg.attack_time, horizon);
  return rec;
}

std::vector<SweepCell> intensity_grid(const ScenarioConfig& base, std::size_t node_count) {
  struct Level {
    const char* name;
    double fraction;
    double prob;
    std::size_t per_step;
  };
  const Level attack_levels[] = {{"high", 0.75, 0.8, 0}, {"mid", 0.5, 0.5, 0}, {"low", 0.25, 0.2, 0}};
  const Level recovery_levels[] = {{"high", 0.0, 0.8, 5}, {"mid", 0.0, 0.5, 2}, {"low", 0.0, 0.2, 1}};
  const TargetPattern patterns[] = {TargetPattern::random, TargetPattern::centrality};
  const auto share = [&](double f) { return static_cast<std::size_t>(std::floor(f * static_cast<double>(node_count))); };

  std::vector<SweepCell> cells;
  for (const Level& lv : attack_levels) {
    for (TargetPattern p : patterns) {
      ScenarioConfig c = base;
      c.attacked_count = share(lv.fraction);
      c.attack_prob = lv.prob;
      c.recovery_per_step = 2;
      c.recovery_prob = 1.0;
      c.attack_pattern = p;
      c.max_steps.reset();
      cells.push_back({"attack_" + std::string(lv.name) + "_" + std::string(to_string(p)), c});
    }
  }
  for (const Level& lv : recovery_levels) {
    for (TargetPattern p : patterns) {
      ScenarioConfig c = base;
      c.attacked_count = share(0.5);
      c.attack_prob = 1.0;
      c.recovery_per_step = lv.per_step;
      c.recovery_prob = lv.prob;
      c.recovery_pattern = p;
      c.max_steps.reset();
      cells.push_back({"recovery_" + std::string(lv.name) + "_" + std::string(to_string(p)), c});
    }
  }
  for (std::size_t i = 0; i < cells.size(); ++i) cells[i].config.seed = derive_seed(base.seed, i);
  return cells;
}

}  // namespace netres
