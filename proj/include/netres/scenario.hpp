#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "netres/dbn.hpp"
#include "netres/network.hpp"
#include "netres/rng.hpp"

namespace netres {

enum class TargetPattern { random, centrality };

TargetPattern parse_target_pattern(std::string_view name);
std::string_view to_string(TargetPattern pattern);

// Capacity adaptation applied while the network is damaged. `staged` applies
// the resist policy on the first step after the attack and the recover policy
// afterwards; the other modes apply one policy on every damaged step.
enum class AdaptationMode { staged, none, resist, recover };

AdaptationMode parse_adaptation_mode(std::string_view name);
std::string_view to_string(AdaptationMode mode);

struct ScenarioConfig {
  std::size_t attack_time = 5;        // T_d
  std::size_t attacked_count = 0;     // N_d
  std::size_t recovery_per_step = 2;  // N_r
  double attack_prob = 1.0;           // PA
  double recovery_prob = 1.0;         // PR
  TargetPattern attack_pattern = TargetPattern::random;
  TargetPattern recovery_pattern = TargetPattern::random;
  AdaptationMode adaptation = AdaptationMode::staged;
  double adaptation_shift = 0.1;
  bool evolution_enabled = true;
  double evolution_bandwidth_rate = 0.5;  // share of remaining bandwidth headroom closed per step
  double evolution_capacity_rate = 0.5;   // share of capacity headroom granted to the most central node per step
  double cap_max = kDefaultCapMax;
  CountBasis count_basis = CountBasis::original;
  std::uint64_t seed = 1;
  std::optional<std::size_t> max_steps;  // defaults to loop_bound() + 10

  // T_d + ceil(N_d / N_r).
  std::size_t loop_bound() const;
  std::size_t effective_max_steps() const;

  // Throws Error(config) if any field is out of range for a network with
  // `node_count` nodes.
  void validate(std::size_t node_count) const;
};

struct StageThresholds {
  double p_nor = 1.0;
  double p_up = 0.9;
  double p_down = 0.6;

  static StageThresholds relative(double p_nor, double up_fraction = 0.9, double down_fraction = 0.6);
  // Requires 0 < p_down < p_up <= p_nor.
  void validate() const;
};

enum class Stage { preparation, resistance, adaptation, recovery, evolution };

std::string_view to_string(Stage stage);

struct RunRecord {
  ResilienceSeries series;
  std::vector<Stage> stage_labels;
  std::vector<double> baseline1;  // relative size of the largest component
  std::vector<double> baseline2;  // flow robustness over the original node count
  std::vector<std::size_t> destroyed_count;
  std::vector<std::size_t> restored_count;
  std::vector<NodeId> compromised;
  std::size_t attack_time = 0;
  std::optional<std::size_t> restoration_complete;  // first step with no destroyed node after the attack
  CumulativeResilience cumulative;
  StageThresholds thresholds;

  std::size_t size() const { return series.performance.size(); }
};

struct AttackSelection {
  std::vector<NodeId> targets;      // ordered by the attack pattern
  std::vector<NodeId> compromised;  // targets whose L_i > 1 - PA (all of them when PA = 1)
};

// Throws Error(config) if attacked_count exceeds the live node count.
AttackSelection select_attack_targets(const ResilientNetwork& net, const ScenarioConfig& cfg, Rng& rng);

// Attempts to restore up to N_r destroyed nodes (each with probability
// PR * R_i), then every destroyed edge whose endpoints are live (each with
// probability PR * R_ij). Returns the number of nodes restored.
std::size_t recovery_step(ResilientNetwork& net, const ScenarioConfig& cfg, Rng& rng);

// Moves every edge bandwidth towards its maximum and grants each node a share
// of its unused capacity budget in proportion to its betweenness, split
// between control and decide. Identity when evolution is disabled.
void evolution_step(ResilientNetwork& net, const ScenarioConfig& cfg);

// Largest live component over the original node count.
double baseline_relative_size(const ResilientNetwork& net);
// Reachable ordered pairs over N0 (N0 - 1), destroyed nodes counting as isolated.
double baseline_flow_robustness(const ResilientNetwork& net);

std::vector<Stage> label_stages(const std::vector<double>& performance, const StageThresholds& thresholds,
                                std::size_t attack_time, bool attacked = true);

// Evaluate, attack at T_d, adapt and recover afterwards, evolve once fully
// restored, until max_steps. Deterministic for a given cfg.seed.
RunRecord run_scenario(const ResilientNetwork& net, const ScenarioConfig& cfg, const TransitionModel& model,
                       std::optional<StageThresholds> thresholds = std::nullopt);

struct SweepCell {
  std::string name;  // e.g. "attack_high_random"
  ScenarioConfig config;
};

// Attack-intensity cells (high/mid/low x attack pattern) followed by
// recovery-intensity cells (high/mid/low x recovery pattern). Each cell gets
// its own RNG stream derived from (base.seed, cell index).
std::vector<SweepCell> intensity_grid(const ScenarioConfig& base, std::size_t node_count);

}  // namespace netres
