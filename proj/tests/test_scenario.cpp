#include <algorithm>
#include <random>

#include "doctest.h"
#include "netres/error.hpp"
#include "netres/graph_metrics.hpp"
#include "netres/io.hpp"
#include "netres/scenario.hpp"
#include "oracles.hpp"

using namespace netres;

namespace {

Topology star(std::size_t leaves) {
  std::vector<Edge> e;
  for (std::size_t i = 1; i <= leaves; ++i) e.emplace_back(0, i);
  return Topology::with_nodes(leaves + 1, e);
}

ResilientNetwork network(const Topology& g, std::uint64_t seed, double repair = 1.0) {
  AttributeRanges r;
  r.repair_lo = r.repair_hi = repair;
  return ResilientNetwork::generate(g, r, seed);
}

ResilientNetwork er(std::size_t n, double p, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return network(oracle::random_graph(rng, n, p), seed);
}

ScenarioConfig table1_like(std::size_t n) {
  ScenarioConfig c;
  c.attack_time = 5;
  c.attacked_count = n / 3;
  c.recovery_per_step = 2;
  return c;
}

}  // namespace

TEST_CASE("config validation") {
  ScenarioConfig c;
  c.attacked_count = 11;
  CHECK_THROWS_AS(c.validate(10), Error);
  c.attacked_count = 4;
  c.recovery_per_step = 0;
  CHECK_THROWS_AS(c.validate(10), Error);
  c.recovery_per_step = 2;
  c.attack_prob = 1.5;
  CHECK_THROWS_AS(c.validate(10), Error);
  c.attack_prob = 1.0;
  c.max_steps = 6;  // below T_d + ceil(4/2) = 7
  CHECK_THROWS_AS(c.validate(10), Error);
  c.max_steps = 7;
  CHECK_NOTHROW(c.validate(10));
  CHECK(c.loop_bound() == 7);

  CHECK(parse_target_pattern("centrality") == TargetPattern::centrality);
  CHECK_THROWS_AS(parse_target_pattern("degree"), Error);
  CHECK(parse_adaptation_mode("staged") == AdaptationMode::staged);
  CHECK_THROWS_AS(parse_adaptation_mode("eager"), Error);

  CHECK_THROWS_AS(StageThresholds({1.0, 0.5, 0.6}).validate(), Error);
  CHECK_THROWS_AS(StageThresholds({1.0, 1.1, 0.6}).validate(), Error);
  CHECK_NOTHROW(StageThresholds::relative(1.0).validate());
}

TEST_CASE("attack target selection") {
  Rng rng(1);
  const ResilientNetwork s = network(star(6), 2);
  ScenarioConfig c;
  c.attacked_count = 1;
  c.attack_pattern = TargetPattern::centrality;
  const auto sel = select_attack_targets(s, c, rng);
  CHECK(sel.targets == std::vector<NodeId>{0});
  CHECK(sel.compromised == std::vector<NodeId>{0});

  c.attacked_count = 3;  // ties among leaves go by node id
  CHECK(select_attack_targets(s, c, rng).targets == std::vector<NodeId>{0, 1, 2});

  c.attack_prob = 0.0;
  CHECK(select_attack_targets(s, c, rng).compromised.empty());

  c.attack_prob = 0.5;
  for (NodeId id : select_attack_targets(s, c, rng).compromised)
    CHECK(s.live().risk.node_disruption.at(id) > 0.5);

  c.attack_pattern = TargetPattern::random;
  c.attack_prob = 1.0;
  c.attacked_count = 4;
  const auto r = select_attack_targets(s, c, rng);
  CHECK(r.targets.size() == 4);
  CHECK(r.compromised.size() == 4);

  c.attacked_count = 8;
  CHECK_THROWS_AS(select_attack_targets(s, c, rng), Error);
}

TEST_CASE("recovery step") {
  ResilientNetwork net = er(30, 0.3, 4);
  for (NodeId id = 0; id < 10; ++id) net.destroy_node(id);
  ScenarioConfig c;
  c.recovery_per_step = 2;
  Rng rng(3);
  std::size_t left = 10;
  while (left > 0) {
    const std::size_t got = recovery_step(net, c, rng);
    CHECK(got == std::min<std::size_t>(2, left));
    left -= got;
    CHECK(net.destroyed_nodes().size() == left);
  }
  CHECK(net.destroyed_edges().empty());

  ResilientNetwork stuck = er(10, 0.5, 2);
  stuck.destroy_node(3);
  c.recovery_prob = 0.0;
  for (int i = 0; i < 20; ++i) CHECK(recovery_step(stuck, c, rng) == 0);
  CHECK(stuck.destroyed_nodes().size() == 1);
}

TEST_CASE("recovery centrality pattern restores the hub first") {
  ResilientNetwork net = network(star(5), 1);
  for (NodeId id : {4, 0, 2}) net.destroy_node(id);
  ScenarioConfig c;
  c.recovery_per_step = 1;
  c.recovery_pattern = TargetPattern::centrality;
  Rng rng(0);
  recovery_step(net, c, rng);
  CHECK(net.topology().has_node(0));
  CHECK(net.topology().degree(0) == 3);
}

TEST_CASE("restore probability matches PR * R_i") {
  const ResilientNetwork base = network(Topology::with_nodes(2, {{0, 1}}), 1);
  ScenarioConfig c;
  c.recovery_per_step = 1;
  c.recovery_prob = 0.5;
  Rng rng(42);
  std::size_t hits = 0;
  const int trials = 10000;
  for (int i = 0; i < trials; ++i) {
    ResilientNetwork net = base;
    net.destroy_node(0);
    hits += recovery_step(net, c, rng);
  }
  CHECK(std::abs(static_cast<double>(hits) / trials - 0.5) <= 0.05);
}

TEST_CASE("evolution step") {
  ResilientNetwork net = er(25, 0.3, 6);
  ScenarioConfig off;
  off.evolution_enabled = false;
  ResilientNetwork same = net;
  evolution_step(same, off);
  CHECK(same == net);

  ResilientNetwork full = net;
  for (const Edge& e : full.topology().edges()) full.mutable_edge(e).bandwidth = full.edge(e).max_bandwidth;
  ResilientNetwork full2 = full;
  evolution_step(full2, ScenarioConfig{});
  for (const Edge& e : full.topology().edges()) CHECK(full2.edge(e).bandwidth == full.edge(e).bandwidth);

  const TransitionModel model;
  const CapabilityVector base = evaluate_capabilities(net);
  ResilientNetwork evolved = net;
  double before = 1.0;
  for (int round = 0; round < 5; ++round) {
    evolution_step(evolved, ScenarioConfig{});
    CHECK(evolved.invariants_hold());
    const CapabilityVector c = normalize_capabilities(evaluate_capabilities(evolved), base);
    for (std::size_t k = 0; k < 5; ++k) CHECK(c.normalized[k] >= 1.0 - 1e-12);
    const double p = aggregate_performance(dbn_step(PerformanceState{}, c.normalized, model), model);
    CHECK(p >= before - 1e-12);
    before = p;
  }
  CHECK(before > 1.0);
}

TEST_CASE("baselines") {
  ResilientNetwork net = network(Topology::with_nodes(6, {{0, 1}, {1, 2}, {3, 4}}), 1);
  CHECK(baseline_relative_size(net) == doctest::Approx(0.5));
  CHECK(baseline_flow_robustness(net) == doctest::Approx((6.0 + 2.0) / 30.0));
  net.destroy_node(1);
  CHECK(baseline_relative_size(net) == doctest::Approx(2.0 / 6.0));
  CHECK(baseline_flow_robustness(net) == doctest::Approx(2.0 / 30.0));
}

TEST_CASE("stage labels") {
  const StageThresholds th = StageThresholds::relative(1.0);
  const std::vector<double> p{1, 1, 1, 0.95, 0.7, 0.5, 0.6, 0.8, 0.95, 1.05};
  const auto labels = label_stages(p, th, 3);
  const std::vector<Stage> want{Stage::preparation, Stage::preparation, Stage::preparation, Stage::resistance,
                                Stage::adaptation,  Stage::adaptation,  Stage::recovery,    Stage::recovery,
                                Stage::evolution,   Stage::evolution};
  CHECK(labels == want);
  for (Stage s : label_stages(p, th, 3, false)) CHECK(s == Stage::preparation);
  CHECK(to_string(Stage::recovery) == "recovery");
}

TEST_CASE("no attack gives a flat run") {
  const ResilientNetwork net = er(30, 0.3, 9);
  ScenarioConfig c = table1_like(30);
  c.attacked_count = 0;
  const RunRecord r = run_scenario(net, c, TransitionModel{});
  for (double p : r.series.performance) CHECK(p == r.series.p_nor);
  CHECK(r.cumulative.raw == doctest::Approx(1.0));
  for (Stage s : r.stage_labels) CHECK(s == Stage::preparation);
}

TEST_CASE("table-1 style run bookkeeping") {
  const ResilientNetwork net = er(60, 0.3, 5);
  const ScenarioConfig c = table1_like(60);
  const RunRecord r = run_scenario(net, c, TransitionModel{});

  const std::size_t len = r.size();
  CHECK(len == c.effective_max_steps() + 1);
  CHECK(r.series.states.size() == len);
  CHECK(r.series.capabilities.size() == len);
  CHECK(r.baseline1.size() == len);
  CHECK(r.baseline2.size() == len);
  CHECK(r.stage_labels.size() == len);
  CHECK(r.series.performance[0] == r.series.p_nor);
  CHECK(r.stage_labels[0] == Stage::preparation);

  CHECK(r.destroyed_count[4] == 0);
  CHECK(r.destroyed_count[5] == 20);
  REQUIRE(r.restoration_complete.has_value());
  CHECK(*r.restoration_complete == 5 + 10);
  CHECK(r.series.performance[5] < r.series.performance[4]);
  for (std::size_t t = 6; t <= 15; ++t) CHECK(r.restored_count[t] == 2);

  // normalized values stay inside [0, cap_max]
  for (const auto& cv : r.series.capabilities)
    for (std::size_t k = 0; k < 5; ++k) {
      CHECK(cv.normalized[k] >= 0.0);
      CHECK(cv.normalized[k] <= c.cap_max);
    }
}

TEST_CASE("runs are deterministic and seed-sensitive") {
  const ResilientNetwork net = er(40, 0.3, 12);
  ScenarioConfig c = table1_like(40);
  c.seed = 77;
  const RunRecord a = run_scenario(net, c, TransitionModel{});
  const RunRecord b = run_scenario(net, c, TransitionModel{});
  CHECK(a.series.performance == b.series.performance);
  CHECK(a.baseline2 == b.baseline2);
  c.seed = 78;
  const RunRecord d = run_scenario(net, c, TransitionModel{});
  CHECK(a.compromised != d.compromised);
}

TEST_CASE("intensity grid") {
  ScenarioConfig base;
  base.seed = 5;
  const auto cells = intensity_grid(base, 100);
  REQUIRE(cells.size() == 12);
  CHECK(cells[0].name == "attack_high_random");
  CHECK(cells[0].config.attacked_count == 75);
  CHECK(cells[0].config.attack_prob == 0.8);
  CHECK(cells[5].name == "attack_low_centrality");
  CHECK(cells[5].config.attacked_count == 25);
  CHECK(cells[6].name == "recovery_high_random");
  CHECK(cells[6].config.attacked_count == 50);
  CHECK(cells[6].config.recovery_per_step == 5);
  CHECK(cells[6].config.recovery_prob == 0.8);
  CHECK(cells[11].config.recovery_per_step == 1);
  CHECK(cells[11].config.recovery_prob == 0.2);
  CHECK(cells[11].config.recovery_pattern == TargetPattern::centrality);
  for (std::size_t i = 1; i < cells.size(); ++i) CHECK(cells[i].config.seed != cells[0].config.seed);
}
