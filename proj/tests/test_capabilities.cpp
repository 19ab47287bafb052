#include <cmath>
#include <random>

#include "doctest.h"
#include "netres/capabilities.hpp"
#include "netres/error.hpp"
#include "oracles.hpp"

using namespace netres;

namespace {

struct Fixture {
  std::map<NodeId, NodeCapacity> caps;
  std::map<Edge, EdgeAttributes> attrs;
  RiskProfile risk;
};

Fixture uniform(const Topology& g, NodeCapacity cap, EdgeAttributes attr, double l = 0.5, double r = 1.0) {
  Fixture f;
  for (NodeId id : g.nodes()) {
    f.caps[id] = cap;
    f.risk.node_disruption[id] = l;
    f.risk.node_repair[id] = r;
  }
  for (const Edge& e : g.edges()) {
    f.attrs[e] = attr;
    f.risk.edge_disruption[e] = l;
    f.risk.edge_repair[e] = r;
  }
  return f;
}

ResilientNetwork build(const Topology& g, const Fixture& f) { return ResilientNetwork(g, f.caps, f.attrs, f.risk); }

ResilientNetwork random_network(std::mt19937_64& rng, std::size_t n, std::uint64_t seed) {
  return ResilientNetwork::generate(oracle::random_graph(rng, n, 0.3), AttributeRanges{}, seed);
}

ResilientNetwork with_risk(const ResilientNetwork& net, RiskProfile risk) {
  const NetworkState& s = net.live();
  return ResilientNetwork(s.topo, s.capacities, s.edge_attrs, std::move(risk), net.rtt_floor());
}

}  // namespace

TEST_CASE("rapid response examples") {
  const Topology p2 = Topology::with_nodes(2, {{0, 1}});
  const ResilientNetwork net = build(p2, uniform(p2, {0.5, 0.0, 0.0, 0.0, 1.0}, {1.0, 0.8, 0.5}));
  CHECK(rapid_response(net) == doctest::Approx(2.5).epsilon(1e-12));

  const ResilientNetwork zero = build(p2, uniform(p2, {0.0, 0.0, 0.0, 0.0, 1.0}, {1.0, 0.8, 0.5}));
  CHECK(rapid_response(zero) == doctest::Approx(2.0));

  // isolates: no degree, no edges
  const Topology iso = Topology::with_nodes(3, {});
  CHECK(rapid_response(build(iso, uniform(iso, {0.5, 0, 0, 0, 1}, {}))) == 0.0);
}

TEST_CASE("count basis after a node is destroyed") {
  // P2 plus an isolated node, which is then destroyed: N0 = 3, E0 = 1.
  const Topology g = Topology::with_nodes(3, {{0, 1}});
  ResilientNetwork net = build(g, uniform(g, {0.5, 0.0, 0.0, 0.0, 1.0}, {1.0, 0.8, 0.5}));
  net.destroy_node(2);
  const NetworkMetrics m = NetworkMetrics::compute(net);
  CHECK(rapid_response(net, m, CountBasis::live) == doctest::Approx(2.5).epsilon(1e-12));
  // degrees over N0-1 = 2: (0.5*0.5 + 0.5*0.5)/3 + 2/1
  CHECK(rapid_response(net, m, CountBasis::original) == doctest::Approx(1.0 / 6.0 + 2.0).epsilon(1e-12));
  CHECK(parse_count_basis("live") == CountBasis::live);
  CHECK(to_string(CountBasis::original) == "original");
  CHECK_THROWS_AS(parse_count_basis("current"), Error);
}

TEST_CASE("sustained resistance examples") {
  const Topology k4 = Topology::with_nodes(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}});
  // K4 has zero betweenness everywhere, so the risk sum is floored
  const ResilientNetwork net = build(k4, uniform(k4, {0.25, 0.25, 0.25, 0.25, 1.0}, {}, 1.0));
  CHECK(sustained_resistance(net) == doctest::Approx(1.0 / kSrcDenominatorFloor).epsilon(1e-9));
  CHECK(evaluate_capabilities(net).risk_free);

  // P3 middle node: I_1 = O + A = 0.5, I_ij = 2/3 * 0.5
  const Topology p3 = Topology::with_nodes(3, {{0, 1}, {1, 2}});
  const ResilientNetwork p = build(p3, uniform(p3, {0.25, 0.25, 0.25, 0.25, 1.0}, {}, 1.0));
  const double denom = 0.5 + 2 * (2.0 / 3.0) * 0.5;
  const double mean_deg = (0.5 + 1.0 + 0.5) / 3.0;
  CHECK(sustained_resistance(p) == doctest::Approx(0.5 * mean_deg / denom).epsilon(1e-12));
  CHECK_FALSE(evaluate_capabilities(p).risk_free);

  const ResilientNetwork half = build(p3, uniform(p3, {0.25, 0.25, 0.25, 0.25, 1.0}, {}, 0.5));
  CHECK(sustained_resistance(half) == doctest::Approx(2.0 * sustained_resistance(p)).epsilon(1e-12));
}

TEST_CASE("continuous running examples") {
  const Topology p3 = Topology::with_nodes(3, {{0, 1}, {1, 2}});
  Fixture f = uniform(p3, {0.25, 0.25, 0.25, 0.25, 1.0}, {1.0, 0.6, 0.5});
  f.attrs[Edge(1, 2)].bandwidth = 0.4;
  // I_ij = 1/3 on both edges, FR = 1
  CHECK(continuous_running(build(p3, f)) == doctest::Approx((0.6 + 0.4) / 3.0 / 3.0).epsilon(1e-12));

  Fixture zero_bw = f;
  for (auto& [e, a] : zero_bw.attrs) a.bandwidth = 0.0;
  CHECK(continuous_running(build(p3, zero_bw)) == 0.0);

  const Topology iso = Topology::with_nodes(3, {});
  CHECK(continuous_running(build(iso, uniform(iso, {}, {}))) == 0.0);
}

TEST_CASE("rapid convergence examples") {
  const Topology p2 = Topology::with_nodes(2, {{0, 1}});
  const ResilientNetwork net = build(p2, uniform(p2, {0.0, 0.0, 0.0, 0.4, 1.0}, {1.0, 0.5, 0.5}));
  CHECK(rapid_convergence(net) == doctest::Approx(1.4).epsilon(1e-12));
  const ResilientNetwork idle = build(p2, uniform(p2, {0.0, 0.0, 0.0, 0.4, 1.0}, {1.0, 0.5, 0.5}, 0.5, 0.0));
  CHECK(rapid_convergence(idle) == 0.0);
}

TEST_CASE("dynamic evolution examples") {
  const Topology c4 = Topology::with_nodes(4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}});
  const ResilientNetwork net = build(c4, uniform(c4, {0.25, 0.25, 0.25, 0.25, 1.0}, {1.0, 0.8, 0.5}));
  CHECK(dynamic_evolution(net) == doctest::Approx(std::log(4.0)).epsilon(1e-12));

  const ResilientNetwork half = build(c4, uniform(c4, {0.25, 0.25, 0.25, 0.25, 1.0}, {0.5, 0.4, 0.5}));
  CHECK(dynamic_evolution(net) == doctest::Approx(2.0 * dynamic_evolution(half)).epsilon(1e-12));

  const Topology iso = Topology::with_nodes(2, {});
  CHECK(dynamic_evolution(build(iso, uniform(iso, {}, {}))) == 0.0);
}

TEST_CASE("normalization") {
  std::mt19937_64 rng(1);
  const ResilientNetwork net = random_network(rng, 20, 3);
  const CapabilityVector base = evaluate_capabilities(net);
  const CapabilityVector self = normalize_capabilities(base, base);
  for (std::size_t k = 0; k < 5; ++k) CHECK(self.normalized[k] == 1.0);

  CapabilityVector zero;
  const CapabilityVector z = normalize_capabilities(zero, base);
  for (std::size_t k = 0; k < 5; ++k) CHECK(z.normalized[k] == 0.0);

  CapabilityVector twice = base;
  for (std::size_t k = 0; k < 5; ++k) twice.raw[k] *= 2.0;
  const CapabilityVector c = normalize_capabilities(twice, base);
  for (std::size_t k = 0; k < 5; ++k) CHECK(c.normalized[k] == 1.25);

  CapabilityVector bad = base;
  bad.raw.crc = 0.0;
  CHECK_THROWS_AS(normalize_capabilities(base, bad), Error);
  CHECK_THROWS_AS(normalize_capabilities(base, base, 0.0), Error);
  CHECK_THROWS_AS((void)base.raw[5], Error);
}

TEST_CASE("formulas match the term-by-term oracle") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 100; ++trial) {
    ResilientNetwork net = random_network(rng, 10 + trial % 21, trial);
    if (trial % 3 == 1) net.destroy_node(net.topology().nodes()[trial % net.topology().node_count()]);
    CAPTURE(trial);
    for (CountBasis basis : {CountBasis::original, CountBasis::live}) {
      const CapabilityVector got = evaluate_capabilities(net, basis);
      const oracle::Capabilities want = oracle::capabilities(net, basis == CountBasis::original);
      CHECK(oracle::close(got.raw.rrc, want.rrc, 1e-12));
      CHECK(oracle::close(got.raw.src, want.src, 1e-12));
      CHECK(oracle::close(got.raw.crc, want.crc, 1e-12));
      CHECK(oracle::close(got.raw.rcc, want.rcc, 1e-12));
      CHECK(oracle::close(got.raw.dec, want.dec, 1e-12));
    }
  }
}

TEST_CASE("monotone in positive factors") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 40; ++trial) {
    const ResilientNetwork base = random_network(rng, 12, trial);
    const CapabilityVector c0 = evaluate_capabilities(base);
    const Topology& g = base.topology();
    if (g.edge_count() == 0) continue;
    CAPTURE(trial);
    const NodeId id = g.nodes()[trial % g.node_count()];
    const Edge e = g.edges()[trial % g.edge_count()];

    ResilientNetwork obs = base;
    NodeCapacity& oc = obs.mutable_capacity(id);
    oc.observe += oc.headroom() / 2.0;
    CHECK(evaluate_capabilities(obs).raw.rrc >= c0.raw.rrc);

    ResilientNetwork bw = base;
    bw.mutable_edge(e).bandwidth = bw.edge(e).max_bandwidth;
    const CapabilityVector cb = evaluate_capabilities(bw);
    CHECK(cb.raw.crc >= c0.raw.crc);
    CHECK(cb.raw.rcc >= c0.raw.rcc);

    ResilientNetwork act = base;
    NodeCapacity& ac = act.mutable_capacity(id);
    ac.control += ac.headroom() / 2.0;
    CHECK(evaluate_capabilities(act).raw.rcc >= c0.raw.rcc);

    ResilientNetwork mai = base;
    mai.mutable_capacity(id).max_total += 0.5;
    CHECK(evaluate_capabilities(mai).raw.dec > c0.raw.dec);

    RiskProfile repair = base.live().risk;
    repair.node_repair[id] = 1.0;
    repair.edge_repair[e] = 1.0;
    CHECK(evaluate_capabilities(with_risk(base, repair)).raw.rcc >= c0.raw.rcc);

    RiskProfile riskier = base.live().risk;
    riskier.node_disruption[id] = 1.0;
    riskier.edge_disruption[e] = 1.0;
    CHECK(evaluate_capabilities(with_risk(base, riskier)).raw.src <= c0.raw.src);

    for (std::size_t k = 0; k < 5; ++k) CHECK(c0.raw[k] >= 0.0);
  }
}
