#include <random>

#include "doctest.h"
#include "netres/error.hpp"
#include "netres/graph_metrics.hpp"
#include "netres/network.hpp"
#include "oracles.hpp"

using namespace netres;

namespace {

Topology star(std::size_t leaves) {
  std::vector<Edge> e;
  for (std::size_t i = 1; i <= leaves; ++i) e.emplace_back(0, i);
  return Topology::with_nodes(leaves + 1, e);
}

// Hand-built network with every capacity and attribute fixed.
ResilientNetwork fixed_network(const Topology& g, NodeCapacity cap = {0.25, 0.25, 0.25, 0.25, 1.0}) {
  std::map<NodeId, NodeCapacity> caps;
  std::map<Edge, EdgeAttributes> attrs;
  RiskProfile risk;
  for (NodeId id : g.nodes()) {
    caps[id] = cap;
    risk.node_disruption[id] = 0.5;
    risk.node_repair[id] = 1.0;
  }
  for (const Edge& e : g.edges()) {
    attrs[e] = EdgeAttributes{1.0, 0.8, 0.5};
    risk.edge_disruption[e] = 0.5;
    risk.edge_repair[e] = 1.0;
  }
  return ResilientNetwork(g, caps, attrs, risk);
}

}  // namespace

TEST_CASE("node criticality") {
  const Topology p3 = Topology::with_nodes(3, {{0, 1}, {1, 2}});
  ResilientNetwork net = fixed_network(p3, {0.5, 0.0, 0.0, 0.5, 1.0});
  CHECK(node_criticality(net, 1) == doctest::Approx(1.0));
  CHECK(node_criticality(net, 0) == 0.0);

  ResilientNetwork s = fixed_network(star(4));
  s.mutable_capacity(0) = {0.3, 0.1, 0.1, 0.2, 1.0};
  CHECK(node_criticality(s, 0) == doctest::Approx(0.5));
  CHECK(node_criticality(s, 3) == 0.0);

  CHECK_THROWS_AS((void)node_criticality(net, 7), Error);
  net.destroy_node(2);
  CHECK_THROWS_AS((void)node_criticality(net, 2), Error);
}

TEST_CASE("edge criticality") {
  const Topology p3 = Topology::with_nodes(3, {{0, 1}, {1, 2}});
  const ResilientNetwork net = fixed_network(p3, {0.5, 0.0, 0.0, 0.5, 1.0});
  // BE = 2/3 on each edge, I_0 = 0, I_1 = 1
  CHECK(edge_criticality(net, Edge(0, 1)) == doctest::Approx(2.0 / 3.0));
  CHECK_THROWS_AS((void)edge_criticality(net, Edge(0, 2)), Error);

  // only isolated edges: BN = 0 everywhere so I_ij = 0
  const ResilientNetwork pair = fixed_network(Topology::with_nodes(4, {{0, 1}, {2, 3}}));
  CHECK(edge_criticality(pair, Edge(0, 1)) == 0.0);
}

TEST_CASE("constructor validates keys and invariants") {
  const Topology g = Topology::with_nodes(2, {{0, 1}});
  std::map<NodeId, NodeCapacity> caps{{0, {}}, {1, {}}};
  std::map<Edge, EdgeAttributes> attrs{{Edge(0, 1), {}}};
  RiskProfile risk{{{0, 0.1}, {1, 0.1}}, {{Edge(0, 1), 0.1}}, {{0, 1.0}, {1, 1.0}}, {{Edge(0, 1), 1.0}}};
  CHECK_NOTHROW(ResilientNetwork(g, caps, attrs, risk));

  auto bad_caps = caps;
  bad_caps.erase(1);
  CHECK_THROWS_AS(ResilientNetwork(g, bad_caps, attrs, risk), Error);

  auto over = caps;
  over[0] = {0.5, 0.5, 0.5, 0.5, 1.0};
  CHECK_THROWS_AS(ResilientNetwork(g, over, attrs, risk), Error);

  auto wide = attrs;
  wide[Edge(0, 1)].bandwidth = 2.0;
  CHECK_THROWS_AS(ResilientNetwork(g, caps, wide, risk), Error);

  auto bad_risk = risk;
  bad_risk.node_disruption[0] = 1.5;
  CHECK_THROWS_AS(ResilientNetwork(g, caps, attrs, bad_risk), Error);
}

TEST_CASE("capacity initialization") {
  const Topology g = Topology::with_nodes(10000, {});
  const auto a = initialize_capacities(g, 1.0, 5);
  CHECK(a == initialize_capacities(g, 1.0, 5));
  CHECK(a != initialize_capacities(g, 1.0, 6));

  double sums[4] = {0, 0, 0, 0};
  for (const auto& [id, c] : a) {
    CHECK(c.valid());
    CHECK(c.total() == doctest::Approx(0.5));
    sums[0] += c.observe;
    sums[1] += c.control;
    sums[2] += c.decide;
    sums[3] += c.act;
  }
  // symmetric draws rescaled to 0.5: each share has mean 0.125
  for (double s : sums) CHECK(std::abs(s / 10000.0 - 0.125) <= 0.01);

  CHECK_THROWS_AS(initialize_capacities(g, 0.0, 1), Error);
  CHECK_THROWS_AS(initialize_capacities(g, 1.0, 1, 1.5), Error);
}

TEST_CASE("generated attributes respect their ranges") {
  std::mt19937_64 rng(3);
  const Topology g = oracle::random_graph(rng, 40, 0.2);
  const AttributeRanges r;
  const ResilientNetwork net = ResilientNetwork::generate(g, r, 11);
  CHECK(net.invariants_hold());
  CHECK(net == ResilientNetwork::generate(g, r, 11));
  for (const auto& [e, a] : net.live().edge_attrs) {
    CHECK(a.max_bandwidth >= 0.5);
    CHECK(a.max_bandwidth <= 1.0);
    CHECK(a.bandwidth == doctest::Approx(0.8 * a.max_bandwidth));
    CHECK(a.rtt >= 0.1);
    CHECK(a.rtt <= 1.0);
  }
  for (const auto& [id, rate] : net.live().risk.node_repair) {
    CHECK(rate >= 0.5);
    CHECK(rate <= 1.0);
  }

  AttributeRanges bad;
  bad.rtt_lo = 0.0;
  CHECK_THROWS_AS(bad.validate(), Error);
}

TEST_CASE("destroy and restore") {
  SUBCASE("isolated node") {
    ResilientNetwork net = fixed_network(Topology::with_nodes(3, {{0, 1}}));
    CHECK(net.destroy_node(2));
    CHECK(net.topology().edge_count() == 1);
    CHECK(net.destroyed_edges().empty());
  }
  SUBCASE("star center takes every edge") {
    ResilientNetwork net = fixed_network(star(5));
    CHECK(net.destroy_node(0));
    CHECK(net.topology().edge_count() == 0);
    CHECK(net.destroyed_edges().size() == 5);
    CHECK_FALSE(net.destroy_node(0));
    CHECK_THROWS_AS(net.destroy_node(99), Error);
  }
  SUBCASE("round trip with intact neighbours is an identity") {
    const ResilientNetwork before = fixed_network(star(5));
    ResilientNetwork net = before;
    net.destroy_node(3);
    CHECK(net.restore_node(3));
    CHECK(net == before);
    CHECK_FALSE(net.restore_node(3));
  }
  SUBCASE("restored node returns isolated when neighbours are gone") {
    ResilientNetwork net = fixed_network(star(3));
    net.destroy_node(1);
    net.destroy_node(0);
    net.restore_node(1);
    CHECK(net.topology().has_node(1));
    CHECK(net.topology().degree(1) == 0);
    CHECK(net.restorable_edges().empty());
    net.restore_node_alone(0);
    CHECK(net.restorable_edges() == std::vector<Edge>{Edge(0, 1), Edge(0, 2), Edge(0, 3)});
    CHECK(net.restore_edge(Edge(0, 1)));
    CHECK(net.topology().degree(0) == 1);
  }
}

TEST_CASE("destroy/restore properties on random networks") {
  std::mt19937_64 rng(19);
  for (int trial = 0; trial < 100; ++trial) {
    const Topology g = oracle::random_graph(rng, 5 + trial % 8, 0.4);
    const ResilientNetwork before = ResilientNetwork::generate(g, AttributeRanges{}, trial);
    ResilientNetwork net = before;
    CAPTURE(trial);

    std::vector<NodeId> order = g.nodes();
    std::shuffle(order.begin(), order.end(), rng);
    for (std::size_t k = 0; k < order.size(); ++k) {
      net.destroy_node(order[k]);
      CHECK(net.invariants_hold());
      if (net.topology().node_count() >= 2)
        CHECK(flow_robustness(net.topology()) == oracle::flow_robustness(net.topology()));
      if (k % 2 == 0) net.adjust_capacities(AdaptationPolicy::resist);
      else net.adjust_capacities(AdaptationPolicy::recover);
      CHECK(net.invariants_hold());
    }
    std::shuffle(order.begin(), order.end(), rng);
    for (NodeId id : order) net.restore_node(id);
    net.reset_capacities();
    CHECK(net == before);
  }
}

TEST_CASE("adaptation policies") {
  std::mt19937_64 rng(8);
  const ResilientNetwork base = ResilientNetwork::generate(oracle::random_graph(rng, 30, 0.3), AttributeRanges{}, 4);

  ResilientNetwork none = base;
  none.adjust_capacities(AdaptationPolicy::none);
  CHECK(none == base);

  ResilientNetwork resist = base;
  resist.adjust_capacities(AdaptationPolicy::resist);
  for (const auto& [id, c] : resist.live().capacities) {
    const NodeCapacity& b = base.capacity(id);
    CHECK(c.total() == doctest::Approx(b.total()).epsilon(1e-12));
    CHECK(c.observe + c.act >= b.observe + b.act);
    CHECK(c.valid());
  }

  ResilientNetwork recover = base;
  recover.adjust_capacities(AdaptationPolicy::recover, 0.5);
  for (const auto& [id, c] : recover.live().capacities) {
    CHECK(c.total() == doctest::Approx(base.capacity(id).total()).epsilon(1e-12));
    CHECK(c.observe == doctest::Approx(base.capacity(id).observe * 0.5));
  }

  CHECK(parse_adaptation_policy("resist") == AdaptationPolicy::resist);
  CHECK_THROWS_AS(parse_adaptation_policy("harden"), Error);
  CHECK_THROWS_AS(resist.adjust_capacities(AdaptationPolicy::resist, 1.5), Error);
}

TEST_CASE("criticalities are non-negative and vanish with edge betweenness") {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 50; ++trial) {
    const ResilientNetwork net = ResilientNetwork::generate(oracle::random_graph(rng, 12, 0.25), AttributeRanges{}, trial);
    const NetworkMetrics m = NetworkMetrics::compute(net);
    for (double x : m.node_criticality) CHECK(x >= 0.0);
    for (std::size_t k = 0; k < m.edge_criticality.size(); ++k) {
      CHECK(m.edge_criticality[k] >= 0.0);
      if (m.edge_betweenness[k] == 0.0) CHECK(m.edge_criticality[k] == 0.0);
    }
  }
}
