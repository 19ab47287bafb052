#include "netres/network.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "netres/error.hpp"
#include "netres/graph_metrics.hpp"
#include "netres/rng.hpp"

namespace netres {
namespace {

constexpr double kBudgetSlack = 1e-12;

bool in_unit(double x) { return std::isfinite(x) && x >= 0.0 && x <= 1.0; }

std::string edge_name(const Edge& e) { return "(" + std::to_string(e.u) + "," + std::to_string(e.v) + ")"; }

template <typename Key, typename Value>
bool keys_match(const std::map<Key, Value>& m, const std::vector<Key>& keys) {
  if (m.size() != keys.size()) return false;
  auto it = m.begin();
  for (const Key& k : keys) {
    if (it->first != k) return false;
    ++it;
  }
  return true;
}

void check_range(double lo, double hi, const char* what, bool unit) {
  if (!std::isfinite(lo) || !std::isfinite(hi) || lo > hi || (unit && (lo < 0.0 || hi > 1.0)))
    fail(ErrorKind::config, std::string("attribute range ") + what + " is invalid");
}

}  // namespace

bool NodeCapacity::valid() const {
  for (double x : {observe, control, decide, act})
    if (!std::isfinite(x) || x < 0.0) return false;
  return std::isfinite(max_total) && max_total > 0.0 && total() <= max_total + kBudgetSlack;
}

bool EdgeAttributes::valid(double rtt_floor) const {
  return in_unit(max_bandwidth) && max_bandwidth > 0.0 && std::isfinite(bandwidth) && bandwidth >= 0.0 &&
         bandwidth <= max_bandwidth + kBudgetSlack && std::isfinite(rtt) && rtt >= rtt_floor && rtt <= 1.0;
}

void AttributeRanges::validate() const {
  if (!(mai > 0.0) || !std::isfinite(mai)) fail(ErrorKind::config, "mai must be > 0");
  if (!in_unit(capacity_fill)) fail(ErrorKind::config, "capacity_fill must lie in [0,1]");
  check_range(max_bandwidth_lo, max_bandwidth_hi, "max_bandwidth", true);
  if (max_bandwidth_lo <= 0.0) fail(ErrorKind::config, "max_bandwidth must be > 0");
  if (!in_unit(bandwidth_fraction)) fail(ErrorKind::config, "bandwidth_fraction must lie in [0,1]");
  check_range(rtt_lo, rtt_hi, "rtt", true);
  if (!(rtt_floor > 0.0) || rtt_lo < rtt_floor) fail(ErrorKind::config, "rtt range must lie above rtt_floor > 0");
  check_range(likelihood_lo, likelihood_hi, "likelihood", true);
  check_range(repair_lo, repair_hi, "repair", true);
}

std::map<NodeId, NodeCapacity> initialize_capacities(const Topology& topo, double mai, std::uint64_t seed,
                                                     double fill) {
  if (!(mai > 0.0) || !std::isfinite(mai)) fail(ErrorKind::config, "mai must be > 0");
  if (!in_unit(fill)) fail(ErrorKind::config, "capacity fill must lie in [0,1]");
  Rng rng(seed);
  std::map<NodeId, NodeCapacity> out;
  for (NodeId id : topo.nodes()) {
    double draw[4];
    double sum = 0.0;
    for (double& d : draw) {
      d = uniform(rng, 0.0, 1.0);
      sum += d;
    }
    const double budget = fill * mai;
    NodeCapacity cap;
    cap.max_total = mai;
    if (sum <= 0.0) {
      cap.observe = cap.control = cap.decide = cap.act = budget / 4.0;
    } else {
      cap.observe = budget * draw[0] / sum;
      cap.control = budget * draw[1] / sum;
      cap.decide = budget * draw[2] / sum;
      cap.act = budget * draw[3] / sum;
    }
    out.emplace(id, cap);
  }
  return out;
}

AdaptationPolicy parse_adaptation_policy(std::string_view name) {
  if (name == "none") return AdaptationPolicy::none;
  if (name == "resist") return AdaptationPolicy::resist;
  if (name == "recover") return AdaptationPolicy::recover;
  fail(ErrorKind::config, "unknown adaptation policy '" + std::string(name) + "'");
}

std::string_view to_string(AdaptationPolicy policy) {
  switch (policy) {
    case AdaptationPolicy::none: return "none";
    case AdaptationPolicy::resist: return "resist";
    case AdaptationPolicy::recover: return "recover";
  }
  return "none";
}

ResilientNetwork::ResilientNetwork(Topology topo, std::map<NodeId, NodeCapacity> capacities,
                                   std::map<Edge, EdgeAttributes> edge_attrs, RiskProfile risk, double rtt_floor)
    : rtt_floor_(rtt_floor) {
  if (!(rtt_floor > 0.0)) fail(ErrorKind::config, "rtt_floor must be > 0");
  if (!keys_match(capacities, topo.nodes())) fail(ErrorKind::config, "capacities must cover exactly the nodes");
  if (!keys_match(edge_attrs, topo.edges())) fail(ErrorKind::config, "edge attributes must cover exactly the edges");
  if (!keys_match(risk.node_disruption, topo.nodes()) || !keys_match(risk.node_repair, topo.nodes()))
    fail(ErrorKind::config, "node risk values must cover exactly the nodes");
  if (!keys_match(risk.edge_disruption, topo.edges()) || !keys_match(risk.edge_repair, topo.edges()))
    fail(ErrorKind::config, "edge risk values must cover exactly the edges");

  live_ = NetworkState{std::move(topo), std::move(capacities), std::move(edge_attrs), std::move(risk)};
  for (const auto& [id, cap] : live_.capacities)
    if (!cap.valid()) fail(ErrorKind::config, "capacity budget violated on node " + std::to_string(id));
  for (const auto& [e, attr] : live_.edge_attrs)
    if (!attr.valid(rtt_floor_)) fail(ErrorKind::config, "invalid attributes on edge " + edge_name(e));
  for (const auto* m : {&live_.risk.node_disruption, &live_.risk.node_repair})
    for (const auto& [id, x] : *m)
      if (!in_unit(x)) fail(ErrorKind::config, "node risk value outside [0,1] on node " + std::to_string(id));
  for (const auto* m : {&live_.risk.edge_disruption, &live_.risk.edge_repair})
    for (const auto& [e, x] : *m)
      if (!in_unit(x)) fail(ErrorKind::config, "edge risk value outside [0,1] on edge " + edge_name(e));

  original_ = std::make_shared<const NetworkState>(live_);
}

ResilientNetwork ResilientNetwork::generate(Topology topo, const AttributeRanges& ranges, std::uint64_t seed) {
  ranges.validate();
  auto caps = initialize_capacities(topo, ranges.mai, derive_seed(seed, 0), ranges.capacity_fill);

  Rng rng(derive_seed(seed, 1));
  std::map<Edge, EdgeAttributes> attrs;
  RiskProfile risk;
  for (NodeId id : topo.nodes()) {
    risk.node_disruption[id] = uniform(rng, ranges.likelihood_lo, ranges.likelihood_hi);
    risk.node_repair[id] = uniform(rng, ranges.repair_lo, ranges.repair_hi);
  }
  for (const Edge& e : topo.edges()) {
    EdgeAttributes a;
    a.max_bandwidth = uniform(rng, ranges.max_bandwidth_lo, ranges.max_bandwidth_hi);
    a.bandwidth = ranges.bandwidth_fraction * a.max_bandwidth;
    a.rtt = uniform(rng, ranges.rtt_lo, ranges.rtt_hi);
    attrs.emplace(e, a);
    risk.edge_disruption[e] = uniform(rng, ranges.likelihood_lo, ranges.likelihood_hi);
    risk.edge_repair[e] = uniform(rng, ranges.repair_lo, ranges.repair_hi);
  }
  return ResilientNetwork(std::move(topo), std::move(caps), std::move(attrs), std::move(risk), ranges.rtt_floor);
}

const NodeCapacity& ResilientNetwork::capacity(NodeId id) const {
  auto it = live_.capacities.find(id);
  if (it == live_.capacities.end()) fail(ErrorKind::lookup, "node " + std::to_string(id) + " is not live");
  return it->second;
}

const EdgeAttributes& ResilientNetwork::edge(const Edge& e) const {
  auto it = live_.edge_attrs.find(e);
  if (it == live_.edge_attrs.end()) fail(ErrorKind::lookup, "edge " + edge_name(e) + " is not live");
  return it->second;
}

NodeCapacity& ResilientNetwork::mutable_capacity(NodeId id) {
  auto it = live_.capacities.find(id);
  if (it == live_.capacities.end()) fail(ErrorKind::lookup, "node " + std::to_string(id) + " is not live");
  return it->second;
}

EdgeAttributes& ResilientNetwork::mutable_edge(const Edge& e) {
  auto it = live_.edge_attrs.find(e);
  if (it == live_.edge_attrs.end()) fail(ErrorKind::lookup, "edge " + edge_name(e) + " is not live");
  return it->second;
}

void ResilientNetwork::rebuild_topology(std::vector<NodeId> nodes, std::vector<Edge> edges) {
  live_.topo = Topology(std::move(nodes), std::move(edges));
}

bool ResilientNetwork::destroy_node(NodeId id) {
  if (!original_->topo.has_node(id)) fail(ErrorKind::lookup, "unknown node " + std::to_string(id));
  if (destroyed_nodes_.contains(id)) return false;

  std::vector<NodeId> nodes;
  nodes.reserve(live_.topo.node_count() - 1);
  for (NodeId n : live_.topo.nodes())
    if (n != id) nodes.push_back(n);
  std::vector<Edge> edges;
  edges.reserve(live_.topo.edge_count());
  for (const Edge& e : live_.topo.edges()) {
    if (e.touches(id)) {
      destroyed_edges_.insert(e);
      live_.edge_attrs.erase(e);
      live_.risk.edge_disruption.erase(e);
      live_.risk.edge_repair.erase(e);
    } else {
      edges.push_back(e);
    }
  }
  destroyed_nodes_.insert(id);
  live_.capacities.erase(id);
  live_.risk.node_disruption.erase(id);
  live_.risk.node_repair.erase(id);
  rebuild_topology(std::move(nodes), std::move(edges));
  return true;
}

bool ResilientNetwork::restore_node_alone(NodeId id) {
  if (!destroyed_nodes_.contains(id)) return false;
  destroyed_nodes_.erase(id);
  live_.capacities[id] = original_->capacities.at(id);
  live_.risk.node_disruption[id] = original_->risk.node_disruption.at(id);
  live_.risk.node_repair[id] = original_->risk.node_repair.at(id);
  std::vector<NodeId> nodes = live_.topo.nodes();
  nodes.push_back(id);
  rebuild_topology(std::move(nodes), live_.topo.edges());
  return true;
}

bool ResilientNetwork::restore_node(NodeId id) {
  if (!restore_node_alone(id)) return false;
  std::vector<Edge> edges = live_.topo.edges();
  for (auto it = destroyed_edges_.begin(); it != destroyed_edges_.end();) {
    const Edge e = *it;
    if (e.touches(id) && live_.topo.has_node(e.other(id))) {
      live_.edge_attrs[e] = original_->edge_attrs.at(e);
      live_.risk.edge_disruption[e] = original_->risk.edge_disruption.at(e);
      live_.risk.edge_repair[e] = original_->risk.edge_repair.at(e);
      edges.push_back(e);
      it = destroyed_edges_.erase(it);
    } else {
      ++it;
    }
  }
  rebuild_topology(live_.topo.nodes(), std::move(edges));
  return true;
}

bool ResilientNetwork::restore_edge(const Edge& e) {
  if (!destroyed_edges_.contains(e)) return false;
  if (!live_.topo.has_node(e.u) || !live_.topo.has_node(e.v)) return false;
  destroyed_edges_.erase(e);
  live_.edge_attrs[e] = original_->edge_attrs.at(e);
  live_.risk.edge_disruption[e] = original_->risk.edge_disruption.at(e);
  live_.risk.edge_repair[e] = original_->risk.edge_repair.at(e);
  std::vector<Edge> edges = live_.topo.edges();
  edges.push_back(e);
  rebuild_topology(live_.topo.nodes(), std::move(edges));
  return true;
}

std::vector<Edge> ResilientNetwork::restorable_edges() const {
  std::vector<Edge> out;
  for (const Edge& e : destroyed_edges_)
    if (live_.topo.has_node(e.u) && live_.topo.has_node(e.v)) out.push_back(e);
  return out;
}

void ResilientNetwork::adjust_capacities(AdaptationPolicy policy, double shift_fraction) {
  if (!in_unit(shift_fraction)) fail(ErrorKind::config, "adaptation shift fraction must lie in [0,1]");
  if (policy == AdaptationPolicy::none) return;
  for (auto& [id, cap] : live_.capacities) {
    if (policy == AdaptationPolicy::resist) {
      // control+decide -> observe+act
      const double moved = shift_fraction * (cap.control + cap.decide);
      cap.control *= 1.0 - shift_fraction;
      cap.decide *= 1.0 - shift_fraction;
      cap.observe += moved / 2.0;
      cap.act += moved / 2.0;
    } else {
      // observe -> control+decide+act
      const double moved = shift_fraction * cap.observe;
      cap.observe -= moved;
      cap.control += moved / 3.0;
      cap.decide += moved / 3.0;
      cap.act += moved / 3.0;
    }
  }
}

void ResilientNetwork::reset_capacities() {
  for (auto& [id, cap] : live_.capacities) cap = original_->capacities.at(id);
}

bool ResilientNetwork::invariants_hold() const {
  for (const auto& [id, cap] : live_.capacities)
    if (!cap.valid()) return false;
  for (const auto& [e, attr] : live_.edge_attrs)
    if (!attr.valid(rtt_floor_)) return false;
  if (!keys_match(live_.capacities, live_.topo.nodes()) || !keys_match(live_.edge_attrs, live_.topo.edges()))
    return false;
  for (NodeId id : destroyed_nodes_)
    if (live_.topo.has_node(id)) return false;
  return destroyed_nodes_.size() + live_.topo.node_count() == original_->topo.node_count();
}

NetworkMetrics NetworkMetrics::compute(const ResilientNetwork& net) {
  const Topology& topo = net.topology();
  NetworkMetrics m;
  m.node_betweenness = netres::node_betweenness(topo);
  m.edge_betweenness = netres::edge_betweenness(topo);
  m.normalized_degree = netres::normalized_degrees(topo);

  m.node_criticality.resize(topo.node_count());
  for (std::size_t i = 0; i < topo.node_count(); ++i) {
    const NodeCapacity& cap = net.capacity(topo.nodes()[i]);
    m.node_criticality[i] = m.node_betweenness[i] * (cap.observe + cap.act);
  }
  m.edge_criticality.resize(topo.edge_count());
  const auto& ends = topo.edge_endpoints();
  for (std::size_t k = 0; k < ends.size(); ++k)
    m.edge_criticality[k] =
        m.edge_betweenness[k] * (m.node_criticality[ends[k].first] + m.node_criticality[ends[k].second]);
  return m;
}

double node_criticality(const ResilientNetwork& net, NodeId id) {
  const std::size_t i = net.topology().index_of(id);
  const NodeCapacity& cap = net.capacity(id);
  return node_betweenness(net.topology())[i] * (cap.observe + cap.act);
}

double edge_criticality(const ResilientNetwork& net, const Edge& e) {
  const Topology& topo = net.topology();
  const std::size_t k = topo.edge_index_of(e);
  const auto bn = node_betweenness(topo);
  const auto& a = net.capacity(e.u);
  const auto& b = net.capacity(e.v);
  const double ii = bn[topo.index_of(e.u)] * (a.observe + a.act);
  const double ij = bn[topo.index_of(e.v)] * (b.observe + b.act);
  return edge_betweenness(topo)[k] * (ii + ij);
}

}  // namespace netres
