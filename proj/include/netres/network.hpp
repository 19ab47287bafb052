#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <set>
#include <string_view>
#include <vector>

#include "netres/topology.hpp"

namespace netres {

// Observe/control/decide/act resources of one node, bounded in total by
// max_total (MAI).
struct NodeCapacity {
  double observe = 0.0;
  double control = 0.0;
  double decide = 0.0;
  double act = 0.0;
  double max_total = 1.0;

  double total() const { return observe + control + decide + act; }
  double headroom() const { return max_total - total(); }
  bool valid() const;

  friend bool operator==(const NodeCapacity&, const NodeCapacity&) = default;
};

struct EdgeAttributes {
  double max_bandwidth = 1.0;
  double bandwidth = 0.8;
  double rtt = 0.5;

  bool valid(double rtt_floor) const;

  friend bool operator==(const EdgeAttributes&, const EdgeAttributes&) = default;
};

struct RiskProfile {
  std::map<NodeId, double> node_disruption;  // L_i
  std::map<Edge, double> edge_disruption;    // L_ij
  std::map<NodeId, double> node_repair;      // R_i
  std::map<Edge, double> edge_repair;        // R_ij

  friend bool operator==(const RiskProfile&, const RiskProfile&) = default;
};

// Ranges used to draw initial attributes. Defaults give every node half of
// its MAI budget so adaptation and evolution have room to move.
struct AttributeRanges {
  double mai = 1.0;
  double capacity_fill = 0.5;
  double max_bandwidth_lo = 0.5, max_bandwidth_hi = 1.0;
  double bandwidth_fraction = 0.8;
  double rtt_lo = 0.1, rtt_hi = 1.0;
  double rtt_floor = 1e-3;
  double likelihood_lo = 0.0, likelihood_hi = 1.0;
  double repair_lo = 0.5, repair_hi = 1.0;

  // Throws Error(config) on out-of-range values.
  void validate() const;
};

// Four uniform draws per node rescaled to sum to fill * mai. Deterministic
// for a given seed. Throws Error(config) when mai <= 0 or fill outside [0,1].
std::map<NodeId, NodeCapacity> initialize_capacities(const Topology& topo, double mai, std::uint64_t seed,
                                                     double fill = 0.5);

enum class AdaptationPolicy { none, resist, recover };

// "none" | "resist" | "recover"; throws Error(config) otherwise.
AdaptationPolicy parse_adaptation_policy(std::string_view name);
std::string_view to_string(AdaptationPolicy policy);

// Live element attributes keyed by the live topology.
struct NetworkState {
  Topology topo;
  std::map<NodeId, NodeCapacity> capacities;
  std::map<Edge, EdgeAttributes> edge_attrs;
  RiskProfile risk;

  friend bool operator==(const NetworkState&, const NetworkState&) = default;
};

// Topology plus capacities, edge attributes and risk profile, together with
// the elements currently destroyed and a frozen copy of the intact state.
//
// Destroyed elements keep their original attributes in the frozen copy and
// come back with them when restored.
class ResilientNetwork {
 public:
  // Validates that every map is keyed exactly by the topology's elements and
  // that all invariants hold; throws Error(config) otherwise.
  ResilientNetwork(Topology topo, std::map<NodeId, NodeCapacity> capacities,
                   std::map<Edge, EdgeAttributes> edge_attrs, RiskProfile risk, double rtt_floor = 1e-3);

  // Draws capacities, edge attributes and risk profile from `ranges`.
  static ResilientNetwork generate(Topology topo, const AttributeRanges& ranges, std::uint64_t seed);

  const Topology& topology() const { return live_.topo; }
  const NetworkState& live() const { return live_; }
  const NetworkState& original() const { return *original_; }
  const std::set<NodeId>& destroyed_nodes() const { return destroyed_nodes_; }
  const std::set<Edge>& destroyed_edges() const { return destroyed_edges_; }
  double rtt_floor() const { return rtt_floor_; }

  const NodeCapacity& capacity(NodeId id) const;
  const EdgeAttributes& edge(const Edge& e) const;

  // Removes a live node and its live incident edges. Returns false (and does
  // nothing) if the node is already destroyed; throws Error(lookup) if it was
  // never part of the network.
  bool destroy_node(NodeId id);

  // Brings a destroyed node back with its original capacities together with
  // every original incident edge whose other endpoint is live. Returns false
  // if the node is not destroyed.
  bool restore_node(NodeId id);
  // Same, but leaves the incident edges destroyed.
  bool restore_node_alone(NodeId id);
  // Restores one destroyed edge whose endpoints are both live.
  bool restore_edge(const Edge& e);
  // Destroyed edges whose endpoints are both live, ascending.
  std::vector<Edge> restorable_edges() const;

  // Per-policy capacity shift; every node keeps its Eq. (5) budget.
  void adjust_capacities(AdaptationPolicy policy, double shift_fraction = 0.1);
  // Returns every live node to its original capacity allocation.
  void reset_capacities();

  NodeCapacity& mutable_capacity(NodeId id);
  EdgeAttributes& mutable_edge(const Edge& e);

  // True when every live element satisfies its invariants.
  bool invariants_hold() const;

  friend bool operator==(const ResilientNetwork& a, const ResilientNetwork& b) {
    return a.live_ == b.live_ && a.destroyed_nodes_ == b.destroyed_nodes_ &&
           a.destroyed_edges_ == b.destroyed_edges_ && *a.original_ == *b.original_ &&
           a.rtt_floor_ == b.rtt_floor_;
  }

 private:
  void rebuild_topology(std::vector<NodeId> nodes, std::vector<Edge> edges);

  NetworkState live_;
  std::shared_ptr<const NetworkState> original_;
  std::set<NodeId> destroyed_nodes_;
  std::set<Edge> destroyed_edges_;
  double rtt_floor_ = 1e-3;
};

// Precomputed per-snapshot metrics consumed by the criticality and capability
// formulas. Vectors are aligned with topo.nodes() / topo.edges().
struct NetworkMetrics {
  std::vector<double> node_betweenness;
  std::vector<double> edge_betweenness;
  std::vector<double> normalized_degree;
  std::vector<double> node_criticality;  // BN_i (O_i + A_i)
  std::vector<double> edge_criticality;  // BE_ij (I_i + I_j)

  static NetworkMetrics compute(const ResilientNetwork& net);
};

// I_i = BN_i (O_i + A_i). Throws Error(lookup) for non-live nodes.
double node_criticality(const ResilientNetwork& net, NodeId id);
// I_ij = BE_ij (I_i + I_j). Throws Error(lookup) for non-live edges.
double edge_criticality(const ResilientNetwork& net, const Edge& e);

}  // namespace netres
