#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace netres {

using NodeId = std::int64_t;

// Undirected edge, always stored with u < v.
struct Edge {
  NodeId u = 0;
  NodeId v = 0;

  Edge() = default;
  Edge(NodeId a, NodeId b) : u(a < b ? a : b), v(a < b ? b : a) {}

  bool touches(NodeId n) const { return u == n || v == n; }
  NodeId other(NodeId n) const { return n == u ? v : u; }

  friend auto operator<=>(const Edge&, const Edge&) = default;
};

// Immutable simple undirected graph over opaque integer node ids.
//
// Nodes and edges are kept sorted; every per-node or per-edge value vector
// produced by the metric functions is aligned with nodes() / edges().
// Internally the graph is also exposed through dense indices
// [0, node_count()) so that traversals do not pay for id lookups.
class Topology {
 public:
  Topology() = default;

  // Throws Error(config) on self-loops, duplicate edges, duplicate node ids or
  // edges whose endpoints are not in `nodes`.
  Topology(std::vector<NodeId> nodes, std::vector<Edge> edges);

  // Nodes 0..n-1 with the given edges.
  static Topology with_nodes(std::size_t n, std::vector<Edge> edges);

  const std::vector<NodeId>& nodes() const { return nodes_; }
  const std::vector<Edge>& edges() const { return edges_; }
  std::size_t node_count() const { return nodes_.size(); }
  std::size_t edge_count() const { return edges_.size(); }
  bool empty() const { return nodes_.empty(); }

  bool has_node(NodeId id) const;
  bool has_edge(const Edge& e) const;

  // Dense index of `id`; throws Error(lookup) for unknown nodes.
  std::size_t index_of(NodeId id) const;
  // Dense index of `e` in edges(); throws Error(lookup) for unknown edges.
  std::size_t edge_index_of(const Edge& e) const;

  // Dense neighbour indices of the node at dense index `i`, ascending.
  std::span<const std::size_t> neighbors(std::size_t i) const { return adjacency_[i]; }
  std::size_t degree_at(std::size_t i) const { return adjacency_[i].size(); }
  std::size_t degree(NodeId id) const { return degree_at(index_of(id)); }
  std::size_t total_degree() const { return 2 * edges_.size(); }

  // Edge endpoints as dense indices, aligned with edges().
  const std::vector<std::pair<std::size_t, std::size_t>>& edge_endpoints() const { return endpoints_; }

  friend bool operator==(const Topology& a, const Topology& b) {
    return a.nodes_ == b.nodes_ && a.edges_ == b.edges_;
  }

 private:
  std::vector<NodeId> nodes_;
  std::vector<Edge> edges_;
  std::vector<std::vector<std::size_t>> adjacency_;
  std::vector<std::pair<std::size_t, std::size_t>> endpoints_;
};

}  // namespace netres
