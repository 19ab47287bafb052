#include "netres/topology.hpp"

#include <algorithm>
#include <string>

#include "netres/error.hpp"

namespace netres {

Topology::Topology(std::vector<NodeId> nodes, std::vector<Edge> edges)
    : nodes_(std::move(nodes)), edges_(std::move(edges)) {
  std::sort(nodes_.begin(), nodes_.end());
  if (std::adjacent_find(nodes_.begin(), nodes_.end()) != nodes_.end())
    fail(ErrorKind::config, "topology: duplicate node id");

  std::sort(edges_.begin(), edges_.end());
  if (std::adjacent_find(edges_.begin(), edges_.end()) != edges_.end())
    fail(ErrorKind::config, "topology: duplicate edge");

  adjacency_.resize(nodes_.size());
  endpoints_.reserve(edges_.size());
  for (const Edge& e : edges_) {
    if (e.u == e.v) fail(ErrorKind::config, "topology: self-loop on node " + std::to_string(e.u));
    if (!has_node(e.u) || !has_node(e.v))
      fail(ErrorKind::config,
           "topology: edge (" + std::to_string(e.u) + "," + std::to_string(e.v) + ") references unknown node");
    const std::size_t a = index_of(e.u);
    const std::size_t b = index_of(e.v);
    adjacency_[a].push_back(b);
    adjacency_[b].push_back(a);
    endpoints_.emplace_back(a, b);
  }
  for (auto& nbrs : adjacency_) std::sort(nbrs.begin(), nbrs.end());
}

Topology Topology::with_nodes(std::size_t n, std::vector<Edge> edges) {
  std::vector<NodeId> ids(n);
  for (std::size_t i = 0; i < n; ++i) ids[i] = static_cast<NodeId>(i);
  return Topology(std::move(ids), std::move(edges));
}

bool Topology::has_node(NodeId id) const { return std::binary_search(nodes_.begin(), nodes_.end(), id); }

bool Topology::has_edge(const Edge& e) const { return std::binary_search(edges_.begin(), edges_.end(), e); }

std::size_t Topology::index_of(NodeId id) const {
  auto it = std::lower_bound(nodes_.begin(), nodes_.end(), id);
  if (it == nodes_.end() || *it != id) fail(ErrorKind::lookup, "unknown node " + std::to_string(id));
  return static_cast<std::size_t>(it - nodes_.begin());
}

std::size_t Topology::edge_index_of(const Edge& e) const {
  auto it = std::lower_bound(edges_.begin(), edges_.end(), e);
  if (it == edges_.end() || *it != e)
    fail(ErrorKind::lookup, "unknown edge (" + std::to_string(e.u) + "," + std::to_string(e.v) + ")");
  return static_cast<std::size_t>(it - edges_.begin());
}

}  // namespace netres
