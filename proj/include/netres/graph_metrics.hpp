#pragma once

#include <cstddef>
#include <vector>

#include "netres/topology.hpp"

namespace netres {

struct ComponentPartition {
  // Each component lists its node ids ascending; components are ordered by
  // their smallest node id.
  std::vector<std::vector<NodeId>> components;
  // component_of[i] is the component index of topo.nodes()[i].
  std::vector<std::size_t> component_of;

  std::size_t largest_size() const;
};

struct SpectrumResult {
  std::vector<double> eigenvalues;  // non-decreasing
  double zero_tolerance = 0.0;
};

// Union-find over the edge list.
ComponentPartition connected_components(const Topology& topo);

// Fraction of ordered node pairs that can still reach each other.
// Throws Error(domain) when |N| < 2.
double flow_robustness(const Topology& topo);

// Laplacian eigenvalues via a dense symmetric eigensolve. The zero tolerance
// is 1e-9 * max(1, largest eigenvalue).
SpectrumResult laplacian_spectrum(const Topology& topo);

// (|N|-1) / (|N| * sum of 1/lambda over eigenvalues above the zero
// tolerance). Returns 0 when no eigenvalue is above the tolerance.
double effective_graph_resistance(const SpectrumResult& spectrum, std::size_t node_count);
double effective_graph_resistance(const Topology& topo);

// Unweighted shortest-path betweenness (Brandes), aligned with topo.nodes()
// and normalized by the number of unordered pairs not containing the node,
// (|N|-1)(|N|-2)/2. All zeros when |N| < 3.
std::vector<double> node_betweenness(const Topology& topo);

// Unweighted shortest-path edge betweenness, aligned with topo.edges() and
// normalized by |N|(|N|-1)/2.
std::vector<double> edge_betweenness(const Topology& topo);

// Shannon entropy of the degree distribution; zero-degree nodes contribute 0.
// Throws Error(domain) on an edgeless graph.
double structure_entropy(const Topology& topo);

// Degree divided by (|N|-1), aligned with topo.nodes(); zeros when |N| < 2.
std::vector<double> normalized_degrees(const Topology& topo);

}  // namespace netres
