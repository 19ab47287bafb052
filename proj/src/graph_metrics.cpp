#include "netres/graph_metrics.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>

#include "netres/error.hpp"

namespace netres {
namespace {

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n), rank_(n, 0) { std::iota(parent_.begin(), parent_.end(), 0); }

  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (rank_[a] < rank_[b]) std::swap(a, b);
    parent_[b] = a;
    if (rank_[a] == rank_[b]) ++rank_[a];
  }

 private:
  std::vector<std::size_t> parent_;
  std::vector<unsigned> rank_;
};

// Single-source pass of Brandes' algorithm. Accumulates pair dependencies
// into node and edge scores; each unordered pair is visited twice overall.
struct BrandesWorkspace {
  explicit BrandesWorkspace(std::size_t n)
      : sigma(n), dist(n), delta(n), preds(n) {}

  std::vector<double> sigma;
  std::vector<long> dist;
  std::vector<double> delta;
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> preds;  // (pred node, edge index)
  std::vector<std::size_t> order;
};

std::vector<std::vector<std::size_t>> incident_edge_index(const Topology& topo) {
  // edge index for each adjacency slot
  std::vector<std::vector<std::size_t>> out(topo.node_count());
  for (std::size_t i = 0; i < topo.node_count(); ++i) out[i].resize(topo.degree_at(i));
  const auto& ends = topo.edge_endpoints();
  for (std::size_t k = 0; k < ends.size(); ++k) {
    auto [a, b] = ends[k];
    auto na = topo.neighbors(a);
    auto nb = topo.neighbors(b);
    out[a][static_cast<std::size_t>(std::lower_bound(na.begin(), na.end(), b) - na.begin())] = k;
    out[b][static_cast<std::size_t>(std::lower_bound(nb.begin(), nb.end(), a) - nb.begin())] = k;
  }
  return out;
}

void brandes(const Topology& topo, std::vector<double>* node_scores, std::vector<double>* edge_scores) {
  const std::size_t n = topo.node_count();
  const auto slot_edge = incident_edge_index(topo);
  BrandesWorkspace ws(n);
  ws.order.reserve(n);

  for (std::size_t s = 0; s < n; ++s) {
    std::fill(ws.sigma.begin(), ws.sigma.end(), 0.0);
    std::fill(ws.dist.begin(), ws.dist.end(), -1);
    std::fill(ws.delta.begin(), ws.delta.end(), 0.0);
    for (auto& p : ws.preds) p.clear();
    ws.order.clear();

    ws.sigma[s] = 1.0;
    ws.dist[s] = 0;
    std::queue<std::size_t> q;
    q.push(s);
    while (!q.empty()) {
      const std::size_t v = q.front();
      q.pop();
      ws.order.push_back(v);
      const auto nbrs = topo.neighbors(v);
      for (std::size_t k = 0; k < nbrs.size(); ++k) {
        const std::size_t w = nbrs[k];
        if (ws.dist[w] < 0) {
          ws.dist[w] = ws.dist[v] + 1;
          q.push(w);
        }
        if (ws.dist[w] == ws.dist[v] + 1) {
          ws.sigma[w] += ws.sigma[v];
          ws.preds[w].emplace_back(v, slot_edge[v][k]);
        }
      }
    }

    for (auto it = ws.order.rbegin(); it != ws.order.rend(); ++it) {
      const std::size_t w = *it;
      for (auto [v, e] : ws.preds[w]) {
        const double c = ws.sigma[v] / ws.sigma[w] * (1.0 + ws.delta[w]);
        if (edge_scores) (*edge_scores)[e] += c;
        ws.delta[v] += c;
      }
      if (node_scores && w != s) (*node_scores)[w] += ws.delta[w];
    }
  }
}

}  // namespace

std::size_t ComponentPartition::largest_size() const {
  std::size_t best = 0;
  for (const auto& c : components) best = std::max(best, c.size());
  return best;
}

ComponentPartition connected_components(const Topology& topo) {
  const std::size_t n = topo.node_count();
  DisjointSets sets(n);
  for (auto [a, b] : topo.edge_endpoints()) sets.unite(a, b);

  // Nodes are sorted, so the first time a root is seen is its smallest member.
  ComponentPartition out;
  out.component_of.assign(n, 0);
  std::vector<std::size_t> slot(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t root = sets.find(i);
    if (slot[root] == n) {
      slot[root] = out.components.size();
      out.components.emplace_back();
    }
    out.component_of[i] = slot[root];
    out.components[slot[root]].push_back(topo.nodes()[i]);
  }
  return out;
}

double flow_robustness(const Topology& topo) {
  const std::size_t n = topo.node_count();
  if (n < 2) fail(ErrorKind::domain, "flow robustness needs at least 2 nodes");
  double pairs = 0.0;
  for (const auto& c : connected_components(topo).components) {
    const double s = static_cast<double>(c.size());
    pairs += s * (s - 1.0);
  }
  return pairs / (static_cast<double>(n) * static_cast<double>(n - 1));
}

SpectrumResult laplacian_spectrum(const Topology& topo) {
  const auto n = static_cast<Eigen::Index>(topo.node_count());
  SpectrumResult out;
  if (n == 0) return out;

  Eigen::MatrixXd lap = Eigen::MatrixXd::Zero(n, n);
  for (auto [a, b] : topo.edge_endpoints()) {
    const auto i = static_cast<Eigen::Index>(a);
    const auto j = static_cast<Eigen::Index>(b);
    lap(i, j) -= 1.0;
    lap(j, i) -= 1.0;
    lap(i, i) += 1.0;
    lap(j, j) += 1.0;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(lap, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) fail(ErrorKind::numeric, "Laplacian eigensolve did not converge");

  const auto& ev = solver.eigenvalues();  // ascending
  out.eigenvalues.assign(ev.data(), ev.data() + ev.size());
  out.zero_tolerance = 1e-9 * std::max(1.0, out.eigenvalues.back());
  return out;
}

double effective_graph_resistance(const SpectrumResult& spectrum, std::size_t node_count) {
  if (node_count < 2) return 0.0;
  double inv_sum = 0.0;
  for (double lambda : spectrum.eigenvalues)
    if (lambda > spectrum.zero_tolerance) inv_sum += 1.0 / lambda;
  if (inv_sum == 0.0) return 0.0;
  const double n = static_cast<double>(node_count);
  return (n - 1.0) / (n * inv_sum);
}

double effective_graph_resistance(const Topology& topo) {
  return effective_graph_resistance(laplacian_spectrum(topo), topo.node_count());
}

std::vector<double> node_betweenness(const Topology& topo) {
  const std::size_t n = topo.node_count();
  std::vector<double> scores(n, 0.0);
  if (n < 3) return scores;
  brandes(topo, &scores, nullptr);
  // Both directions of every pair were accumulated.
  const double pairs = static_cast<double>(n - 1) * static_cast<double>(n - 2) / 2.0;
  for (double& s : scores) s = s / 2.0 / pairs;
  return scores;
}

std::vector<double> edge_betweenness(const Topology& topo) {
  const std::size_t n = topo.node_count();
  std::vector<double> scores(topo.edge_count(), 0.0);
  if (n < 2 || scores.empty()) return scores;
  brandes(topo, nullptr, &scores);
  const double pairs = static_cast<double>(n) * static_cast<double>(n - 1) / 2.0;
  for (double& s : scores) s = s / 2.0 / pairs;
  return scores;
}

double structure_entropy(const Topology& topo) {
  const double total = static_cast<double>(topo.total_degree());
  if (total <= 0.0) fail(ErrorKind::domain, "structure entropy undefined on an edgeless graph");
  double h = 0.0;
  for (std::size_t i = 0; i < topo.node_count(); ++i) {
    const std::size_t d = topo.degree_at(i);
    if (d == 0) continue;
    const double p = static_cast<double>(d) / total;
    h -= p * std::log(p);
  }
  return h;
}

std::vector<double> normalized_degrees(const Topology& topo) {
  const std::size_t n = topo.node_count();
  std::vector<double> out(n, 0.0);
  if (n < 2) return out;
  const double denom = static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i) out[i] = static_cast<double>(topo.degree_at(i)) / denom;
  return out;
}

}  // namespace netres
