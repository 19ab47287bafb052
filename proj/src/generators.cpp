#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "netres/error.hpp"
#include "netres/io.hpp"
#include "netres/rng.hpp"

namespace netres {

Topology generate_er(std::size_t n, double p, std::uint64_t seed) {
  if (n < 2) fail(ErrorKind::config, "ER generator needs n >= 2");
  if (!std::isfinite(p) || p < 0.0 || p > 1.0) fail(ErrorKind::config, "ER generator needs p in [0,1]");
  Rng rng(seed);
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (bernoulli(rng, p)) edges.emplace_back(static_cast<NodeId>(i), static_cast<NodeId>(j));
  return Topology::with_nodes(n, std::move(edges));
}

Topology generate_ba(std::size_t n, std::size_t m, std::uint64_t seed, bool classic) {
  if (m < 1 || n <= m) fail(ErrorKind::config, "BA generator needs n > m >= 1");
  Rng rng(seed);
  std::vector<Edge> edges;
  std::vector<std::size_t> degree(n, 0);
  auto link = [&](std::size_t a, std::size_t b) {
    edges.emplace_back(static_cast<NodeId>(a), static_cast<NodeId>(b));
    ++degree[a];
    ++degree[b];
  };
  for (std::size_t i = 0; i <= m; ++i)
    for (std::size_t j = i + 1; j <= m; ++j) link(i, j);

  // Every edge endpoint, so a uniform pick is degree-proportional.
  std::vector<std::size_t> endpoint_pool;
  if (classic)
    for (const Edge& e : edges) {
      endpoint_pool.push_back(static_cast<std::size_t>(e.u));
      endpoint_pool.push_back(static_cast<std::size_t>(e.v));
    }

  std::vector<std::size_t> existing(m + 1);
  std::iota(existing.begin(), existing.end(), 0);
  for (std::size_t v = m + 1; v < n; ++v) {
    std::vector<std::size_t> targets;
    if (classic) {
      std::set<std::size_t> chosen;
      std::uniform_int_distribution<std::size_t> pick(0, endpoint_pool.size() - 1);
      while (chosen.size() < m) chosen.insert(endpoint_pool[pick(rng)]);
      targets.assign(chosen.begin(), chosen.end());
    } else {
      std::vector<std::size_t> order = existing;
      std::shuffle(order.begin(), order.end(), rng);
      std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return degree[a] > degree[b]; });
      targets.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(m));
    }
    for (std::size_t t : targets) {
      link(v, t);
      if (classic) {
        endpoint_pool.push_back(v);
        endpoint_pool.push_back(t);
      }
    }
    existing.push_back(v);
  }
  return Topology::with_nodes(n, std::move(edges));
}

}  // namespace netres
