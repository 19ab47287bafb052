#include "netres/capabilities.hpp"

#include <algorithm>
#include <string>

#include "netres/error.hpp"
#include "netres/graph_metrics.hpp"

namespace netres {
namespace {

constexpr const char* kNames[] = {"RRC", "SRC", "CRC", "RCC", "DEC"};

struct Counts {
  double n;
  double e;
  double degree_scale;  // multiplies the live-normalized degree
};

Counts counts(const ResilientNetwork& net, CountBasis basis) {
  const Topology& live = net.topology();
  if (basis == CountBasis::live)
    return {static_cast<double>(live.node_count()), static_cast<double>(live.edge_count()), 1.0};
  const Topology& orig = net.original().topo;
  const double n0 = static_cast<double>(orig.node_count());
  const double n = static_cast<double>(live.node_count());
  return {n0, static_cast<double>(orig.edge_count()), n >= 2 ? (n - 1.0) / (n0 - 1.0) : 0.0};
}

}  // namespace

CountBasis parse_count_basis(std::string_view name) {
  if (name == "original") return CountBasis::original;
  if (name == "live") return CountBasis::live;
  fail(ErrorKind::config, "unknown count basis '" + std::string(name) + "' (expected original or live)");
}

std::string_view to_string(CountBasis basis) { return basis == CountBasis::original ? "original" : "live"; }

double CapabilityValues::operator[](std::size_t k) const {
  switch (k) {
    case 0: return rrc;
    case 1: return src;
    case 2: return crc;
    case 3: return rcc;
    case 4: return dec;
  }
  fail(ErrorKind::range, "capability index out of range");
}

double& CapabilityValues::operator[](std::size_t k) {
  switch (k) {
    case 0: return rrc;
    case 1: return src;
    case 2: return crc;
    case 3: return rcc;
    case 4: return dec;
  }
  fail(ErrorKind::range, "capability index out of range");
}

double rapid_response(const ResilientNetwork& net, const NetworkMetrics& m, CountBasis basis) {
  const Topology& topo = net.topology();
  const std::size_t n = topo.node_count();
  if (n == 0) return 0.0;
  const Counts c = counts(net, basis);
  double node_term = 0.0;
  for (std::size_t i = 0; i < n; ++i) node_term += m.normalized_degree[i] * net.capacity(topo.nodes()[i]).observe;
  node_term *= c.degree_scale / c.n;

  double edge_term = 0.0;
  const std::size_t e = topo.edge_count();
  for (std::size_t k = 0; k < e; ++k) {
    const double rtt = std::max(net.edge(topo.edges()[k]).rtt, net.rtt_floor());
    edge_term += m.edge_betweenness[k] / rtt;
  }
  if (e > 0) edge_term /= c.e;
  return node_term + edge_term;
}

double sustained_resistance_risk(const ResilientNetwork& net, const NetworkMetrics& m) {
  const Topology& topo = net.topology();
  const auto& risk = net.live().risk;
  double denom = 0.0;
  for (std::size_t i = 0; i < topo.node_count(); ++i)
    denom += m.node_criticality[i] * risk.node_disruption.at(topo.nodes()[i]);
  for (std::size_t k = 0; k < topo.edge_count(); ++k)
    denom += m.edge_criticality[k] * risk.edge_disruption.at(topo.edges()[k]);
  return denom;
}

double sustained_resistance(const ResilientNetwork& net, const NetworkMetrics& m, CountBasis basis) {
  const Topology& topo = net.topology();
  const std::size_t n = topo.node_count();
  if (n < 2) return 0.0;
  const Counts c = counts(net, basis);
  double mean_degree = 0.0;
  for (double d : m.normalized_degree) mean_degree += d;
  mean_degree *= c.degree_scale / c.n;
  const double numerator = effective_graph_resistance(topo) * mean_degree;
  return numerator / std::max(sustained_resistance_risk(net, m), kSrcDenominatorFloor);
}

double continuous_running(const ResilientNetwork& net, const NetworkMetrics& m, CountBasis basis) {
  const Topology& topo = net.topology();
  const std::size_t n = topo.node_count();
  if (n < 2) return 0.0;
  double flow = 0.0;
  for (std::size_t k = 0; k < topo.edge_count(); ++k)
    flow += net.edge(topo.edges()[k]).bandwidth * m.edge_criticality[k];
  return flow_robustness(topo) * flow / counts(net, basis).n;
}

double rapid_convergence(const ResilientNetwork& net, const NetworkMetrics& m, CountBasis basis) {
  const Topology& topo = net.topology();
  const std::size_t n = topo.node_count();
  if (n < 2) return 0.0;
  const auto& risk = net.live().risk;
  const Counts c = counts(net, basis);

  double node_term = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const NodeId id = topo.nodes()[i];
    const NodeCapacity& cap = net.capacity(id);
    node_term += risk.node_repair.at(id) *
                 (m.node_betweenness[i] * (cap.control + cap.decide) +
                  m.normalized_degree[i] * c.degree_scale * cap.act);
  }
  node_term /= c.n;

  double edge_term = 0.0;
  for (std::size_t k = 0; k < topo.edge_count(); ++k) {
    const Edge& e = topo.edges()[k];
    const EdgeAttributes& a = net.edge(e);
    edge_term += risk.edge_repair.at(e) * m.edge_betweenness[k] * a.bandwidth / std::max(a.rtt, net.rtt_floor());
  }
  edge_term *= 2.0 / (c.n * (c.n - 1.0));
  return node_term + edge_term;
}

double dynamic_evolution(const ResilientNetwork& net, CountBasis basis) {
  const Topology& topo = net.topology();
  if (topo.edge_count() == 0) return 0.0;
  double mai = 0.0;
  for (const auto& [id, cap] : net.live().capacities) mai += cap.max_total;
  double mbw = 0.0;
  for (const auto& [e, a] : net.live().edge_attrs) mbw += a.max_bandwidth;
  const Counts c = counts(net, basis);
  return structure_entropy(topo) * mai * mbw / (c.n * c.e);
}

double rapid_response(const ResilientNetwork& net) { return rapid_response(net, NetworkMetrics::compute(net)); }
double sustained_resistance(const ResilientNetwork& net) {
  return sustained_resistance(net, NetworkMetrics::compute(net));
}
double continuous_running(const ResilientNetwork& net) { return continuous_running(net, NetworkMetrics::compute(net)); }
double rapid_convergence(const ResilientNetwork& net) { return rapid_convergence(net, NetworkMetrics::compute(net)); }

CapabilityVector evaluate_capabilities(const ResilientNetwork& net, CountBasis basis) {
  const NetworkMetrics m = NetworkMetrics::compute(net);
  CapabilityVector out;
  out.raw.rrc = rapid_response(net, m, basis);
  out.raw.src = sustained_resistance(net, m, basis);
  out.raw.crc = continuous_running(net, m, basis);
  out.raw.rcc = rapid_convergence(net, m, basis);
  out.raw.dec = dynamic_evolution(net, basis);
  out.risk_free = net.topology().node_count() >= 2 && sustained_resistance_risk(net, m) < kSrcDenominatorFloor;
  return out;
}

CapabilityVector normalize_capabilities(const CapabilityVector& raw, const CapabilityVector& baseline,
                                        double cap_max) {
  if (!(cap_max > 0.0)) fail(ErrorKind::config, "cap_max must be > 0");
  CapabilityVector out = raw;
  for (std::size_t k = 0; k < CapabilityValues::size(); ++k) {
    const double base = baseline.raw[k];
    if (!(base > 0.0))
      fail(ErrorKind::config, std::string("baseline ") + kNames[k] + " is " + std::to_string(base) +
                                  "; capability normalization needs a positive baseline");
    out.normalized[k] = std::min(std::max(raw.raw[k], 0.0) / base, cap_max);
  }
  return out;
}

}  // namespace netres
