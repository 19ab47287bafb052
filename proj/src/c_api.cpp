#include <cstring>
#include <exception>
#include <string>

#include "netres/error.hpp"
#include "netres/graph_metrics.hpp"
#include "netres/io.hpp"
#include "netres/netres.h"

struct nres_topology {
  netres::Topology topo;
};

struct nres_config {
  netres::RunConfig cfg;
};

struct nres_record {
  netres::RunRecord rec;
};

namespace {

thread_local std::string g_last_error;

nres_status status_of(netres::ErrorKind kind) {
  switch (kind) {
    case netres::ErrorKind::domain: return NRES_ERR_DOMAIN;
    case netres::ErrorKind::config: return NRES_ERR_CONFIG;
    case netres::ErrorKind::lookup: return NRES_ERR_LOOKUP;
    case netres::ErrorKind::range: return NRES_ERR_RANGE;
    case netres::ErrorKind::numeric: return NRES_ERR_NUMERIC;
    case netres::ErrorKind::input: return NRES_ERR_INPUT;
    case netres::ErrorKind::io: return NRES_ERR_IO;
  }
  return NRES_ERR_INTERNAL;
}

nres_status invalid(const char* what) {
  g_last_error = what;
  return NRES_ERR_INVALID_ARGUMENT;
}

// Runs `fn`, translating exceptions into status codes.
template <typename Fn>
nres_status guarded(Fn&& fn) {
  try {
    g_last_error.clear();
    fn();
    return NRES_OK;
  } catch (const netres::Error& e) {
    g_last_error = e.what();
    return status_of(e.kind());
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return NRES_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown failure";
    return NRES_ERR_INTERNAL;
  }
}

// Throws a range error rather than truncating.
void copy_out(const std::string& s, char* buf, std::size_t len) {
  if (!buf) return;
  if (s.size() + 1 > len)
    netres::fail(netres::ErrorKind::range, "buffer of " + std::to_string(len) + " bytes cannot hold '" + s + "'");
  std::memcpy(buf, s.data(), s.size());
  buf[s.size()] = '\0';
}

}  // namespace

extern "C" {

const char* nres_version(void) { return "1.0.0"; }

const char* nres_status_string(nres_status status) {
  switch (status) {
    case NRES_OK: return "ok";
    case NRES_ERR_INVALID_ARGUMENT: return "invalid argument";
    case NRES_ERR_CONFIG: return "configuration error";
    case NRES_ERR_DOMAIN: return "domain error";
    case NRES_ERR_LOOKUP: return "lookup error";
    case NRES_ERR_RANGE: return "range error";
    case NRES_ERR_NUMERIC: return "numeric error";
    case NRES_ERR_INPUT: return "input error";
    case NRES_ERR_IO: return "i/o error";
    case NRES_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* nres_last_error(void) { return g_last_error.c_str(); }

nres_status nres_topology_generate_er(size_t n, double p, uint64_t seed, nres_topology** out) {
  if (!out) return invalid("out is null");
  return guarded([&] { *out = new nres_topology{netres::generate_er(n, p, seed)}; });
}

nres_status nres_topology_generate_ba(size_t n, size_t m, uint64_t seed, int classic, nres_topology** out) {
  if (!out) return invalid("out is null");
  return guarded([&] { *out = new nres_topology{netres::generate_ba(n, m, seed, classic != 0)}; });
}

nres_status nres_topology_load_graphml(const char* path, nres_topology** out, size_t* dropped_loops,
                                       size_t* collapsed_edges) {
  if (!path || !out) return invalid("path or out is null");
  return guarded([&] {
    auto load = netres::load_graphml(path);
    if (dropped_loops) *dropped_loops = load.self_loops_dropped;
    if (collapsed_edges) *collapsed_edges = load.parallel_edges_collapsed;
    *out = new nres_topology{std::move(load.topology)};
  });
}

void nres_topology_free(nres_topology* topo) { delete topo; }

size_t nres_topology_node_count(const nres_topology* topo) { return topo ? topo->topo.node_count() : 0; }
size_t nres_topology_edge_count(const nres_topology* topo) { return topo ? topo->topo.edge_count() : 0; }

nres_status nres_topology_flow_robustness(const nres_topology* topo, double* out) {
  if (!topo || !out) return invalid("topology or out is null");
  return guarded([&] { *out = netres::flow_robustness(topo->topo); });
}

nres_status nres_topology_effective_resistance(const nres_topology* topo, double* out) {
  if (!topo || !out) return invalid("topology or out is null");
  return guarded([&] { *out = netres::effective_graph_resistance(topo->topo); });
}

nres_status nres_topology_structure_entropy(const nres_topology* topo, double* out) {
  if (!topo || !out) return invalid("topology or out is null");
  return guarded([&] { *out = netres::structure_entropy(topo->topo); });
}

nres_status nres_config_create_default(nres_config** out) {
  if (!out) return invalid("out is null");
  return guarded([&] { *out = new nres_config{}; });
}

nres_status nres_config_load(const char* path, nres_config** out) {
  if (!path || !out) return invalid("path or out is null");
  return guarded([&] { *out = new nres_config{netres::load_run_config(path)}; });
}

nres_status nres_config_clone(const nres_config* cfg, nres_config** out) {
  if (!cfg || !out) return invalid("config or out is null");
  return guarded([&] { *out = new nres_config{cfg->cfg}; });
}

void nres_config_free(nres_config* cfg) { delete cfg; }

nres_status nres_config_set(nres_config* cfg, const char* dotted_key, const char* value) {
  if (!cfg || !dotted_key || !value) return invalid("config, key or value is null");
  return guarded([&] { cfg->cfg.set(dotted_key, value); });
}

nres_status nres_config_set_seed(nres_config* cfg, uint64_t seed) {
  if (!cfg) return invalid("config is null");
  return guarded([&] { cfg->cfg.set_seed(seed); });
}

nres_status nres_config_output(const nres_config* cfg, char* dir_buf, size_t dir_len, int* json) {
  if (!cfg) return invalid("config is null");
  return guarded([&] {
    copy_out(cfg->cfg.output.directory.string(), dir_buf, dir_len);
    if (json) *json = cfg->cfg.output.json ? 1 : 0;
  });
}

nres_status nres_config_sweep_cell_count(const nres_config* cfg, size_t* out) {
  if (!cfg || !out) return invalid("config or out is null");
  return guarded([&] { *out = netres::intensity_grid(cfg->cfg.scenario, 1).size(); });
}

nres_status nres_config_sweep_cell(const nres_config* cfg, size_t index, nres_config** out, char* name_buf,
                                   size_t name_len) {
  if (!cfg || !out) return invalid("config or out is null");
  return guarded([&] {
    const std::size_t n = netres::build_topology(cfg->cfg).node_count();
    const auto cells = netres::intensity_grid(cfg->cfg.scenario, n);
    if (index >= cells.size()) netres::fail(netres::ErrorKind::range, "sweep cell index out of range");
    auto copy = std::make_unique<nres_config>(*cfg);
    copy->cfg.scenario = cells[index].config;
    copy->cfg.attacked_fraction.reset();
    // Keep the topology fixed across cells.
    copy->cfg.topology.seed = cfg->cfg.topology.seed.value_or(netres::derive_seed(cfg->cfg.scenario.seed, 101));
    copy_out(cells[index].name, name_buf, name_len);
    *out = copy.release();
  });
}

nres_status nres_run(const nres_config* cfg, nres_record** out) {
  if (!cfg || !out) return invalid("config or out is null");
  return guarded([&] { *out = new nres_record{netres::execute_run(cfg->cfg)}; });
}

void nres_record_free(nres_record* rec) { delete rec; }

nres_status nres_record_summary(const nres_record* rec, nres_summary* out) {
  if (!rec || !out) return invalid("record or out is null");
  return guarded([&] {
    const auto& r = rec->rec;
    const auto& perf = r.series.performance;
    nres_summary s{};
    s.steps = r.size();
    s.attack_time = r.attack_time;
    s.compromised = r.compromised.size();
    s.restoration_complete = r.restoration_complete ? 1 : 0;
    s.restoration_step = r.restoration_complete.value_or(0);
    s.p_nor = r.series.p_nor;
    s.cumulative_raw = r.cumulative.raw;
    s.cumulative_clamped = r.cumulative.clamped;
    s.min_performance = perf.empty() ? 0.0 : *std::min_element(perf.begin(), perf.end());
    s.final_performance = perf.empty() ? 0.0 : perf.back();
    *out = s;
  });
}

size_t nres_record_length(const nres_record* rec) { return rec ? rec->rec.size() : 0; }

nres_status nres_record_performance(const nres_record* rec, size_t t, double* out) {
  if (!rec || !out) return invalid("record or out is null");
  if (t >= rec->rec.size()) {
    g_last_error = "step out of range";
    return NRES_ERR_RANGE;
  }
  *out = rec->rec.series.performance[t];
  return NRES_OK;
}

nres_status nres_record_baseline(const nres_record* rec, int which, size_t t, double* out) {
  if (!rec || !out) return invalid("record or out is null");
  if (which != 1 && which != 2) return invalid("baseline selector must be 1 or 2");
  if (t >= rec->rec.size()) {
    g_last_error = "step out of range";
    return NRES_ERR_RANGE;
  }
  *out = which == 1 ? rec->rec.baseline1[t] : rec->rec.baseline2[t];
  return NRES_OK;
}

nres_status nres_record_write_csv(const nres_record* rec, const char* path) {
  if (!rec || !path) return invalid("record or path is null");
  return guarded([&] { netres::emit_run_csv(rec->rec, path); });
}

nres_status nres_record_write_compare_csv(const nres_record* rec, const char* path) {
  if (!rec || !path) return invalid("record or path is null");
  return guarded([&] { netres::emit_compare_csv(rec->rec, path); });
}

nres_status nres_record_write_json(const nres_record* rec, const char* path) {
  if (!rec || !path) return invalid("record or path is null");
  return guarded([&] { netres::emit_run_json(rec->rec, path); });
}

}  // extern "C"
