/*
 * C interface to the netres network resilience library.
 *
 * Every object is an opaque handle created by a *_create / *_load / *_run
 * function and released with the matching *_free. Functions return an
 * nres_status; on failure nres_last_error() holds a message for the calling
 * thread. Handles are not synchronized: share one across threads only for
 * read-only calls.
 */
#ifndef NETRES_NETRES_H
#define NETRES_NETRES_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#if defined(NETRES_BUILDING_LIBRARY)
#define NRES_API __declspec(dllexport)
#else
#define NRES_API __declspec(dllimport)
#endif
#else
#define NRES_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum nres_status {
  NRES_OK = 0,
  NRES_ERR_INVALID_ARGUMENT = 1, /* null handle/pointer or bad enum value */
  NRES_ERR_CONFIG = 2,
  NRES_ERR_DOMAIN = 3,
  NRES_ERR_LOOKUP = 4,
  NRES_ERR_RANGE = 5,
  NRES_ERR_NUMERIC = 6,
  NRES_ERR_INPUT = 7,
  NRES_ERR_IO = 8,
  NRES_ERR_INTERNAL = 9
} nres_status;

typedef struct nres_topology nres_topology;
typedef struct nres_config nres_config;
typedef struct nres_record nres_record;

typedef struct nres_summary {
  size_t steps; /* number of recorded steps (max_steps + 1) */
  size_t attack_time;
  size_t compromised;
  int restoration_complete; /* 1 when every destroyed node came back */
  size_t restoration_step;  /* valid when restoration_complete */
  double p_nor;
  double cumulative_raw;
  double cumulative_clamped;
  double min_performance;
  double final_performance;
} nres_summary;

NRES_API const char* nres_version(void);
NRES_API const char* nres_status_string(nres_status status);
/* Message of the last failing call on this thread; "" if none. */
NRES_API const char* nres_last_error(void);

/* ---- topologies ---------------------------------------------------------- */

NRES_API nres_status nres_topology_generate_er(size_t n, double p, uint64_t seed, nres_topology** out);
/* classic != 0 selects degree-proportional preferential attachment. */
NRES_API nres_status nres_topology_generate_ba(size_t n, size_t m, uint64_t seed, int classic,
                                               nres_topology** out);
/* dropped_loops / collapsed_edges may be NULL. */
NRES_API nres_status nres_topology_load_graphml(const char* path, nres_topology** out, size_t* dropped_loops,
                                                size_t* collapsed_edges);
NRES_API void nres_topology_free(nres_topology* topo);

NRES_API size_t nres_topology_node_count(const nres_topology* topo);
NRES_API size_t nres_topology_edge_count(const nres_topology* topo);
NRES_API nres_status nres_topology_flow_robustness(const nres_topology* topo, double* out);
NRES_API nres_status nres_topology_effective_resistance(const nres_topology* topo, double* out);
NRES_API nres_status nres_topology_structure_entropy(const nres_topology* topo, double* out);

/* ---- run configuration --------------------------------------------------- */

NRES_API nres_status nres_config_create_default(nres_config** out);
NRES_API nres_status nres_config_load(const char* path, nres_config** out);
NRES_API nres_status nres_config_clone(const nres_config* cfg, nres_config** out);
NRES_API void nres_config_free(nres_config* cfg);
/* Overrides one "section.key" using the config-file value syntax. */
NRES_API nres_status nres_config_set(nres_config* cfg, const char* dotted_key, const char* value);
/* Replaces the master seed and every stream derived from it. */
NRES_API nres_status nres_config_set_seed(nres_config* cfg, uint64_t seed);
/* Output directory and JSON flag from the [output] section. String outputs
 * fail with NRES_ERR_RANGE when the buffer is too small. */
NRES_API nres_status nres_config_output(const nres_config* cfg, char* dir_buf, size_t dir_len, int* json);

/* Number of intensity-grid cells (attack x pattern, then recovery x pattern). */
NRES_API nres_status nres_config_sweep_cell_count(const nres_config* cfg, size_t* out);
/* Copies the base config with cell `index` applied; the cell name (e.g.
 * "attack_high_random") is written to name_buf. */
NRES_API nres_status nres_config_sweep_cell(const nres_config* cfg, size_t index, nres_config** out, char* name_buf,
                                            size_t name_len);

/* ---- runs ---------------------------------------------------------------- */

/* Builds the topology and attributed network described by cfg and executes
 * the attack/recovery scenario. */
NRES_API nres_status nres_run(const nres_config* cfg, nres_record** out);
NRES_API void nres_record_free(nres_record* rec);

NRES_API nres_status nres_record_summary(const nres_record* rec, nres_summary* out);
NRES_API size_t nres_record_length(const nres_record* rec);
/* Aggregate performance P(t). */
NRES_API nres_status nres_record_performance(const nres_record* rec, size_t t, double* out);
/* Baseline series: which = 1 (relative size) or 2 (flow robustness). */
NRES_API nres_status nres_record_baseline(const nres_record* rec, int which, size_t t, double* out);

NRES_API nres_status nres_record_write_csv(const nres_record* rec, const char* path);
NRES_API nres_status nres_record_write_compare_csv(const nres_record* rec, const char* path);
NRES_API nres_status nres_record_write_json(const nres_record* rec, const char* path);

#ifdef __cplusplus
}
#endif

#endif /* NETRES_NETRES_H */
