#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "netres/dbn.hpp"
#include "netres/network.hpp"
#include "netres/scenario.hpp"
#include "netres/topology.hpp"

namespace netres {

// Each unordered pair is an edge independently with probability p.
// Throws Error(config) unless n >= 2 and p in [0,1].
Topology generate_er(std::size_t n, double p, std::uint64_t seed);

// Seed clique of m+1 nodes; every later node attaches to the m nodes of
// largest current degree (ties broken by a seeded shuffle). With `classic`
// set, targets are drawn by degree-proportional preferential attachment
// instead. Throws Error(config) unless n > m >= 1.
Topology generate_ba(std::size_t n, std::size_t m, std::uint64_t seed, bool classic = false);

struct GraphmlLoad {
  Topology topology;
  std::size_t self_loops_dropped = 0;
  std::size_t parallel_edges_collapsed = 0;
  std::vector<std::string> warnings;
};

// Reads node/edge elements of a GraphML document as an undirected simple
// graph. Node ids that are integers are kept; any other id scheme is mapped
// to 0..n-1 in document order. Throws Error(input) on missing files or
// malformed XML (with the line number when the parser reports one).
GraphmlLoad load_graphml(const std::filesystem::path& path);

enum class TopologyKind { er, ba, file };

struct TopologySpec {
  TopologyKind kind = TopologyKind::er;
  std::size_t er_n = 100;
  double er_p = 0.3;
  std::size_t ba_n = 100;
  std::size_t ba_m = 5;
  bool ba_classic = false;
  std::filesystem::path path;
  std::optional<std::uint64_t> seed;  // defaults to a stream of the scenario seed

  void validate() const;
};

struct OutputSpec {
  std::filesystem::path directory = ".";
  bool json = false;
};

// Parsed run configuration. Sections: [topology], [scenario], [dbn],
// [attributes], [output], [stages].
struct RunConfig {
  TopologySpec topology;
  ScenarioConfig scenario;
  std::optional<double> attacked_fraction;  // resolved into scenario.attacked_count against |N|
  TransitionModel dbn;
  AttributeRanges attributes;
  double p_up_fraction = 0.9;
  double p_down_fraction = 0.6;
  OutputSpec output;

  // Replaces every seed-derived stream.
  void set_seed(std::uint64_t seed);
  // Applies a single "section.key" = value override using the file syntax.
  void set(const std::string& dotted_key, const std::string& value);
};

// INI-style file: "[section]" headers and "key = value" lines, '#' or ';'
// comments. Unknown keys are rejected. Throws Error(input) for unreadable or
// malformed files and Error(config) for invalid values.
RunConfig load_run_config(const std::filesystem::path& path);
RunConfig parse_run_config(std::istream& in);

Topology build_topology(const RunConfig& cfg);

struct PreparedRun {
  ResilientNetwork network;
  ScenarioConfig scenario;
};

// Builds the topology and attributed network, resolves attacked_fraction.
PreparedRun prepare_run(const RunConfig& cfg);
RunRecord execute_run(const RunConfig& cfg);

// Column order of the per-step CSV.
const std::vector<std::string>& run_csv_columns();

// One header row then one row per step. Numbers use the shortest
// round-trip representation so output is byte-stable.
void write_run_csv(const RunRecord& record, std::ostream& out);
void emit_run_csv(const RunRecord& record, const std::filesystem::path& path);

// Proposed P(t)/p_nor next to both baselines, raw and normalized to t = 0.
void write_compare_csv(const RunRecord& record, std::ostream& out);
void emit_compare_csv(const RunRecord& record, const std::filesystem::path& path);

// JSON mirror of a run: summary plus per-step series.
std::string run_json(const RunRecord& record);
void emit_run_json(const RunRecord& record, const std::filesystem::path& path);

std::string format_number(double x);

}  // namespace netres
