#include <algorithm>
#include <array>
#include <charconv>
#include <fstream>
#include <ostream>
#include <sstream>

#include "json.hpp"
#include "netres/error.hpp"
#include "netres/io.hpp"

namespace netres {
namespace {

std::ofstream open_output(const std::filesystem::path& path) {
  if (path.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) fail(ErrorKind::io, "cannot write " + path.string());
  return out;
}

void finish(std::ofstream& out, const std::filesystem::path& path) {
  out.flush();
  if (!out) fail(ErrorKind::io, "write failed for " + path.string());
}

double ratio(double x, double base) { return base > 0.0 ? x / base : 0.0; }

}  // namespace

std::string format_number(double x) {
  std::array<char, 64> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), x);
  if (ec != std::errc()) return "nan";
  return std::string(buf.data(), ptr);
}

const std::vector<std::string>& run_csv_columns() {
  static const std::vector<std::string> cols{"step",  "P_p",   "P_s",   "P_a",   "P_r",       "P_e",       "P",
                                             "RRC_n", "SRC_n", "CRC_n", "RCC_n", "DEC_n", "baseline1", "baseline2",
                                             "stage"};
  return cols;
}

void write_run_csv(const RunRecord& record, std::ostream& out) {
  const auto& cols = run_csv_columns();
  for (std::size_t i = 0; i < cols.size(); ++i) out << (i ? "," : "") << cols[i];
  out << '\n';
  for (std::size_t t = 0; t < record.size(); ++t) {
    const PerformanceState& s = record.series.states[t];
    const CapabilityValues& c = record.series.capabilities[t].normalized;
    out << t;
    for (std::size_t k = 0; k < PerformanceState::size(); ++k) out << ',' << format_number(s[k]);
    out << ',' << format_number(record.series.performance[t]);
    for (std::size_t k = 0; k < CapabilityValues::size(); ++k) out << ',' << format_number(c[k]);
    out << ',' << format_number(record.baseline1[t]) << ',' << format_number(record.baseline2[t]) << ','
        << to_string(record.stage_labels[t]) << '\n';
  }
}

void emit_run_csv(const RunRecord& record, const std::filesystem::path& path) {
  auto out = open_output(path);
  write_run_csv(record, out);
  finish(out, path);
}

void write_compare_csv(const RunRecord& record, std::ostream& out) {
  out << "step,proposed,proposed_raw,compare1,compare1_normalized,compare2,compare2_normalized,stage\n";
  const double b1 = record.baseline1.empty() ? 0.0 : record.baseline1.front();
  const double b2 = record.baseline2.empty() ? 0.0 : record.baseline2.front();
  for (std::size_t t = 0; t < record.size(); ++t) {
    const double p = record.series.performance[t];
    out << t << ',' << format_number(ratio(p, record.series.p_nor)) << ',' << format_number(p) << ','
        << format_number(record.baseline1[t]) << ',' << format_number(ratio(record.baseline1[t], b1)) << ','
        << format_number(record.baseline2[t]) << ',' << format_number(ratio(record.baseline2[t], b2)) << ','
        << to_string(record.stage_labels[t]) << '\n';
  }
}

void emit_compare_csv(const RunRecord& record, const std::filesystem::path& path) {
  auto out = open_output(path);
  write_compare_csv(record, out);
  finish(out, path);
}

std::string run_json(const RunRecord& record) {
  using nlohmann::json;
  const auto& perf = record.series.performance;
  const double min_p = perf.empty() ? 0.0 : *std::min_element(perf.begin(), perf.end());
  json summary{
      {"steps", record.size()},
      {"p_nor", record.series.p_nor},
      {"attack_time", record.attack_time},
      {"compromised", record.compromised},
      {"restoration_complete", record.restoration_complete ? json(*record.restoration_complete) : json(nullptr)},
      {"cumulative_resilience", {{"raw", record.cumulative.raw}, {"clamped", record.cumulative.clamped}}},
      {"min_performance", min_p},
      {"final_performance", perf.empty() ? 0.0 : perf.back()},
      {"breached_p_down", min_p < record.thresholds.p_down},
      {"thresholds",
       {{"p_nor", record.thresholds.p_nor}, {"p_up", record.thresholds.p_up}, {"p_down", record.thresholds.p_down}}},
  };

  json steps = json::array();
  for (std::size_t t = 0; t < record.size(); ++t) {
    const auto& s = record.series.states[t];
    const auto& c = record.series.capabilities[t];
    steps.push_back({
        {"step", t},
        {"performance", {s.prepare, s.resist, s.adapt, s.recover, s.evolve}},
        {"P", perf[t]},
        {"capabilities_raw", {c.raw.rrc, c.raw.src, c.raw.crc, c.raw.rcc, c.raw.dec}},
        {"capabilities_normalized",
         {c.normalized.rrc, c.normalized.src, c.normalized.crc, c.normalized.rcc, c.normalized.dec}},
        {"risk_free", c.risk_free},
        {"baseline1", record.baseline1[t]},
        {"baseline2", record.baseline2[t]},
        {"destroyed", record.destroyed_count[t]},
        {"restored", record.restored_count[t]},
        {"stage", std::string(to_string(record.stage_labels[t]))},
    });
  }
  return json{{"summary", summary}, {"steps", steps}}.dump(2);
}

void emit_run_json(const RunRecord& record, const std::filesystem::path& path) {
  auto out = open_output(path);
  out << run_json(record) << '\n';
  finish(out, path);
}

}  // namespace netres
