// Command-line front end. Talks to the library only through netres.h.
#include <atomic>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "netres/netres.h"

namespace fs = std::filesystem;

namespace {

constexpr int kExitRuntime = 1;
constexpr int kExitUsage = 2;

struct Options {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::string out;
  bool json = false;
  bool ba_classic = false;
  unsigned parallel = 1;
};

struct ConfigDeleter {
  void operator()(nres_config* c) const { nres_config_free(c); }
};
struct RecordDeleter {
  void operator()(nres_record* r) const { nres_record_free(r); }
};
using ConfigPtr = std::unique_ptr<nres_config, ConfigDeleter>;
using RecordPtr = std::unique_ptr<nres_record, RecordDeleter>;

// Failure inside the library; `usage` marks config problems (exit 2).
struct Failure {
  std::string message;
  bool usage;
};

void check(nres_status st, const std::string& context) {
  if (st == NRES_OK) return;
  const bool usage = st == NRES_ERR_CONFIG || st == NRES_ERR_INVALID_ARGUMENT;
  throw Failure{context + ": " + nres_status_string(st) + ": " + nres_last_error(), usage};
}

ConfigPtr load_config(const Options& opt) {
  nres_config* raw = nullptr;
  const nres_status st = nres_config_load(opt.config.c_str(), &raw);
  if (st == NRES_ERR_INPUT) throw Failure{std::string("config: ") + nres_last_error(), true};
  check(st, "config");
  ConfigPtr cfg(raw);
  if (opt.seed) check(nres_config_set_seed(cfg.get(), *opt.seed), "--seed");
  if (opt.ba_classic) check(nres_config_set(cfg.get(), "topology.ba_classic", "true"), "--ba-classic");
  return cfg;
}

struct Destination {
  fs::path dir;
  bool json;
};

Destination destination(const Options& opt, const nres_config* cfg) {
  char buf[4096];
  int json = 0;
  check(nres_config_output(cfg, buf, sizeof buf, &json), "config");
  return {opt.out.empty() ? fs::path(buf) : fs::path(opt.out), opt.json || json != 0};
}

RecordPtr run(const nres_config* cfg) {
  nres_record* raw = nullptr;
  check(nres_run(cfg, &raw), "run");
  return RecordPtr(raw);
}

void report(const nres_record* rec, const fs::path& csv) {
  nres_summary s{};
  check(nres_record_summary(rec, &s), "summary");
  std::printf("%s: steps=%zu compromised=%zu min_P=%.6g final_P=%.6g R(T)=%.6g\n", csv.string().c_str(), s.steps,
              s.compromised, s.min_performance, s.final_performance, s.cumulative_raw);
}

int cmd_evaluate(const Options& opt) {
  ConfigPtr cfg = load_config(opt);
  const Destination dst = destination(opt, cfg.get());
  RecordPtr rec = run(cfg.get());
  const fs::path csv = dst.dir / "run.csv";
  check(nres_record_write_csv(rec.get(), csv.string().c_str()), "write");
  if (dst.json) check(nres_record_write_json(rec.get(), (dst.dir / "run.json").string().c_str()), "write");
  report(rec.get(), csv);
  return 0;
}

int cmd_compare(const Options& opt) {
  ConfigPtr cfg = load_config(opt);
  const Destination dst = destination(opt, cfg.get());
  RecordPtr rec = run(cfg.get());
  const fs::path csv = dst.dir / "compare.csv";
  check(nres_record_write_compare_csv(rec.get(), csv.string().c_str()), "write");
  if (dst.json) check(nres_record_write_json(rec.get(), (dst.dir / "compare.json").string().c_str()), "write");
  report(rec.get(), csv);
  return 0;
}

int cmd_sweep(const Options& opt) {
  ConfigPtr base = load_config(opt);
  const Destination dst = destination(opt, base.get());
  std::size_t count = 0;
  check(nres_config_sweep_cell_count(base.get(), &count), "sweep");

  struct Cell {
    ConfigPtr cfg;
    std::string name;
  };
  std::vector<Cell> cells;
  for (std::size_t i = 0; i < count; ++i) {
    nres_config* raw = nullptr;
    char name[128];
    check(nres_config_sweep_cell(base.get(), i, &raw, name, sizeof name), "sweep");
    cells.push_back({ConfigPtr(raw), name});
  }

  std::atomic<std::size_t> next{0};
  std::mutex mu;
  std::optional<Failure> first_failure;
  auto worker = [&] {
    for (std::size_t i = next++; i < cells.size(); i = next++) {
      try {
        RecordPtr rec = run(cells[i].cfg.get());
        const fs::path csv = dst.dir / (cells[i].name + ".csv");
        check(nres_record_write_csv(rec.get(), csv.string().c_str()), "write");
        if (dst.json)
          check(nres_record_write_json(rec.get(), (dst.dir / (cells[i].name + ".json")).string().c_str()), "write");
        std::lock_guard lock(mu);
        report(rec.get(), csv);
      } catch (const Failure& f) {
        std::lock_guard lock(mu);
        if (!first_failure) first_failure = Failure{cells[i].name + ": " + f.message, f.usage};
      }
    }
  };
  const unsigned k = std::max(1u, std::min<unsigned>(opt.parallel, static_cast<unsigned>(cells.size())));
  std::vector<std::thread> pool;
  for (unsigned i = 1; i < k; ++i) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  if (first_failure) throw *first_failure;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Time-varying network resilience evaluation", "netres"};
  app.require_subcommand(1, 1);
  Options opt;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", opt.config, "Run configuration file")->required()->check(CLI::ExistingFile);
    sub->add_option("--seed", opt.seed, "Master seed (overrides the config)");
    sub->add_option("--out", opt.out, "Output directory (overrides the config)");
    sub->add_flag("--json", opt.json, "Also write a JSON mirror");
    sub->add_flag("--ba-classic", opt.ba_classic, "Use classic preferential attachment for BA topologies");
  };
  CLI::App* evaluate = app.add_subcommand("evaluate", "Run one scenario and write run.csv");
  CLI::App* compare = app.add_subcommand("compare", "Run a scenario next to both baselines and write compare.csv");
  CLI::App* sweep = app.add_subcommand("sweep", "Run the attack/recovery intensity grid, one CSV per cell");
  add_common(evaluate);
  add_common(compare);
  add_common(sweep);
  sweep->add_option("--parallel", opt.parallel, "Number of concurrent runs")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  }

  try {
    if (evaluate->parsed()) return cmd_evaluate(opt);
    if (compare->parsed()) return cmd_compare(opt);
    return cmd_sweep(opt);
  } catch (const Failure& f) {
    std::cerr << "error: " << f.message << '\n';
    if (f.usage) {
      std::cerr << '\n' << app.help();
      return kExitUsage;
    }
    return kExitRuntime;
  }
}
