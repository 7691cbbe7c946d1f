// dcsim: run adaptive-rate NDN experiments over ad-hoc or wired topologies.
//
//   dcsim run --scenario manet --cs 200 --runs 10 --out results.csv
//   dcsim run --config exp.cfg --set speed=4 --trace traces/
//   dcsim scripted aggregation --dil
//   dcsim config --scenario wired-chain

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <optional>

#include "CLI11.hpp"
#include "dcsim/experiment/config.hpp"
#include "dcsim/experiment/metrics.hpp"
#include "dcsim/experiment/runner.hpp"
#include "dcsim/experiment/scripted.hpp"

namespace ex = dcsim::experiment;

namespace {

struct ConfigFlags {
  std::string scenario = "manet";
  std::string config_path;
  std::map<std::string, std::string> values;
  std::optional<bool> cwl;
  std::optional<bool> dil;
  std::vector<std::string> sets;
};

void add_config_flags(CLI::App& cmd, ConfigFlags& f) {
  cmd.add_option("--scenario", f.scenario, "Preset: manet, wireless-chain, wired-chain");
  cmd.add_option("--config", f.config_path, "key = value file applied over the preset");
  const std::vector<std::pair<std::string, std::string>> plain = {
      {"topology", "grid, linear-wireless or linear-wired"},
      {"nodes", "Node count"},
      {"speed", "Node speed in m/s (0-8)"},
      {"duration", "Simulated seconds per run"},
      {"traffic", "one-to-one, many-to-one or many-to-many"},
      {"cs", "Content store capacity in packets"},
      {"gamma", "Timeout multiplier under dynamic lifetime"},
      {"seed", "First seed"},
      {"runs", "Number of seeds"},
      {"placement-file", "Pin consumer and producer nodes"},
  };
  for (const auto& [name, help] : plain) {
    cmd.add_option_function<std::string>(
        "--" + name, [&f, key = name](const std::string& v) {
          std::string field = key;
          std::replace(field.begin(), field.end(), '-', '_');
          f.values[field] = v;
        },
        help);
  }
  cmd.add_flag("--cwl,!--no-cwl", f.cwl, "Hop-count window limit");
  cmd.add_flag("--dil,!--no-dil", f.dil, "Dynamic Interest lifetime");
  cmd.add_option("--set", f.sets, "Any config field as key=value (repeatable)");
}

ex::ScenarioConfig resolve(const ConfigFlags& f) {
  ex::ScenarioConfig c = ex::preset(f.scenario);
  if (!f.config_path.empty()) c = ex::load_config(f.config_path, c);
  for (const auto& [k, v] : f.values) ex::set_field(c, k, v);
  if (f.cwl) c.cwl = *f.cwl;
  if (f.dil) c.dil = *f.dil;
  for (const auto& kv : f.sets) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) throw ex::ConfigError("--set expects key=value, got '" + kv + "'");
    ex::set_field(c, kv.substr(0, eq), kv.substr(eq + 1));
  }
  c.validate();
  return c;
}

void print_summary(std::ostream& os, const ex::ScenarioConfig& c,
                   const std::vector<ex::MetricsRecord>& records) {
  os << c.scenario << " " << ex::to_string(c.topology) << " " << ex::to_string(c.traffic)
     << " nodes=" << c.nodes << " speed=" << c.speed << " cs=" << c.cs
     << " cwl=" << (c.cwl ? "on" : "off") << " dil=" << (c.dil ? "on" : "off")
     << " runs=" << records.size() << "\n";
  for (const auto& s : ex::summarize(records)) {
    os << "  " << std::left << std::setw(22) << s.name << ex::format_fixed(s.mean) << " +- "
       << ex::format_fixed(s.stddev) << "\n";
  }
}

int run_command(const ConfigFlags& flags, const std::string& out_path, const std::string& trace_dir,
                unsigned threads, bool check) {
  const ex::ScenarioConfig config = resolve(flags);
  ex::RunOptions opts;
  opts.trace = !trace_dir.empty();
  opts.check_invariants = check;
  opts.threads = threads;
  if (opts.trace) std::filesystem::create_directories(trace_dir);

  const auto results = ex::run_experiment_detailed(config, opts);
  std::vector<ex::MetricsRecord> records;
  for (const auto& r : results) records.push_back(r.metrics);

  if (out_path.empty() || out_path == "-") {
    std::cout << ex::emit_csv(config, records);
  } else {
    ex::write_csv(out_path, config, records);
  }
  if (opts.trace) {
    for (const auto& r : results) {
      const auto path = std::filesystem::path(trace_dir) /
                        ("trace_seed" + std::to_string(r.metrics.seed) + ".csv");
      std::ofstream os(path, std::ios::binary | std::ios::trunc);
      os << r.trace;
      if (!os) throw std::runtime_error("failed writing '" + path.string() + "'");
    }
  }
  print_summary(std::cerr, config, records);
  std::uint64_t violations = 0;
  for (const auto& r : results) {
    violations += r.metrics.invariant_violations;
    for (const auto& v : r.violations) std::cerr << "  violation (seed " << r.metrics.seed << "): " << v << "\n";
  }
  return violations == 0 ? 0 : 3;
}

int scripted_command(const std::string& name, bool dil, std::uint32_t cs, bool verbose) {
  if (name == "aggregation") {
    const auto r = ex::run_aggregation_scenario(dil);
    if (verbose) {
      for (const auto& line : r.log) std::cout << line << "\n";
    }
    std::cout << "lifetime=" << (dil ? "dynamic" : "fixed") << " retransmitted_at=" << r.retransmitted_at
              << " z_downstreams=" << r.z_downstreams << " z_pit_count=" << r.z_pit_count
              << " z_entry_reused=" << (r.z_entry_reused ? "yes" : "no")
              << " data_broadcasts=" << r.data_broadcasts << " delivered=" << r.delivered << "\n";
    return 0;
  }
  if (name == "cache") {
    const auto r = ex::run_cache_redundancy_scenario(cs);
    if (verbose) {
      for (const auto& line : r.log) std::cout << line << "\n";
    }
    std::cout << "cs=" << cs << " delivered=" << r.delivered << " duplicates=" << r.duplicates
              << " cache_hits=" << r.cache_hits << " data_broadcasts=" << r.data_broadcasts << "\n";
    return 0;
  }
  std::cerr << "unknown scripted scenario '" << name << "' (aggregation, cache)\n";
  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Adaptive-rate NDN simulator"};
  app.require_subcommand(1);

  ConfigFlags run_flags;
  std::string out_path;
  std::string trace_dir;
  unsigned threads = 1;
  bool check = false;
  auto* run = app.add_subcommand("run", "Run every seed of an experiment and write CSV");
  add_config_flags(*run, run_flags);
  run->add_option("--out", out_path, "CSV destination ('-' for stdout)");
  run->add_option("--trace", trace_dir, "Directory for per-seed trace CSVs");
  run->add_option("--threads", threads, "Parallel seeds (0 = all cores)");
  run->add_flag("--check-invariants", check, "Assert runtime invariants (exit 3 on violation)");

  ConfigFlags cfg_flags;
  auto* cfg = app.add_subcommand("config", "Print the resolved configuration");
  add_config_flags(*cfg, cfg_flags);

  std::string scripted_name;
  bool scripted_dil = false;
  std::uint32_t scripted_cs = 200;
  bool verbose = false;
  auto* scripted = app.add_subcommand("scripted", "Run a deterministic micro-scenario");
  scripted->add_option("name", scripted_name, "aggregation or cache")->required();
  scripted->add_flag("--dil", scripted_dil, "Dynamic Interest lifetime (aggregation)");
  scripted->add_option("--cs", scripted_cs, "Content store capacity (cache)");
  scripted->add_flag("-v,--verbose", verbose, "Print the event log");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) return run_command(run_flags, out_path, trace_dir, threads, check);
    if (*cfg) {
      std::cout << ex::emit_config(resolve(cfg_flags));
      return 0;
    }
    if (*scripted) return scripted_command(scripted_name, scripted_dil, scripted_cs, verbose);
  } catch (const ex::ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
