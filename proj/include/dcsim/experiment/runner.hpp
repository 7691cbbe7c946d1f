#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dcsim/experiment/config.hpp"
#include "dcsim/experiment/metrics.hpp"

namespace dcsim::experiment {

struct RunOptions {
  // Collect a per-run trace (consumer events plus periodic window samples).
  bool trace = false;
  // Attach the invariant checker; violations land in the record.
  bool check_invariants = false;
  // Worker threads for run_experiment; 0 picks the hardware concurrency.
  unsigned threads = 1;
};

struct RunResult {
  MetricsRecord metrics;
  // CSV text; empty unless RunOptions::trace.
  std::string trace;
  // Descriptions of the first invariant violations.
  std::vector<std::string> violations;
};

inline constexpr const char* kTraceHeader = "time,consumer,node,event,seq,cwnd,ssthresh,srtt,rto\n";

// One simulation of `config` under `seed` (config.seed is ignored).
RunResult run_single(const ScenarioConfig& config, std::uint64_t seed, const RunOptions& options = {});

// config.runs simulations with seeds config.seed, config.seed + 1, ...
// Results are ordered by seed whatever the thread count.
std::vector<RunResult> run_experiment_detailed(const ScenarioConfig& config,
                                               const RunOptions& options = {});
std::vector<MetricsRecord> run_experiment(const ScenarioConfig& config,
                                          const RunOptions& options = {});

}  // namespace dcsim::experiment
