#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dcsim/experiment/config.hpp"

namespace dcsim::experiment {

// Scalars of one simulation run.
struct MetricsRecord {
  std::uint64_t seed = 0;
  double throughput_mbps = 0.0;
  double mean_cwnd = 0.0;
  double mean_rtt_ms = 0.0;
  std::uint64_t data_broadcasts = 0;
  double mean_hop_count = 0.0;
  std::uint64_t cache_hits = 0;
  std::uint64_t collisions = 0;
  std::uint64_t queue_drops = 0;
  std::uint64_t pit_aggregations = 0;
  std::uint64_t duplicates = 0;
  std::uint64_t unique_data = 0;
  std::uint64_t interests_sent = 0;
  std::uint64_t retransmissions = 0;
  std::uint64_t timeouts = 0;
  std::uint64_t window_decreases = 0;
  std::uint64_t congestion_marks = 0;
  std::uint64_t interest_broadcasts = 0;
  std::uint64_t pit_expired = 0;
  std::uint64_t invariant_violations = 0;

  bool operator==(const MetricsRecord&) const = default;
};

// Metric column names in CSV order (config echo columns excluded).
const std::vector<std::string>& metric_columns();
// Values in metric_columns() order.
std::vector<double> metric_values(const MetricsRecord& record);

struct MetricSummary {
  std::string name;
  double mean = 0.0;
  // Sample standard deviation; 0 for a single record.
  double stddev = 0.0;
};

// Throws std::invalid_argument on an empty list.
std::vector<MetricSummary> summarize(const std::vector<MetricsRecord>& records);
MetricSummary summarize_values(std::string name, const std::vector<double>& values);

// One header line, one row per record. Counters print as integers and
// real-valued metrics with six digits after the decimal point.
std::string emit_csv(const ScenarioConfig& config, const std::vector<MetricsRecord>& records);
// Throws std::runtime_error naming `path` on I/O failure.
void write_csv(const std::string& path, const ScenarioConfig& config,
               const std::vector<MetricsRecord>& records);

std::string format_fixed(double value);

}  // namespace dcsim::experiment
