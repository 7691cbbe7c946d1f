#include "dcsim/experiment/metrics.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace dcsim::experiment {
namespace {

struct Column {
  const char* name;
  bool integral;
  double (*get)(const MetricsRecord&);
};

#define DCSIM_REAL(field) Column{#field, false, [](const MetricsRecord& r) { return r.field; }}
#define DCSIM_COUNT(field) \
  Column{#field, true, [](const MetricsRecord& r) { return static_cast<double>(r.field); }}

const std::vector<Column>& columns() {
  static const std::vector<Column> cols = {
      DCSIM_REAL(throughput_mbps),    DCSIM_REAL(mean_cwnd),
      DCSIM_REAL(mean_rtt_ms),        DCSIM_COUNT(data_broadcasts),
      DCSIM_REAL(mean_hop_count),     DCSIM_COUNT(cache_hits),
      DCSIM_COUNT(collisions),        DCSIM_COUNT(queue_drops),
      DCSIM_COUNT(pit_aggregations),  DCSIM_COUNT(duplicates),
      DCSIM_COUNT(unique_data),       DCSIM_COUNT(interests_sent),
      DCSIM_COUNT(retransmissions),   DCSIM_COUNT(timeouts),
      DCSIM_COUNT(window_decreases),  DCSIM_COUNT(congestion_marks),
      DCSIM_COUNT(interest_broadcasts), DCSIM_COUNT(pit_expired),
      DCSIM_COUNT(invariant_violations),
  };
  return cols;
}

#undef DCSIM_REAL
#undef DCSIM_COUNT

}  // namespace

std::string format_fixed(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", value);
  return buf;
}

const std::vector<std::string>& metric_columns() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& c : columns()) out.emplace_back(c.name);
    return out;
  }();
  return names;
}

std::vector<double> metric_values(const MetricsRecord& record) {
  std::vector<double> out;
  for (const auto& c : columns()) out.push_back(c.get(record));
  return out;
}

MetricSummary summarize_values(std::string name, const std::vector<double>& values) {
  if (values.empty()) throw std::invalid_argument("cannot summarize an empty sample");
  MetricSummary s{std::move(name), 0.0, 0.0};
  for (double v : values) s.mean += v;
  s.mean /= static_cast<double>(values.size());
  if (values.size() > 1) {
    double ss = 0.0;
    for (double v : values) ss += (v - s.mean) * (v - s.mean);
    s.stddev = std::sqrt(ss / static_cast<double>(values.size() - 1));
  }
  return s;
}

std::vector<MetricSummary> summarize(const std::vector<MetricsRecord>& records) {
  if (records.empty()) throw std::invalid_argument("cannot summarize zero runs");
  std::vector<MetricSummary> out;
  const auto& cols = columns();
  for (const auto& c : cols) {
    std::vector<double> values;
    values.reserve(records.size());
    for (const auto& r : records) values.push_back(c.get(r));
    out.push_back(summarize_values(c.name, values));
  }
  return out;
}

std::string emit_csv(const ScenarioConfig& config, const std::vector<MetricsRecord>& records) {
  std::string out = "run,scenario,topology,traffic,speed,cs,cwl,dil,seed";
  for (const auto& c : columns()) {
    out += ',';
    out += c.name;
  }
  out += '\n';
  std::size_t run = 0;
  for (const auto& r : records) {
    out += std::to_string(run++);
    out += ',' + config.scenario;
    out += ',' + std::string(to_string(config.topology));
    out += ',' + std::string(to_string(config.traffic));
    out += ',' + format_fixed(config.speed);
    out += ',' + std::to_string(config.cs);
    out += config.cwl ? ",true" : ",false";
    out += config.dil ? ",true" : ",false";
    out += ',' + std::to_string(r.seed);
    for (const auto& c : columns()) {
      const double v = c.get(r);
      out += ',';
      out += c.integral ? std::to_string(static_cast<std::uint64_t>(v)) : format_fixed(v);
    }
    out += '\n';
  }
  return out;
}

void write_csv(const std::string& path, const ScenarioConfig& config,
               const std::vector<MetricsRecord>& records) {
  const std::string text = emit_csv(config, records);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << text;
  out.flush();
  if (!out) throw std::runtime_error("failed writing '" + path + "'");
}

}  // namespace dcsim::experiment
