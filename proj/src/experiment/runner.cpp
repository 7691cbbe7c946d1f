#include "dcsim/experiment/runner.hpp"

#include <atomic>
#include <cmath>
#include <exception>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

#include "dcsim/experiment/invariants.hpp"
#include "dcsim/experiment/network.hpp"
#include "dcsim/experiment/traffic.hpp"

namespace dcsim::experiment {
namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read placement file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string number(double v) {
  if (std::isinf(v)) return "inf";
  return format_fixed(v);
}

class TraceWriter final : public transport::ConsumerObserver {
 public:
  explicit TraceWriter(const Simulator& sim) : sim_(sim) { out_ = kTraceHeader; }

  void consumer_event(const transport::ConsumerApp& app, transport::ConsumerEvent event,
                      std::uint64_t seq, const ndn::Data*) override {
    row(app, transport::to_string(event), std::to_string(seq));
  }

  void sample(const transport::ConsumerApp& app) { row(app, "sample", ""); }

  std::string take() { return std::move(out_); }

 private:
  void row(const transport::ConsumerApp& app, const char* event, const std::string& seq) {
    const auto& w = app.window();
    const auto srtt = app.rtt().srtt();
    out_ += format_fixed(sim_.now().seconds());
    out_ += ',' + std::to_string(app.index());
    out_ += ',' + std::to_string(app.node());
    out_ += ',';
    out_ += event;
    out_ += ',' + seq;
    out_ += ',' + number(w.cwnd);
    out_ += ',' + number(w.ssthresh);
    out_ += ',' + (srtt ? number(*srtt) : std::string());
    out_ += ',' + number(app.rtt().rto());
    out_ += '\n';
  }

  const Simulator& sim_;
  std::string out_;
};

class ConsumerFanOut final : public transport::ConsumerObserver {
 public:
  void add(transport::ConsumerObserver* o) {
    if (o) observers_.push_back(o);
  }
  bool empty() const { return observers_.empty(); }
  void consumer_event(const transport::ConsumerApp& app, transport::ConsumerEvent event,
                      std::uint64_t seq, const ndn::Data* data) override {
    for (auto* o : observers_) o->consumer_event(app, event, seq, data);
  }

 private:
  std::vector<transport::ConsumerObserver*> observers_;
};

}  // namespace

RunResult run_single(const ScenarioConfig& config, std::uint64_t seed, const RunOptions& options) {
  config.validate();
  Simulator sim(seed);
  const TrafficPlan plan = config.placement_file.empty()
                               ? build_traffic(config, sim.stream("placement"))
                               : traffic_from_placement(config, read_file(config.placement_file));
  auto net = build_network(sim, config, plan);

  std::unique_ptr<InvariantChecker> checker;
  std::unique_ptr<TraceWriter> tracer;
  ConsumerFanOut fan;
  if (options.check_invariants) {
    checker = std::make_unique<InvariantChecker>(sim);
    net->set_forwarder_observer(checker.get());
    fan.add(checker.get());
  }
  if (options.trace) {
    tracer = std::make_unique<TraceWriter>(sim);
    fan.add(tracer.get());
  }
  if (!fan.empty()) net->set_consumer_observer(&fan);

  if (net->mobility()) net->mobility()->start();
  RandomStream& start_rand = sim.stream("app.start");
  for (const auto& c : net->consumers()) {
    c->start(Time::from_seconds(start_rand.uniform(0.0, config.start_spread)));
  }

  const Time end = Time::from_seconds(config.duration);
  const Time interval = Time::from_seconds(config.sample_interval);
  double cwnd_sum = 0.0;
  std::uint64_t cwnd_samples = 0;
  std::function<void()> sampler = [&] {
    for (const auto& c : net->consumers()) {
      cwnd_sum += c->window().cwnd;
      ++cwnd_samples;
      if (tracer) tracer->sample(*c);
    }
    if (sim.now() + interval <= end) sim.schedule_in(interval, sampler);
  };
  if (interval <= end) sim.schedule_at(interval, sampler);

  sim.run_until(end);

  RunResult result;
  MetricsRecord& m = result.metrics;
  m.seed = seed;
  std::uint64_t bytes = 0;
  std::uint64_t rtt_samples = 0;
  double rtt_sum = 0.0;
  std::uint64_t hop_sum = 0;
  for (const auto& c : net->consumers()) {
    const auto& s = c->stats();
    bytes += s.bytes;
    rtt_samples += s.rtt_samples;
    rtt_sum += s.rtt_sum;
    hop_sum += s.hop_sum;
    m.duplicates += s.duplicates;
    m.unique_data += s.unique_data;
    m.interests_sent += s.interests_sent;
    m.retransmissions += s.retransmissions;
    m.timeouts += s.timeouts;
    m.window_decreases += s.decreases;
    m.congestion_marks += s.congestion_marks;
  }
  m.throughput_mbps = static_cast<double>(bytes) * 8.0 / config.duration / 1e6;
  m.mean_cwnd = cwnd_samples ? cwnd_sum / static_cast<double>(cwnd_samples) : 0.0;
  m.mean_rtt_ms = rtt_samples ? rtt_sum / static_cast<double>(rtt_samples) * 1000.0 : 0.0;
  m.mean_hop_count = m.unique_data ? static_cast<double>(hop_sum) / static_cast<double>(m.unique_data) : 0.0;

  const auto totals = net->forwarder_totals();
  m.data_broadcasts = totals.data_broadcasts;
  m.cache_hits = totals.cache_hits;
  m.pit_aggregations = totals.pit_aggregations;
  m.interest_broadcasts = totals.interests_broadcast;
  m.pit_expired = totals.pit_expired;
  m.collisions = net->link().stats().collisions;
  m.queue_drops = net->link().stats().queue_drops;

  if (checker) {
    m.invariant_violations = checker->total_violations();
    result.violations = checker->messages();
  }
  if (tracer) result.trace = tracer->take();
  return result;
}

std::vector<RunResult> run_experiment_detailed(const ScenarioConfig& config, const RunOptions& options) {
  config.validate();
  if (!config.placement_file.empty()) read_file(config.placement_file);
  const std::size_t runs = config.runs;
  std::vector<RunResult> results(runs);
  unsigned workers = options.threads ? options.threads : std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, runs));

  if (workers <= 1) {
    for (std::size_t i = 0; i < runs; ++i) results[i] = run_single(config, config.seed + i, options);
    return results;
  }

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < runs; i = next++) {
        try {
          results[i] = run_single(config, config.seed + i, options);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
  return results;
}

std::vector<MetricsRecord> run_experiment(const ScenarioConfig& config, const RunOptions& options) {
  std::vector<MetricsRecord> out;
  for (auto& r : run_experiment_detailed(config, options)) out.push_back(r.metrics);
  return out;
}

}  // namespace dcsim::experiment
