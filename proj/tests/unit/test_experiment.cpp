#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "doctest.h"
#include "dcsim/experiment/config.hpp"
#include "dcsim/experiment/invariants.hpp"
#include "dcsim/experiment/metrics.hpp"
#include "dcsim/experiment/runner.hpp"
#include "dcsim/experiment/scripted.hpp"
#include "dcsim/experiment/traffic.hpp"

using namespace dcsim;
using namespace dcsim::experiment;

namespace {

std::size_t count_lines(const std::string& s) {
  return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n'));
}

ScenarioConfig quick_grid() {
  ScenarioConfig c;
  c.duration = 5.0;
  c.runs = 2;
  return c;
}

}  // namespace

TEST_CASE("config text round-trips") {
  for (const char* name : {"manet", "wireless-chain", "wired-chain"}) {
    const auto c = preset(name);
    CHECK(parse_config(emit_config(c)) == c);
  }
  ScenarioConfig c;
  c.speed = 4.0;
  c.gamma = 1.75;
  c.traffic = Traffic::kManyToMany;
  c.cs = 0;
  c.dil = false;
  c.p_frame_error = 0.05;
  c.placement_file = "pins.txt";
  c.duration = 0.1 + 0.2;
  CHECK(parse_config(emit_config(c)) == c);
}

TEST_CASE("config parsing") {
  const auto c = parse_config("# comment\nspeed = 2.5\ntraffic = m-1 # inline\n\ncwl = off\n");
  CHECK(c.speed == 2.5);
  CHECK(c.traffic == Traffic::kManyToOne);
  CHECK_FALSE(c.cwl);
  CHECK(c.effective_producers() == 2);
  CHECK_THROWS_AS(parse_config("colour = blue\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("speed\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("speed = fast\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("speed = 9\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("gamma = 1\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("nodes = 15\nconsumers = 10\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("p_frame_error = 1.5\n"), ConfigError);
  CHECK_THROWS_AS(preset("city"), ConfigError);
  try {
    parse_config("speed = 1\nbogus = 2\n");
    FAIL("expected an error");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
  }
}

TEST_CASE("chain presets") {
  const auto wired = preset("wired-chain");
  CHECK(wired.topology == Topology::kLinearWired);
  CHECK(wired.payload == 1460);
  CHECK(wired.consumers == 1);
  wired.validate();
  auto bad = wired;
  bad.nodes = 11;
  CHECK_THROWS_AS(bad.validate(), ConfigError);
  bad.nodes = 1;
  CHECK_THROWS_AS(bad.validate(), ConfigError);
  auto moving = preset("wireless-chain");
  moving.speed = 1.0;
  CHECK_THROWS_AS(moving.validate(), ConfigError);
}

TEST_CASE("field access") {
  ScenarioConfig c;
  set_field(c, "cs", "0");
  CHECK(get_field(c, "cs") == "0");
  CHECK(get_field(c, "topology") == "grid");
  CHECK_THROWS_AS(set_field(c, "nope", "1"), ConfigError);
  const auto names = field_names();
  CHECK(std::set<std::string>(names.begin(), names.end()).size() == names.size());
}

TEST_CASE("one-to-one traffic pairs every consumer with its own producer") {
  ScenarioConfig c;
  RandomStream r(1, "placement");
  const auto plan = build_traffic(c, r);
  CHECK(plan.consumers.size() + plan.producers.size() == 20);
  CHECK(plan.prefixes.size() == 10);
  std::set<NodeId> nodes;
  for (const auto& e : plan.consumers) nodes.insert(e.node);
  for (const auto& e : plan.producers) nodes.insert(e.node);
  CHECK(nodes.size() == 20);
  for (std::size_t i = 0; i < 10; ++i) CHECK(plan.consumers[i].prefix == plan.producers[i].prefix);
}

TEST_CASE("many-to-one traffic") {
  ScenarioConfig c;
  c.traffic = Traffic::kManyToOne;
  RandomStream r(1, "placement");
  const auto plan = build_traffic(c, r);
  CHECK(plan.producers.size() == 2);
  CHECK(plan.prefixes.size() == 2);
  std::map<std::string, int> per_prefix;
  for (const auto& e : plan.consumers) ++per_prefix[e.prefix.to_uri()];
  CHECK(per_prefix == std::map<std::string, int>{{"/A", 5}, {"/B", 5}});
}

TEST_CASE("many-to-many traffic") {
  ScenarioConfig c;
  c.traffic = Traffic::kManyToMany;
  RandomStream r(1, "placement");
  const auto plan = build_traffic(c, r);
  CHECK(plan.producers.size() == 10);
  std::map<std::string, int> producers;
  for (const auto& e : plan.producers) ++producers[e.prefix.to_uri()];
  CHECK(producers == std::map<std::string, int>{{"/A", 5}, {"/B", 5}});
}

TEST_CASE("placement draws depend on the seed only") {
  ScenarioConfig c;
  RandomStream a(3, "placement");
  RandomStream b(3, "placement");
  RandomStream other(4, "placement");
  const auto pa = build_traffic(c, a);
  const auto pb = build_traffic(c, b);
  const auto po = build_traffic(c, other);
  bool differs = false;
  for (std::size_t i = 0; i < pa.consumers.size(); ++i) {
    CHECK(pa.consumers[i].node == pb.consumers[i].node);
    differs = differs || pa.consumers[i].node != po.consumers[i].node;
  }
  CHECK(differs);
}

TEST_CASE("placement text pins roles") {
  auto c = preset("wireless-chain");
  const auto plan = traffic_from_placement(c, "consumer 4\nproducer 0 # swapped\n");
  CHECK(plan.consumers[0].node == 4);
  CHECK(plan.producers[0].node == 0);
  CHECK_THROWS(traffic_from_placement(c, "consumer 4\nproducer 4\n"));
  CHECK_THROWS(traffic_from_placement(c, "consumer 4\n"));
  CHECK_THROWS(traffic_from_placement(c, "consumer 9\nproducer 0\n"));
}

TEST_CASE("summaries") {
  const auto half = summarize_values("throughput", {0.4, 0.6});
  CHECK(half.mean == doctest::Approx(0.5));
  const auto single = summarize_values("x", {3.0});
  CHECK(single.stddev == 0.0);
  const auto triple = summarize_values("x", {1.0, 2.0, 3.0});
  CHECK(triple.mean == 2.0);
  CHECK(triple.stddev == 1.0);
  CHECK_THROWS_AS(summarize_values("x", {}), std::invalid_argument);
  CHECK_THROWS_AS(summarize({}), std::invalid_argument);
  MetricsRecord r;
  r.throughput_mbps = 0.5;
  const auto all = summarize({r, r});
  CHECK(all.size() == metric_columns().size());
}

TEST_CASE("csv layout") {
  ScenarioConfig c;
  std::vector<MetricsRecord> records(10);
  for (std::size_t i = 0; i < records.size(); ++i) records[i].seed = i + 1;
  records[0].throughput_mbps = 640000.0 * 8 / 100 / 1e6;
  const auto csv = emit_csv(c, records);
  CHECK(count_lines(csv) == 11);
  const auto header = csv.substr(0, csv.find('\n'));
  for (const char* col : {"scenario", "speed", "cs", "cwl", "dil", "seed", "throughput_mbps",
                          "mean_cwnd", "mean_rtt_ms", "data_broadcasts", "mean_hop_count",
                          "cache_hits", "collisions", "queue_drops", "pit_aggregations",
                          "duplicates"}) {
    CAPTURE(col);
    CHECK(header.find(col) != std::string::npos);
  }
  CHECK(csv.find(",0.051200,") != std::string::npos);
  CHECK(format_fixed(1.0 / 3.0) == "0.333333");
  CHECK_THROWS_AS(write_csv("/nonexistent-dir/x.csv", c, records), std::runtime_error);
}

TEST_CASE("runs are independent and reproducible") {
  auto c = quick_grid();
  c.runs = 3;
  const auto a = run_experiment(c);
  const auto b = run_experiment(c);
  REQUIRE(a.size() == 3);
  CHECK(a == b);
  CHECK(a[0].seed == 1);
  CHECK(a[2].seed == 3);
  CHECK(a[0].throughput_mbps > 0.0);
  CHECK(a[0] != a[1]);
  RunOptions threaded;
  threaded.threads = 3;
  CHECK(run_experiment(c, threaded) == a);
}

TEST_CASE("throughput counts unique bytes") {
  const auto c = quick_grid();
  const auto r = run_single(c, 5).metrics;
  CHECK(r.throughput_mbps ==
        doctest::Approx(static_cast<double>(r.unique_data) * c.payload * 8 / c.duration / 1e6));
  CHECK(r.interests_sent >= r.unique_data);
}

TEST_CASE("a wired pair cannot beat its link") {
  auto c = preset("wired-chain");
  c.nodes = 2;
  c.duration = 1.0;
  const auto r = run_single(c, 1).metrics;
  CHECK(r.throughput_mbps > 0.0);
  CHECK(r.throughput_mbps <= c.wired_bitrate / 1e6);
  CHECK(r.invariant_violations == 0);
}

TEST_CASE("traces are reproducible") {
  auto c = quick_grid();
  RunOptions o;
  o.trace = true;
  const auto a = run_single(c, 2, o);
  const auto b = run_single(c, 2, o);
  CHECK(a.trace.rfind(kTraceHeader, 0) == 0);
  CHECK(count_lines(a.trace) > 10);
  CHECK(a.trace == b.trace);
}

TEST_CASE("aggregation scenario") {
  const auto fixed = run_aggregation_scenario(false);
  CHECK(fixed.z_downstreams == 2);
  CHECK(fixed.z_pit_count == 2);
  CHECK(fixed.data_broadcasts >= 1);
  CHECK(fixed.delivered == 1);
  const auto dil = run_aggregation_scenario(true);
  CHECK(dil.z_downstreams == 1);
  CHECK(dil.data_broadcasts == 0);
  CHECK(dil.delivered == 1);
}

TEST_CASE("cache redundancy scenario") {
  const auto cached = run_cache_redundancy_scenario(200);
  CHECK(cached.duplicates >= 1);
  CHECK(cached.cache_hits >= 1);
  const auto off = run_cache_redundancy_scenario(0);
  CHECK(off.cache_hits == 0);
  CHECK(off.delivered == 1);
}

TEST_CASE("invariant checker flags violations") {
  Simulator sim(1);
  InvariantChecker chk(sim);
  ndn::Interest i;
  i.name = ndn::Name::parse("/a/seq=1");
  i.nonce = 5;
  chk.interest_sent(2, i, mac::kBroadcast, nullptr);
  chk.interest_sent(3, i, mac::kBroadcast, nullptr);
  CHECK(chk.violations(kLoopFreedom) == 0);
  chk.interest_sent(2, i, mac::kBroadcast, nullptr);
  CHECK(chk.violations(kLoopFreedom) == 1);

  ndn::FibEntry stale{ndn::Name::parse("/a"), 4, transport::RttEstimator(), Time::zero()};
  sim.run_until(Time::from_seconds(3));
  i.nonce = 6;
  chk.interest_sent(2, i, 4, &stale);
  CHECK(chk.violations(kFibValidity) == 1);

  ndn::PitEntry e;
  e.name = i.name;
  e.downstreams = {{1, 7}, {2, 7}};
  e.seen_nonces = {7, 7};
  e.pit_count = 2;
  e.expiry = Time::from_seconds(5);
  chk.pit_changed(2, e);
  CHECK(chk.violations(kPitAccounting) == 1);
  chk.pit_removed(2, e, true);
  CHECK(chk.violations(kPitAccounting) == 2);

  class NoLink final : public mac::LinkLayer {
   public:
    std::size_t node_count() const override { return 1; }
    bool send(NodeId, ndn::Packet, NodeId) override { return true; }
    std::size_t queue_length(NodeId, NodeId) const override { return 0; }
    std::size_t queue_capacity() const override { return 25; }
  } link;
  ndn::Forwarder fwd(0, sim, link, {});
  transport::ConsumerConfig cfg;
  cfg.prefix = ndn::Name::parse("/p0");
  cfg.cwl_enabled = true;
  transport::ConsumerApp app(0, sim, fwd, cfg);
  app.start(sim.now());
  sim.run_until(sim.now());
  for (std::uint64_t s = 0; s < 3; ++s) {
    ndn::Data d;
    d.name = cfg.prefix.append_sequence(s);
    d.hop_count = 16;
    app.on_data(d);
  }
  ndn::Data far;
  far.hop_count = 3;
  chk.consumer_event(app, transport::ConsumerEvent::kData, 0, &far);
  CHECK(chk.violations(kCwlClamp) == 1);
  chk.consumer_event(app, transport::ConsumerEvent::kDecrease, 4, nullptr);
  chk.consumer_event(app, transport::ConsumerEvent::kDecrease, 4, nullptr);
  CHECK(chk.violations(kSingleDecrease) == 1);
  CHECK(chk.violations(kOutstandingConservation) == 0);
  CHECK(chk.total_violations() == 6);
  CHECK(chk.messages().size() == 6);
}

TEST_CASE("a mobile run keeps every invariant") {
  auto c = quick_grid();
  c.speed = 8.0;
  c.duration = 20.0;
  RunOptions o;
  o.check_invariants = true;
  const auto r = run_single(c, 3, o);
  CHECK(r.metrics.invariant_violations == 0);
  for (const auto& m : r.violations) MESSAGE(m);
}
