#include "dcsim/experiment/scripted.hpp"

#include <sstream>

#include "dcsim/experiment/network.hpp"

namespace dcsim::experiment {
namespace {

Adjacency undirected(std::size_t n, const std::vector<std::pair<NodeId, NodeId>>& edges) {
  Adjacency adj(n);
  for (auto [a, b] : edges) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  for (auto& row : adj) std::sort(row.begin(), row.end());
  return adj;
}

std::string stamp(const Simulator& sim) {
  std::ostringstream os;
  os << sim.now();
  return os.str();
}

class EventLog final : public ndn::ForwarderObserver, public transport::ConsumerObserver {
 public:
  EventLog(const Simulator& sim, std::vector<std::string> labels, std::vector<std::string>& out)
      : sim_(sim), labels_(std::move(labels)), out_(out) {}

  std::string label(NodeId n) const {
    if (n == mac::kBroadcast) return "*";
    return n < labels_.size() ? labels_[n] : std::to_string(n);
  }

  void interest_sent(NodeId node, const ndn::Interest& i, NodeId dst, const ndn::FibEntry*) override {
    out_.push_back(stamp(sim_) + " " + label(node) + " sends Interest " + i.name.to_uri() +
                   " nonce " + std::to_string(i.nonce) + " to " + label(dst));
  }
  void pit_changed(NodeId node, const ndn::PitEntry& e) override {
    out_.push_back(stamp(sim_) + " " + label(node) + " PIT " + e.name.to_uri() + " downstreams " +
                   std::to_string(e.downstreams.size()));
    if (hook) hook(node, e);
  }
  void pit_removed(NodeId node, const ndn::PitEntry& e, bool expired) override {
    out_.push_back(stamp(sim_) + " " + label(node) + " PIT " + e.name.to_uri() +
                   (expired ? " expired" : " satisfied"));
  }
  void data_sent(NodeId node, const ndn::Data& d, NodeId dst, std::size_t records) override {
    out_.push_back(stamp(sim_) + " " + label(node) + " sends Data " + d.name.to_uri() + " to " +
                   label(dst) + " (" + std::to_string(records) + " records)");
  }
  void consumer_event(const transport::ConsumerApp& app, transport::ConsumerEvent event,
                      std::uint64_t seq, const ndn::Data*) override {
    out_.push_back(stamp(sim_) + " consumer at " + label(app.node()) + " " +
                   transport::to_string(event) + " seq " + std::to_string(seq));
    if (consumer_hook) consumer_hook(event);
  }

  std::function<void(NodeId, const ndn::PitEntry&)> hook;
  std::function<void(transport::ConsumerEvent)> consumer_hook;

 private:
  const Simulator& sim_;
  std::vector<std::string> labels_;
  std::vector<std::string>& out_;
};

bool is_interest(const mac::Frame& f) { return std::holds_alternative<ndn::Interest>(f.payload); }

}  // namespace

AggregationResult run_aggregation_scenario(bool dynamic_lifetime, std::uint64_t seed) {
  enum : NodeId { c, x, y, z, d };
  AggregationResult result;
  result.dynamic_lifetime = dynamic_lifetime;

  Simulator sim(seed);
  Network net(sim);
  net.set_reachability(std::make_unique<mac::StaticReachability>(
      undirected(5, {{c, x}, {c, y}, {x, y}, {x, z}, {y, z}, {z, d}})));
  auto channel = std::make_unique<mac::WirelessChannel>(sim, *net.reachability());
  mac::WirelessChannel& medium = *channel;
  net.install(std::move(channel), ndn::ForwarderParams{});
  medium.force_collision(d, is_interest, 1);

  const ndn::Name prefix = ndn::Name::parse("/a/img.png");
  net.add_producer(d, ndn::Name::parse("/a"), 512);
  transport::ConsumerConfig cc;
  cc.prefix = prefix;
  cc.dil_enabled = dynamic_lifetime;
  cc.gamma = 2.0;
  cc.fixed_lifetime = Time::from_ms(2000);
  // Both variants time out at t = 1 s: plain RTO 1 s, or RTO 0.5 s times 2.
  cc.rto.initial_rto = dynamic_lifetime ? 0.5 : 1.0;
  cc.sequence_limit = 1;
  auto& consumer = net.add_consumer(c, cc);

  EventLog log(sim, {"c", "x", "y", "z", "d"}, result.log);
  bool retransmitted = false;
  log.consumer_hook = [&](transport::ConsumerEvent e) {
    if (e == transport::ConsumerEvent::kRetransmit && !retransmitted) {
      retransmitted = true;
      result.retransmitted_at = sim.now().seconds();
    }
  };
  bool captured = false;
  log.hook = [&](NodeId node, const ndn::PitEntry& e) {
    if (node != z || !retransmitted || captured) return;
    captured = true;
    result.z_downstreams = e.downstreams.size();
    result.z_pit_count = e.pit_count;
    result.z_entry_reused = e.created_at < Time::from_seconds(result.retransmitted_at);
  };
  net.set_forwarder_observer(&log);
  net.set_consumer_observer(&log);

  consumer.start(Time::zero());
  sim.run_until(Time::from_ms(4000));

  const auto totals = net.forwarder_totals();
  result.data_broadcasts = totals.data_broadcasts;
  result.pit_expired = totals.pit_expired;
  result.delivered = consumer.stats().unique_data;
  result.collisions = medium.stats().collisions;
  return result;
}

CacheRedundancyResult run_cache_redundancy_scenario(std::uint32_t cs_capacity, std::uint64_t seed) {
  enum : NodeId { c, x1, d1, p, d2, y2, x2 };
  CacheRedundancyResult result;
  result.cs_capacity = cs_capacity;

  Simulator sim(seed);
  Network net(sim);
  net.set_reachability(std::make_unique<mac::StaticReachability>(
      undirected(7, {{c, x1}, {x1, d1}, {d1, p}, {p, d2}, {d2, y2}, {y2, x2}, {x2, c}})));
  ndn::ForwarderParams fp;
  fp.cs_capacity = cs_capacity;
  net.install(std::make_unique<mac::WirelessChannel>(sim, *net.reachability()), fp);

  net.add_producer(p, ndn::Name::parse("/a"), 512);
  transport::ConsumerConfig cc;
  cc.prefix = ndn::Name::parse("/a/img.png");
  cc.sequence_limit = 1;
  auto& consumer = net.add_consumer(c, cc);

  EventLog log(sim, {"c", "x1", "d1", "p", "d2", "y2", "x2"}, result.log);
  net.set_forwarder_observer(&log);
  net.set_consumer_observer(&log);

  consumer.start(Time::zero());
  sim.run_until(Time::from_ms(4000));

  const auto totals = net.forwarder_totals();
  result.delivered = consumer.stats().unique_data;
  result.duplicates = consumer.stats().duplicates;
  result.cache_hits = totals.cache_hits;
  result.data_broadcasts = totals.data_broadcasts;
  result.loops_dropped = totals.loops_dropped;
  return result;
}

}  // namespace dcsim::experiment
