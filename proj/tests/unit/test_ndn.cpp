#include <vector>

#include "doctest.h"
#include "dcsim/ndn/forwarder.hpp"

using namespace dcsim;
using namespace dcsim::ndn;

namespace {

struct Sent {
  NodeId dst;
  Packet packet;
};

class FakeLink final : public mac::LinkLayer {
 public:
  std::size_t node_count() const override { return 8; }
  bool send(NodeId, Packet packet, NodeId dst) override {
    sent.push_back({dst, std::move(packet)});
    return true;
  }
  std::size_t queue_length(NodeId, NodeId) const override { return backlog; }
  std::size_t queue_capacity() const override { return 25; }
  std::vector<Sent> sent;
  std::size_t backlog = 0;
};

class Recorder final : public LocalApp {
 public:
  void on_data(const Data& d) override { data.push_back(d); }
  void on_unsolicited_data(const Data& d) override { unsolicited.push_back(d); }
  std::vector<Data> data;
  std::vector<Data> unsolicited;
};

Interest interest(const char* uri, std::uint32_t nonce, double lifetime = 2.0) {
  Interest i;
  i.name = Name::parse(uri);
  i.nonce = nonce;
  i.lifetime = Time::from_seconds(lifetime);
  return i;
}

Data data(const char* uri) {
  Data d;
  d.name = Name::parse(uri);
  d.payload_size = 512;
  return d;
}

struct Node {
  explicit Node(ForwarderParams p = {}) : sim(1), fwd(3, sim, link, p) {}
  Simulator sim;
  FakeLink link;
  Forwarder fwd;
};

}  // namespace

TEST_CASE("names") {
  const auto n = Name::parse("/a/img.png/seq=3");
  CHECK(n.size() == 3);
  CHECK(n.to_uri() == "/a/img.png/seq=3");
  CHECK(n.sequence() == 3u);
  CHECK(n.parent() == Name::parse("/a/img.png"));
  CHECK(Name::parse("/a").is_prefix_of(n));
  CHECK_FALSE(Name::parse("/b").is_prefix_of(n));
  CHECK_FALSE(Name::parse("/a/img").sequence().has_value());
  CHECK(Name::parse("/a").append_sequence(9).to_uri() == "/a/seq=9");
  CHECK(n.wire_bytes() == 16);
  CHECK_THROWS(Name::parse("/a//b"));
}

TEST_CASE("content store is an exact-name LRU") {
  ContentStore cs(2);
  cs.insert(data("/a/seq=1"));
  cs.insert(data("/a/seq=2"));
  CHECK(cs.find(Name::parse("/a/seq=1")) != nullptr);
  cs.insert(data("/a/seq=3"));
  CHECK(cs.size() == 2);
  CHECK(cs.evictions() == 1);
  CHECK(cs.find(Name::parse("/a/seq=2")) == nullptr);
  CHECK(cs.find(Name::parse("/a")) == nullptr);
  ContentStore off(0);
  off.insert(data("/a/seq=1"));
  CHECK(off.size() == 0);
}

TEST_CASE("cache hit answers without a PIT entry") {
  Node n;
  n.fwd.content_store().insert(data("/a/img.png"));
  n.fwd.on_interest(5, interest("/a/img.png", 1));
  CHECK(n.fwd.pit().size() == 0);
  CHECK(n.fwd.stats().cache_hits == 1);
  REQUIRE(n.link.sent.size() == 1);
  CHECK(n.link.sent[0].dst == 5);
  CHECK(std::holds_alternative<Data>(n.link.sent[0].packet));
  CHECK(std::get<Data>(n.link.sent[0].packet).hop_count == 1);
}

TEST_CASE("a repeated nonce is a loop") {
  Node n;
  n.fwd.on_interest(5, interest("/a/img.png", 7));
  n.fwd.on_interest(6, interest("/a/img.png", 7));
  CHECK(n.fwd.stats().loops_dropped == 1);
  CHECK(n.link.sent.size() == 1);
  CHECK(n.fwd.pit().find(Name::parse("/a/img.png"))->pit_count == 1);
}

TEST_CASE("a late retransmission is aggregated and forwarded") {
  Node n;
  const auto name = Name::parse("/a/img.png");
  n.fwd.on_interest(1, interest("/a/img.png", 10));
  n.sim.run_until(Time::from_seconds(1));
  n.fwd.on_interest(2, interest("/a/img.png", 11));
  const PitEntry* e = n.fwd.pit().find(name);
  REQUIRE(e != nullptr);
  CHECK(e->pit_count == 2);
  CHECK(e->downstreams.size() == 2);
  CHECK(n.fwd.stats().pit_aggregations == 1);
  CHECK(n.link.sent.size() == 2);
  CHECK(e->expiry == Time::from_seconds(3));
}

TEST_CASE("aggregation inside the suppression interval is not forwarded") {
  Node n;
  n.fwd.on_interest(1, interest("/a/img.png", 10));
  n.sim.run_until(Time::from_ms(5));
  n.fwd.on_interest(2, interest("/a/img.png", 11));
  CHECK(n.link.sent.size() == 1);
  CHECK(n.fwd.stats().pit_suppressed == 1);
  CHECK(n.fwd.pit().find(Name::parse("/a/img.png"))->pit_count == 2);
}

TEST_CASE("data for two downstreams is broadcast once") {
  Node n;
  n.fwd.on_interest(1, interest("/a/img.png", 10));
  n.sim.run_until(Time::from_seconds(1));
  n.fwd.on_interest(2, interest("/a/img.png", 11));
  n.link.sent.clear();
  n.fwd.on_data(4, data("/a/img.png"));
  REQUIRE(n.link.sent.size() == 1);
  CHECK(n.link.sent[0].dst == mac::kBroadcast);
  CHECK(n.fwd.stats().data_broadcasts == 1);
  CHECK(n.fwd.pit().size() == 0);
}

TEST_CASE("data for one downstream is unicast") {
  Node n;
  n.fwd.on_interest(1, interest("/a/img.png", 10));
  n.link.sent.clear();
  n.fwd.on_data(4, data("/a/img.png"));
  REQUIRE(n.link.sent.size() == 1);
  CHECK(n.link.sent[0].dst == 1);
  CHECK(n.fwd.stats().data_broadcasts == 0);
  CHECK(n.fwd.stats().data_unicast == 1);
}

TEST_CASE("data without a PIT entry is dropped") {
  Node n;
  Recorder app;
  n.fwd.attach(&app);
  n.fwd.on_data(4, data("/a/img.png"));
  n.sim.run_until(Time::from_ms(1));
  CHECK(n.link.sent.empty());
  CHECK(n.fwd.stats().data_unsolicited == 1);
  CHECK(app.data.empty());
  CHECK(app.unsolicited.size() == 1);
  CHECK(n.fwd.fib().size() == 0);
}

TEST_CASE("PIT entries expire at their lifetime") {
  Node n;
  const auto name = Name::parse("/a/img.png");
  n.fwd.on_interest(1, interest("/a/img.png", 10));
  n.sim.run_until(Time::from_us(1'999'999));
  CHECK(n.fwd.pit().find(name) != nullptr);
  n.sim.run_until(Time::from_seconds(2));
  CHECK(n.fwd.pit().find(name) == nullptr);
  CHECK(n.fwd.stats().pit_expired == 1);
}

TEST_CASE("aggregation extends expiry to the later deadline") {
  Node n;
  const auto name = Name::parse("/a/img.png");
  n.fwd.on_interest(1, interest("/a/img.png", 10));
  n.sim.run_until(Time::from_seconds(1));
  n.fwd.on_interest(2, interest("/a/img.png", 11));
  n.sim.run_until(Time::from_ms(2500));
  CHECK(n.fwd.pit().find(name) != nullptr);
  n.sim.run_until(Time::from_seconds(3));
  CHECK(n.fwd.pit().find(name) == nullptr);

  Node m;
  m.fwd.on_interest(1, interest("/a/img.png", 10));
  m.sim.run_until(Time::from_seconds(1));
  m.fwd.on_interest(2, interest("/a/img.png", 11, 0.5));
  CHECK(m.fwd.pit().find(name)->expiry == Time::from_seconds(2));
}

TEST_CASE("satisfied entries never expire") {
  Node n;
  n.fwd.on_interest(1, interest("/a/img.png", 10));
  n.sim.run_until(Time::from_ms(500));
  n.fwd.on_data(4, data("/a/img.png"));
  n.sim.run_until(Time::from_seconds(5));
  CHECK(n.fwd.stats().pit_expired == 0);
}

TEST_CASE("nonces of finished entries stay dead") {
  Node cold(ForwarderParams{.cs_capacity = 0});
  cold.fwd.on_interest(1, interest("/a/img.png", 10));
  cold.fwd.on_data(4, data("/a/img.png"));
  cold.link.sent.clear();
  cold.fwd.on_interest(2, interest("/a/img.png", 10));
  CHECK(cold.link.sent.empty());
  CHECK(cold.fwd.stats().loops_dropped == 1);
  cold.fwd.on_interest(2, interest("/a/img.png", 12));
  CHECK(cold.link.sent.size() == 1);
}

TEST_CASE("solicited data teaches the FIB") {
  Node n;
  n.fwd.on_interest(1, interest("/a/seq=1", 10));
  n.sim.run_until(Time::from_ms(100));
  n.fwd.on_data(4, data("/a/seq=1"));
  const FibEntry* e = n.fwd.fib().find_exact(Name::parse("/a"));
  REQUIRE(e != nullptr);
  CHECK(e->nexthop == 4);
  CHECK(e->rtt.srtt() == doctest::Approx(0.1));
  n.link.sent.clear();
  n.fwd.on_interest(1, interest("/a/seq=2", 11));
  REQUIRE(n.link.sent.size() == 1);
  CHECK(n.link.sent[0].dst == 4);
  CHECK(n.fwd.stats().interests_unicast == 1);
  n.link.sent.clear();
  n.fwd.on_interest(4, interest("/a/seq=3", 12));
  REQUIRE(n.link.sent.size() == 1);
  CHECK(n.link.sent[0].dst == mac::kBroadcast);
}

TEST_CASE("FIB lookup uses fresh longest-prefix entries") {
  Fib fib(transport::RtoParams{.initial_rto = 1.0});
  fib.learn(Name::parse("/a"), 2, std::nullopt, Time::zero());
  const auto name = Name::parse("/a/img.png/seq=3");
  const FibEntry* hit = fib.lookup(name, Time::from_ms(100));
  REQUIRE(hit != nullptr);
  CHECK(hit->nexthop == 2);
  CHECK(fib.lookup(name, Time::from_seconds(1)) == nullptr);

  fib.learn(Name::parse("/a"), 2, std::nullopt, Time::from_seconds(5));
  fib.learn(Name::parse("/a/img.png"), 7, std::nullopt, Time::from_seconds(5));
  CHECK(fib.lookup(name, Time::from_seconds(5))->nexthop == 7);

  fib.learn(Name::parse("/a"), 3, std::nullopt, Time::from_seconds(6));
  CHECK(fib.find_exact(Name::parse("/a"))->nexthop == 3);
  CHECK(fib.lookup(name, Time::from_ms(6500))->nexthop == 3);
}

TEST_CASE("congestion marks") {
  CHECK(congestion_threshold(25) == 13);
  CHECK(congestion_threshold(25, 1.0) == 25);
  Data d = data("/a/seq=1");
  mark_congestion(d, 12, 25);
  CHECK_FALSE(d.congestion_mark);
  mark_congestion(d, 13, 25);
  CHECK(d.congestion_mark);
  Data e = data("/a/seq=1");
  mark_congestion(e, 0, 25);
  CHECK_FALSE(e.congestion_mark);
  e.congestion_mark = true;
  mark_congestion(e, 0, 25);
  CHECK(e.congestion_mark);
}

TEST_CASE("a mark set upstream survives later hops") {
  Node n;
  n.link.backlog = 13;
  n.fwd.on_interest(1, interest("/a/img.png", 10));
  n.fwd.on_data(4, data("/a/img.png"));
  const Data marked = std::get<Data>(n.link.sent.back().packet);
  CHECK(marked.congestion_mark);
  CHECK(n.fwd.stats().cm_marked == 1);

  Node next;
  next.fwd.on_interest(1, interest("/a/img.png", 10));
  next.fwd.on_data(4, marked);
  CHECK(std::get<Data>(next.link.sent.back().packet).congestion_mark);
  CHECK(next.fwd.stats().cm_marked == 0);
}

TEST_CASE("local producer gets the interest and its data goes back") {
  struct Producer final : LocalApp {
    explicit Producer(Forwarder& f) : fwd(f) {}
    bool serves(const Name& n) const override { return Name::parse("/a").is_prefix_of(n); }
    void on_interest(const Interest& i) override {
      Data d;
      d.name = i.name;
      d.payload_size = 512;
      fwd.on_data(kLocalFace, d);
    }
    Forwarder& fwd;
  };
  Node n;
  Producer p(n.fwd);
  n.fwd.attach(&p);
  n.fwd.on_interest(1, interest("/a/seq=9", 10));
  n.sim.run_until(Time::from_ms(1));
  REQUIRE(n.link.sent.size() == 1);
  CHECK(n.link.sent[0].dst == 1);
  CHECK(std::get<Data>(n.link.sent[0].packet).hop_count == 1);
  CHECK(n.fwd.fib().size() == 0);
}
