#include "dcsim/experiment/invariants.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace dcsim::experiment {
namespace {

std::uint64_t mix(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

std::uint64_t forward_key(NodeId node, const ndn::Name& name, std::uint32_t nonce) {
  const std::uint64_t h = ndn::NameHash{}(name);
  return mix(mix(h + 0x9E3779B97F4A7C15ull * (std::uint64_t{node} + 1)) ^ nonce);
}

}  // namespace

const std::vector<std::string>& invariant_names() {
  static const std::vector<std::string> names = {
      kLoopFreedom,  kPitAccounting, kCsCapacity,     kFibValidity, kOutstandingConservation,
      kCwndFloor,    kCwlClamp,      kSingleDecrease, kRtoBounds,
  };
  return names;
}

InvariantChecker::InvariantChecker(const Simulator& sim, std::size_t keep_messages)
    : sim_(sim), keep_(keep_messages) {
  for (const auto& n : invariant_names()) {
    checks_[n] = 0;
    violations_[n] = 0;
  }
}

void InvariantChecker::check(const char* name, bool ok, const std::string& detail) {
  ++checks_[name];
  if (ok) return;
  ++violations_[name];
  if (messages_.size() < keep_) {
    std::ostringstream os;
    os << "t=" << sim_.now() << " " << name << ": " << detail;
    messages_.push_back(os.str());
  }
}

void InvariantChecker::interest_sent(NodeId node, const ndn::Interest& interest, NodeId,
                                     const ndn::FibEntry* via) {
  const bool fresh = forwarded_.insert(forward_key(node, interest.name, interest.nonce)).second;
  check(kLoopFreedom, fresh, "node " + std::to_string(node) + " forwarded " +
                                 interest.name.to_uri() + " nonce " + std::to_string(interest.nonce) +
                                 " twice");
  if (via) {
    const Time now = sim_.now();
    check(kFibValidity, now - via->last_confirmed < via->rtt.rto_time(),
          "node " + std::to_string(node) + " unicast via a stale route for " + via->prefix.to_uri());
  }
}

void InvariantChecker::pit_changed(NodeId node, const ndn::PitEntry& entry) {
  const std::set<std::uint32_t> distinct(entry.seen_nonces.begin(), entry.seen_nonces.end());
  const bool ok = entry.pit_count == distinct.size() && distinct.size() == entry.seen_nonces.size() &&
                  entry.downstreams.size() == entry.pit_count && entry.expiry > sim_.now() &&
                  entry.expiry > entry.created_at;
  check(kPitAccounting, ok,
        "node " + std::to_string(node) + " entry " + entry.name.to_uri() + " pit_count " +
            std::to_string(entry.pit_count) + " nonces " + std::to_string(entry.seen_nonces.size()));
}

void InvariantChecker::pit_removed(NodeId node, const ndn::PitEntry& entry, bool expired) {
  const Time now = sim_.now();
  const bool ok = expired ? now == entry.expiry : now <= entry.expiry;
  check(kPitAccounting, ok,
        "node " + std::to_string(node) + " removed " + entry.name.to_uri() +
            (expired ? " away from its expiry" : " after its expiry"));
}

void InvariantChecker::cs_changed(NodeId node, const ndn::ContentStore& cs) {
  check(kCsCapacity, cs.size() <= cs.capacity(),
        "node " + std::to_string(node) + " holds " + std::to_string(cs.size()) + " > " +
            std::to_string(cs.capacity()));
}

void InvariantChecker::consumer_event(const transport::ConsumerApp& app,
                                      transport::ConsumerEvent event, std::uint64_t seq,
                                      const ndn::Data* data) {
  const auto& st = app.stats();
  const auto& w = app.window();
  const std::string who = "consumer " + std::to_string(app.index());

  // Sequences ever requested, minus satisfied, equals what is in flight.
  check(kOutstandingConservation, st.interests_sent == st.unique_data + app.outstanding(),
        who + " sent " + std::to_string(st.interests_sent) + " satisfied " +
            std::to_string(st.unique_data) + " outstanding " + std::to_string(app.outstanding()));
  check(kCwndFloor, w.cwnd >= 1.0, who + " cwnd " + std::to_string(w.cwnd));
  const auto& rp = app.rtt().params();
  check(kRtoBounds, app.rtt().rto() >= rp.min_rto && app.rtt().rto() <= rp.max_rto,
        who + " rto " + std::to_string(app.rtt().rto()));

  if (event == transport::ConsumerEvent::kData && data && app.config().cwl_enabled) {
    const double limit = transport::cwl_from_hops(data->hop_count);
    check(kCwlClamp, w.cwnd <= limit,
          who + " cwnd " + std::to_string(w.cwnd) + " above limit " + std::to_string(limit));
  }
  if (event == transport::ConsumerEvent::kDecrease) {
    auto& recovery = recovery_[app.index()];
    check(kSingleDecrease, !recovery || seq > *recovery,
          who + " second decrease for seq " + std::to_string(seq) + " inside window ending at " +
              std::to_string(recovery.value_or(0)));
    recovery = app.highest_sent();
  }
}

std::uint64_t InvariantChecker::checks(const std::string& name) const {
  auto it = checks_.find(name);
  return it == checks_.end() ? 0 : it->second;
}

std::uint64_t InvariantChecker::violations(const std::string& name) const {
  auto it = violations_.find(name);
  return it == violations_.end() ? 0 : it->second;
}

std::uint64_t InvariantChecker::total_violations() const {
  std::uint64_t t = 0;
  for (const auto& [name, v] : violations_) t += v;
  return t;
}

}  // namespace dcsim::experiment
