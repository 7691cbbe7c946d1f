#pragma once

#include <cstdint>
#include <deque>
#include <unordered_map>
#include <vector>

#include "dcsim/core/simulator.hpp"
#include "dcsim/mac/link_layer.hpp"
#include "dcsim/ndn/content_store.hpp"
#include "dcsim/ndn/fib.hpp"
#include "dcsim/ndn/packet.hpp"
#include "dcsim/ndn/pit.hpp"

namespace dcsim::ndn {

// An application attached to a forwarder's local face.
class LocalApp {
 public:
  virtual ~LocalApp() = default;
  // True if this application produces `name`.
  virtual bool serves(const Name&) const { return false; }
  virtual void on_interest(const Interest&) {}
  virtual void on_data(const Data&) {}
  // Data that reached this node after its PIT entry was gone.
  virtual void on_unsolicited_data(const Data&) {}
};

struct ForwarderParams {
  std::size_t cs_capacity = 200;
  Time suppression_interval = Time::from_ms(20);
  // Data is marked when the outgoing queue holds at least
  // ceil(capacity * cm_fraction) frames.
  double cm_fraction = 0.5;
  transport::RtoParams fib_rto;
  // Nonces of satisfied or expired entries are remembered this long so a
  // late echo of an already forwarded Interest is still recognised as a loop.
  Time dead_nonce_lifetime = Time::from_ms(10000);
};

struct ForwarderStats {
  std::uint64_t interests_in = 0;
  std::uint64_t interests_unicast = 0;
  std::uint64_t interests_broadcast = 0;
  std::uint64_t interests_to_app = 0;
  std::uint64_t loops_dropped = 0;
  std::uint64_t pit_aggregations = 0;
  std::uint64_t pit_suppressed = 0;
  std::uint64_t pit_expired = 0;
  std::uint64_t cache_hits = 0;
  std::uint64_t data_in = 0;
  std::uint64_t data_unicast = 0;
  std::uint64_t data_broadcasts = 0;
  std::uint64_t data_unsolicited = 0;
  std::uint64_t cm_marked = 0;
  std::uint64_t malformed = 0;
  std::uint64_t link_rejects = 0;
};

// Hooks for tracing and runtime invariant checks. All no-ops by default.
class ForwarderObserver {
 public:
  virtual ~ForwarderObserver() = default;
  virtual void interest_sent(NodeId /*node*/, const Interest&, NodeId /*dst*/,
                             const FibEntry* /*via*/) {}
  virtual void pit_changed(NodeId /*node*/, const PitEntry&) {}
  virtual void pit_removed(NodeId /*node*/, const PitEntry&, bool /*expired*/) {}
  virtual void cs_changed(NodeId /*node*/, const ContentStore&) {}
  virtual void data_sent(NodeId /*node*/, const Data&, NodeId /*dst*/,
                         std::size_t /*downstream_records*/) {}
};

// One node's forwarding plane: CS -> PIT -> FIB for Interests, and
// FIB learn -> CS insert -> PIT fan-out for Data.
class Forwarder {
 public:
  Forwarder(NodeId id, Simulator& sim, mac::LinkLayer& link, ForwarderParams params);
  Forwarder(const Forwarder&) = delete;
  Forwarder& operator=(const Forwarder&) = delete;

  NodeId id() const { return id_; }
  void attach(LocalApp* app) { apps_.push_back(app); }
  void set_observer(ForwarderObserver* observer) { observer_ = observer; }

  // `from` is a neighbour id or kLocalFace.
  void on_interest(NodeId from, const Interest& interest);
  void on_data(NodeId from, const Data& data);

  const ContentStore& content_store() const { return cs_; }
  ContentStore& content_store() { return cs_; }
  const Pit& pit() const { return pit_; }
  const Fib& fib() const { return fib_; }
  const ForwarderStats& stats() const { return stats_; }
  const ForwarderParams& params() const { return params_; }

  // Threshold used by mark_congestion for this node's link layer.
  std::size_t cm_threshold() const;

 private:
  void forward_interest(PitEntry& entry, NodeId from, const Interest& interest);
  void send_data(const Data& data, NodeId dst, std::size_t records);
  void deliver_interest_to_app(LocalApp* app, const Interest& interest);
  void deliver_data_to_apps(const Data& data);
  void schedule_expiry(PitEntry& entry);
  void expire(const Name& name);
  LocalApp* producer_for(const Name& name) const;
  void bury_nonces(const PitEntry& entry);
  bool is_dead_nonce(const Name& name, std::uint32_t nonce);

  NodeId id_;
  Simulator& sim_;
  mac::LinkLayer& link_;
  ForwarderParams params_;
  ContentStore cs_;
  Pit pit_;
  Fib fib_;
  std::vector<LocalApp*> apps_;
  ForwarderObserver* observer_ = nullptr;
  ForwarderStats stats_;
  struct DeadNonce {
    Time expires;
    std::uint64_t key;
  };
  std::deque<DeadNonce> dead_order_;
  std::unordered_map<std::uint64_t, Time> dead_nonces_;
};

// ceil(capacity * fraction)
std::size_t congestion_threshold(std::size_t capacity, double fraction = 0.5);

// Sets the mark when the outgoing queue already holds at least
// congestion_threshold(capacity, fraction) frames. An existing mark is kept.
void mark_congestion(Data& data, std::size_t queue_len, std::size_t capacity,
                     double fraction = 0.5);

}  // namespace dcsim::ndn
