#pragma once

#include <cstdint>
#include <functional>
#include <unordered_map>
#include <vector>

#include "dcsim/core/simulator.hpp"
#include "dcsim/mac/link_layer.hpp"
#include "dcsim/topology/geometry.hpp"
#include "dcsim/topology/mobility.hpp"

namespace dcsim::mac {

// Who hears a transmission from `src` starting at `now`. Sensing range and
// reception range are the same set.
class Reachability {
 public:
  virtual ~Reachability() = default;
  virtual std::size_t node_count() const = 0;
  // Fills `out` with every node other than `src` in range, ascending id.
  virtual void in_range(NodeId src, Time now, std::vector<NodeId>& out) const = 0;
};

// Unit-disk reachability over the current mobility positions.
class GeometricReachability final : public Reachability {
 public:
  GeometricReachability(const Mobility& mobility, double tx_radius)
      : mobility_(mobility), tx_radius_(tx_radius) {}
  std::size_t node_count() const override { return mobility_.size(); }
  void in_range(NodeId src, Time now, std::vector<NodeId>& out) const override;

 private:
  const Mobility& mobility_;
  double tx_radius_;
};

// Fixed, hand-specified reachability (scripted micro-topologies).
class StaticReachability final : public Reachability {
 public:
  explicit StaticReachability(Adjacency adjacency) : adjacency_(std::move(adjacency)) {}
  std::size_t node_count() const override { return adjacency_.size(); }
  void in_range(NodeId src, Time, std::vector<NodeId>& out) const override {
    out = adjacency_[src];
  }

 private:
  Adjacency adjacency_;
};

struct WirelessParams {
  double bitrate_bps = 1e6;
  Time slot = Time::from_us(20);
  std::uint32_t backoff_slots = 64;
  std::size_t queue_capacity = kDefaultQueueCapacity;
  std::uint32_t unicast_retries = 3;
  // Independent per-attempt reception loss applied after collision resolution.
  double p_frame_error = 0.0;
};

// Shared single-channel medium with slotted-uniform-backoff CSMA.
//
// A node with a frame at its queue head waits until no transmission it can
// hear is in progress, then defers a uniform number of slots. A neighbour
// starting to transmit before the backoff expires cancels it; the backoff is
// redrawn once the channel is free again. Two transmissions that overlap at a
// receiver destroy each other there (no capture), and a node cannot receive
// while it transmits. Unicast frames are retried until the destination gets a
// clean copy or the retry budget runs out; broadcasts are sent once.
class WirelessChannel final : public LinkLayer {
 public:
  WirelessChannel(Simulator& sim, const Reachability& reachability, WirelessParams params = {});

  std::size_t node_count() const override { return nodes_.size(); }
  bool send(NodeId node, ndn::Packet packet, NodeId dst) override;
  std::size_t queue_length(NodeId node, NodeId) const override { return nodes_[node].queue.size(); }
  std::size_t queue_capacity() const override { return params_.queue_capacity; }
  const WirelessParams& params() const { return params_; }

  using FrameMatcher = std::function<bool(const Frame&)>;
  // Destroys the next `count` receptions at `receiver` whose frame matches,
  // as if a hidden interferer had overlapped them. Counted as collisions.
  void force_collision(NodeId receiver, FrameMatcher match, std::uint32_t count = 1);

  // Largest number of a node's own frames airborne at once; always <= 1.
  std::uint32_t max_own_airborne() const { return max_own_airborne_; }
  bool transmitting(NodeId node) const { return nodes_[node].state == State::kTransmitting; }
  bool channel_busy_at(NodeId node) const { return nodes_[node].sensed > 0; }

 private:
  enum class State { kIdle, kWaitIdle, kBackoff, kTransmitting };

  struct Reception {
    std::uint64_t tx_id;
    std::size_t slot;  // index into Transmission::receivers
  };
  struct NodeState {
    NicQueue queue;
    State state = State::kIdle;
    EventId backoff_event = kNoEvent;
    Time backoff_end;
    std::uint32_t sensed = 0;
    std::uint32_t airborne = 0;
    std::vector<Reception> receptions;
    RandomStream* backoff_rand = nullptr;
    RandomStream* error_rand = nullptr;
  };
  struct Transmission {
    Frame frame;
    std::vector<NodeId> receivers;
    std::vector<bool> corrupted;
  };
  struct Fault {
    NodeId receiver;
    FrameMatcher match;
    std::uint32_t remaining;
  };

  void start_access(NodeId node);
  void transmit(NodeId node);
  void finish(std::uint64_t tx_id);
  void corrupt_receptions(NodeId node);
  bool consume_fault(NodeId receiver, const Frame& frame);

  Simulator& sim_;
  const Reachability& reach_;
  WirelessParams params_;
  std::vector<NodeState> nodes_;
  std::unordered_map<std::uint64_t, Transmission> airborne_;
  std::vector<Fault> faults_;
  std::uint64_t next_tx_id_ = 1;
  std::uint32_t max_own_airborne_ = 0;
  std::vector<NodeId> scratch_;
};

}  // namespace dcsim::mac
