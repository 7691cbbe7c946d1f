#pragma once

#include <cstddef>
#include <cstdint>
#include <deque>
#include <functional>
#include <limits>

#include "dcsim/core/time.hpp"
#include "dcsim/ndn/packet.hpp"
#include "dcsim/topology/geometry.hpp"

namespace dcsim::mac {

inline constexpr NodeId kBroadcast = std::numeric_limits<NodeId>::max();
inline constexpr std::size_t kDefaultQueueCapacity = 25;

struct Frame {
  ndn::Packet payload;
  NodeId src = 0;
  NodeId dst = kBroadcast;
  std::size_t size_bits = 0;
  Time tx_start;
  Time tx_end;
  std::uint32_t attempts = 0;

  bool broadcast() const { return dst == kBroadcast; }
};

// Transmission time of `bits` at `bitrate_bps`, rounded up to whole microseconds.
Time airtime(std::size_t bits, double bitrate_bps);

// Drop-tail FIFO.
class NicQueue {
 public:
  explicit NicQueue(std::size_t capacity = kDefaultQueueCapacity) : capacity_(capacity) {}

  // False (and nothing stored) when full.
  bool push(Frame frame);
  Frame& front() { return frames_.front(); }
  const Frame& front() const { return frames_.front(); }
  Frame pop();
  std::size_t size() const { return frames_.size(); }
  std::size_t capacity() const { return capacity_; }
  bool empty() const { return frames_.empty(); }
  std::uint64_t drops() const { return drops_; }

 private:
  std::deque<Frame> frames_;
  std::size_t capacity_;
  std::uint64_t drops_ = 0;
};

struct LinkStats {
  std::uint64_t frames_enqueued = 0;
  std::uint64_t queue_drops = 0;
  // Every channel access, retries included.
  std::uint64_t tx_attempts = 0;
  // Per (attempt, potential receiver) outcomes.
  std::uint64_t clean_receptions = 0;
  std::uint64_t collisions = 0;
  std::uint64_t frame_errors = 0;
  std::uint64_t out_of_range = 0;
  // Clean receptions of unicast frames addressed elsewhere.
  std::uint64_t overheard_discards = 0;
  std::uint64_t unicast_retries = 0;
  std::uint64_t unicast_delivered = 0;
  std::uint64_t unicast_abandoned = 0;
  std::uint64_t broadcast_frames = 0;
};

// Node-level transmission service used by the forwarders. Implementations
// deliver received packets through the receiver callback.
class LinkLayer {
 public:
  using Receiver = std::function<void(NodeId at, NodeId from, const ndn::Packet& packet)>;

  virtual ~LinkLayer() = default;

  void set_receiver(Receiver receiver) { receiver_ = std::move(receiver); }

  virtual std::size_t node_count() const = 0;
  // Queues `packet` at `node` for neighbour `dst` or kBroadcast. Returns
  // false when drop-tail rejected it.
  virtual bool send(NodeId node, ndn::Packet packet, NodeId dst) = 0;
  // Occupancy of the queue a frame for `dst` would join.
  virtual std::size_t queue_length(NodeId node, NodeId dst) const = 0;
  virtual std::size_t queue_capacity() const = 0;

  const LinkStats& stats() const { return stats_; }

 protected:
  void deliver_up(NodeId at, NodeId from, const ndn::Packet& packet) {
    if (receiver_) receiver_(at, from, packet);
  }

  Receiver receiver_;
  LinkStats stats_;
};

}  // namespace dcsim::mac
