#pragma once

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "dcsim/core/simulator.hpp"
#include "dcsim/mac/link_layer.hpp"

namespace dcsim::mac {

struct WiredLink {
  double bitrate_bps = 5e6;
  Time prop_delay = Time::from_ms(1);
  double p_byte_error = 0.0;
};

// 1 - (1 - p)^bytes
double wired_drop_probability(double p_byte_error, std::size_t bytes);

// One corruption draw for a frame of `bytes` crossing `link`.
bool wired_frame_survives(const WiredLink& link, std::size_t bytes, RandomStream& rand);

// Point-to-point full-duplex links. Each direction has its own drop-tail
// queue and serializer; there are no collisions. A broadcast from a node is
// copied onto each of its links.
class WiredNetwork final : public LinkLayer {
 public:
  WiredNetwork(Simulator& sim, std::size_t nodes,
               std::size_t queue_capacity = kDefaultQueueCapacity);

  // Both directions with the same parameters.
  void connect(NodeId a, NodeId b, const WiredLink& link);
  // Overrides one direction (e.g. a lossy receiving interface).
  void set_direction(NodeId from, NodeId to, const WiredLink& link);
  const WiredLink& direction(NodeId from, NodeId to) const;

  std::size_t node_count() const override { return neighbours_.size(); }
  bool send(NodeId node, ndn::Packet packet, NodeId dst) override;
  std::size_t queue_length(NodeId node, NodeId dst) const override;
  std::size_t queue_capacity() const override { return queue_capacity_; }
  const std::vector<NodeId>& neighbours(NodeId node) const { return neighbours_[node]; }

  // Frames that arrived at the far end (corrupted ones excluded).
  std::uint64_t delivered() const { return delivered_; }

 private:
  struct Direction {
    WiredLink params;
    NicQueue queue;
    bool busy = false;
    RandomStream* rand = nullptr;
  };
  using Key = std::pair<NodeId, NodeId>;

  bool enqueue(NodeId from, NodeId to, const ndn::Packet& packet);
  void start(const Key& key);

  Simulator& sim_;
  std::size_t queue_capacity_;
  std::vector<std::vector<NodeId>> neighbours_;
  std::map<Key, Direction> links_;
  std::uint64_t delivered_ = 0;
};

}  // namespace dcsim::mac
