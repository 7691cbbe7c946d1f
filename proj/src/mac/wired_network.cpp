#include "dcsim/mac/wired_network.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace dcsim::mac {

double wired_drop_probability(double p_byte_error, std::size_t bytes) {
  if (p_byte_error < 0.0 || p_byte_error > 1.0) {
    throw std::invalid_argument("per-byte error probability must lie in [0, 1]");
  }
  return -std::expm1(static_cast<double>(bytes) * std::log1p(-p_byte_error));
}

bool wired_frame_survives(const WiredLink& link, std::size_t bytes, RandomStream& rand) {
  if (link.p_byte_error <= 0.0) return true;
  return !rand.bernoulli(wired_drop_probability(link.p_byte_error, bytes));
}

WiredNetwork::WiredNetwork(Simulator& sim, std::size_t nodes, std::size_t queue_capacity)
    : sim_(sim), queue_capacity_(queue_capacity), neighbours_(nodes) {}

void WiredNetwork::connect(NodeId a, NodeId b, const WiredLink& link) {
  if (a == b || a >= neighbours_.size() || b >= neighbours_.size()) {
    throw std::invalid_argument("invalid wired link endpoints");
  }
  set_direction(a, b, link);
  set_direction(b, a, link);
}

void WiredNetwork::set_direction(NodeId from, NodeId to, const WiredLink& link) {
  if (link.p_byte_error < 0.0 || link.p_byte_error > 1.0 || !(link.bitrate_bps > 0.0)) {
    throw std::invalid_argument("invalid wired link parameters");
  }
  auto [it, inserted] = links_.try_emplace(Key{from, to});
  it->second.params = link;
  if (inserted) {
    it->second.queue = NicQueue(queue_capacity_);
    it->second.rand =
        &sim_.stream("wired.error." + std::to_string(from) + "-" + std::to_string(to));
    auto& list = neighbours_[from];
    list.insert(std::upper_bound(list.begin(), list.end(), to), to);
  }
}

const WiredLink& WiredNetwork::direction(NodeId from, NodeId to) const {
  return links_.at(Key{from, to}).params;
}

bool WiredNetwork::send(NodeId node, ndn::Packet packet, NodeId dst) {
  if (dst != kBroadcast) return enqueue(node, dst, packet);
  bool any = false;
  for (NodeId n : neighbours_.at(node)) any = enqueue(node, n, packet) || any;
  return any;
}

std::size_t WiredNetwork::queue_length(NodeId node, NodeId dst) const {
  if (dst != kBroadcast) {
    auto it = links_.find(Key{node, dst});
    return it == links_.end() ? 0 : it->second.queue.size();
  }
  std::size_t longest = 0;
  for (NodeId n : neighbours_[node]) longest = std::max(longest, links_.at(Key{node, n}).queue.size());
  return longest;
}

bool WiredNetwork::enqueue(NodeId from, NodeId to, const ndn::Packet& packet) {
  auto it = links_.find(Key{from, to});
  if (it == links_.end()) throw std::invalid_argument("no wired link between the given nodes");
  Frame frame;
  frame.payload = packet;
  frame.src = from;
  frame.dst = to;
  frame.size_bits = ndn::frame_bytes(packet) * 8;
  if (!it->second.queue.push(std::move(frame))) {
    ++stats_.queue_drops;
    return false;
  }
  ++stats_.frames_enqueued;
  if (!it->second.busy) start(it->first);
  return true;
}

void WiredNetwork::start(const Key& key) {
  auto& dir = links_.at(key);
  if (dir.queue.empty()) {
    dir.busy = false;
    return;
  }
  dir.busy = true;
  Frame& head = dir.queue.front();
  ++head.attempts;
  head.tx_start = sim_.now();
  head.tx_end = head.tx_start + airtime(head.size_bits, dir.params.bitrate_bps);
  ++stats_.tx_attempts;
  sim_.schedule_at(head.tx_end, [this, key] {
    auto& d = links_.at(key);
    Frame frame = d.queue.pop();
    const bool survives = wired_frame_survives(d.params, frame.size_bits / 8, *d.rand);
    sim_.schedule_in(d.params.prop_delay, [this, survives, frame = std::move(frame)] {
      if (!survives) {
        ++stats_.frame_errors;
        return;
      }
      ++stats_.clean_receptions;
      ++delivered_;
      deliver_up(frame.dst, frame.src, frame.payload);
    });
    start(key);
  });
}

}  // namespace dcsim::mac
