#include "dcsim/mac/wireless_channel.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace dcsim::mac {

void GeometricReachability::in_range(NodeId src, Time now, std::vector<NodeId>& out) const {
  out.clear();
  const Vec2 origin = mobility_.position(src, now);
  for (NodeId n = 0; n < mobility_.size(); ++n) {
    if (n == src) continue;
    if (distance(origin, mobility_.position(n, now)) <= tx_radius_) out.push_back(n);
  }
}

WirelessChannel::WirelessChannel(Simulator& sim, const Reachability& reachability,
                                 WirelessParams params)
    : sim_(sim), reach_(reachability), params_(params), nodes_(reachability.node_count()) {
  if (params_.backoff_slots == 0) throw std::invalid_argument("backoff needs at least one slot");
  if (params_.p_frame_error < 0.0 || params_.p_frame_error > 1.0) {
    throw std::invalid_argument("frame error probability must lie in [0, 1]");
  }
  for (NodeId n = 0; n < nodes_.size(); ++n) {
    nodes_[n].queue = NicQueue(params_.queue_capacity);
    nodes_[n].backoff_rand = &sim_.stream("mac.backoff.node" + std::to_string(n));
    nodes_[n].error_rand = &sim_.stream("phy.error.node" + std::to_string(n));
  }
}

bool WirelessChannel::send(NodeId node, ndn::Packet packet, NodeId dst) {
  auto& st = nodes_.at(node);
  Frame frame;
  frame.size_bits = ndn::frame_bytes(packet) * 8;
  frame.payload = std::move(packet);
  frame.src = node;
  frame.dst = dst;
  if (!st.queue.push(std::move(frame))) {
    ++stats_.queue_drops;
    return false;
  }
  ++stats_.frames_enqueued;
  if (st.state == State::kIdle) start_access(node);
  return true;
}

void WirelessChannel::force_collision(NodeId receiver, FrameMatcher match, std::uint32_t count) {
  faults_.push_back({receiver, std::move(match), count});
}

bool WirelessChannel::consume_fault(NodeId receiver, const Frame& frame) {
  for (auto& f : faults_) {
    if (f.receiver == receiver && f.remaining > 0 && f.match(frame)) {
      --f.remaining;
      return true;
    }
  }
  return false;
}

void WirelessChannel::start_access(NodeId node) {
  auto& st = nodes_[node];
  if (st.queue.empty()) {
    st.state = State::kIdle;
    return;
  }
  if (st.sensed > 0) {
    st.state = State::kWaitIdle;
    return;
  }
  const auto slot = st.backoff_rand->uniform_int(0, params_.backoff_slots - 1);
  st.state = State::kBackoff;
  st.backoff_end = sim_.now() + params_.slot * static_cast<std::int64_t>(slot);
  st.backoff_event = sim_.schedule_at(st.backoff_end, [this, node] {
    nodes_[node].backoff_event = kNoEvent;
    transmit(node);
  });
}

void WirelessChannel::corrupt_receptions(NodeId node) {
  for (const auto& rx : nodes_[node].receptions) airborne_.at(rx.tx_id).corrupted[rx.slot] = true;
}

void WirelessChannel::transmit(NodeId node) {
  auto& st = nodes_[node];
  st.state = State::kTransmitting;
  if (++st.airborne > max_own_airborne_) max_own_airborne_ = st.airborne;

  const Time now = sim_.now();
  Frame& head = st.queue.front();
  ++head.attempts;
  head.tx_start = now;
  head.tx_end = now + airtime(head.size_bits, params_.bitrate_bps);
  ++stats_.tx_attempts;
  if (head.broadcast()) ++stats_.broadcast_frames;

  // Half duplex: whatever this node was receiving is lost.
  corrupt_receptions(node);

  const std::uint64_t tx_id = next_tx_id_++;
  Transmission tx;
  tx.frame = head;
  reach_.in_range(node, now, scratch_);
  tx.receivers = scratch_;
  tx.corrupted.assign(tx.receivers.size(), false);
  stats_.out_of_range += nodes_.size() - 1 - tx.receivers.size();
  auto [it, inserted] = airborne_.emplace(tx_id, std::move(tx));
  Transmission& air = it->second;

  for (std::size_t i = 0; i < air.receivers.size(); ++i) {
    const NodeId r = air.receivers[i];
    auto& rs = nodes_[r];
    ++rs.sensed;
    // Carrier sense freezes a pending backoff; a backoff expiring in this
    // same microsecond cannot sense us and goes ahead.
    if (rs.state == State::kBackoff && rs.backoff_end > now) {
      sim_.cancel(rs.backoff_event);
      rs.backoff_event = kNoEvent;
      rs.state = State::kWaitIdle;
    }
    bool lost = rs.state == State::kTransmitting || consume_fault(r, air.frame);
    if (!rs.receptions.empty()) {
      corrupt_receptions(r);
      lost = true;
    }
    air.corrupted[i] = lost;
    rs.receptions.push_back({tx_id, i});
  }
  sim_.schedule_at(air.frame.tx_end, [this, tx_id] { finish(tx_id); });
}

void WirelessChannel::finish(std::uint64_t tx_id) {
  auto node_handle = airborne_.extract(tx_id);
  Transmission tx = std::move(node_handle.mapped());
  const NodeId src = tx.frame.src;
  const Frame& frame = tx.frame;

  bool acked = false;
  std::vector<NodeId> deliver_to;
  for (std::size_t i = 0; i < tx.receivers.size(); ++i) {
    const NodeId r = tx.receivers[i];
    auto& rs = nodes_[r];
    --rs.sensed;
    std::erase_if(rs.receptions, [tx_id](const Reception& rx) { return rx.tx_id == tx_id; });
    if (tx.corrupted[i]) {
      ++stats_.collisions;
    } else if (rs.error_rand->bernoulli(params_.p_frame_error)) {
      ++stats_.frame_errors;
    } else {
      ++stats_.clean_receptions;
      if (frame.broadcast() || frame.dst == r) {
        deliver_to.push_back(r);
        if (frame.dst == r) acked = true;
      } else {
        ++stats_.overheard_discards;
      }
    }
  }

  auto& ss = nodes_[src];
  --ss.airborne;
  ss.state = State::kIdle;
  if (!frame.broadcast() && !acked && frame.attempts <= params_.unicast_retries) {
    ++stats_.unicast_retries;
  } else {
    if (!frame.broadcast()) {
      if (acked) {
        ++stats_.unicast_delivered;
      } else {
        ++stats_.unicast_abandoned;
      }
    }
    ss.queue.pop();
  }

  for (NodeId r : deliver_to) deliver_up(r, src, frame.payload);

  if (ss.state == State::kIdle) start_access(src);
  for (NodeId r : tx.receivers) {
    auto& rs = nodes_[r];
    if (rs.state == State::kWaitIdle && rs.sensed == 0) start_access(r);
  }
}

}  // namespace dcsim::mac
