#include "dcsim/mac/link_layer.hpp"

#include <cmath>
#include <stdexcept>

namespace dcsim::mac {

Time airtime(std::size_t bits, double bitrate_bps) {
  if (!(bitrate_bps > 0.0)) throw std::invalid_argument("bitrate must be positive");
  const double us = static_cast<double>(bits) * 1e6 / bitrate_bps;
  return Time::from_us(static_cast<std::int64_t>(std::ceil(us - 1e-9)));
}

bool NicQueue::push(Frame frame) {
  if (frames_.size() >= capacity_) {
    ++drops_;
    return false;
  }
  frames_.push_back(std::move(frame));
  return true;
}

Frame NicQueue::pop() {
  if (frames_.empty()) throw std::logic_error("pop on empty NIC queue");
  Frame f = std::move(frames_.front());
  frames_.pop_front();
  return f;
}

}  // namespace dcsim::mac
