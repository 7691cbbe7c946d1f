#include "dcsim/ndn/packet.hpp"

namespace dcsim::ndn {

std::size_t packet_bytes(const Interest& interest) {
  return interest.name.wire_bytes() + kInterestOverheadBytes;
}

std::size_t packet_bytes(const Data& data) {
  return data.name.wire_bytes() + data.payload_size + kDataOverheadBytes;
}

std::size_t packet_bytes(const Packet& packet) {
  return std::visit([](const auto& p) { return packet_bytes(p); }, packet);
}

}  // namespace dcsim::ndn
