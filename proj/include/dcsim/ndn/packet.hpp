#pragma once

#include <cstddef>
#include <cstdint>
#include <variant>

#include "dcsim/core/time.hpp"
#include "dcsim/ndn/name.hpp"

namespace dcsim::ndn {

struct Interest {
  Name name;
  std::uint32_t nonce = 0;
  Time lifetime = Time::from_ms(2000);
  std::uint32_t hop_count = 0;
};

struct Data {
  Name name;
  std::uint32_t payload_size = 0;
  // Hops travelled from the node that produced or served this copy.
  std::uint32_t hop_count = 0;
  bool congestion_mark = false;
};

using Packet = std::variant<Interest, Data>;

// Fixed header overheads; only the relative Interest/Data airtime matters.
inline constexpr std::size_t kInterestOverheadBytes = 20;
inline constexpr std::size_t kDataOverheadBytes = 28;
inline constexpr std::size_t kLinkOverheadBytes = 34;

std::size_t packet_bytes(const Interest& interest);
std::size_t packet_bytes(const Data& data);
std::size_t packet_bytes(const Packet& packet);
// Serialized size including the per-frame link overhead.
inline std::size_t frame_bytes(const Packet& packet) {
  return packet_bytes(packet) + kLinkOverheadBytes;
}

inline const Name& packet_name(const Packet& packet) {
  return std::visit([](const auto& p) -> const Name& { return p.name; }, packet);
}

}  // namespace dcsim::ndn
