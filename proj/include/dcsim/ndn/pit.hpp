#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "dcsim/core/event_queue.hpp"
#include "dcsim/core/time.hpp"
#include "dcsim/ndn/name.hpp"
#include "dcsim/topology/geometry.hpp"

namespace dcsim::ndn {

// Face id of the applications attached to a forwarder.
inline constexpr NodeId kLocalFace = 0xFFFFFFFEu;

struct Downstream {
  NodeId face;
  std::uint32_t nonce;
  friend bool operator==(const Downstream&, const Downstream&) = default;
};

struct PitEntry {
  Name name;
  std::vector<Downstream> downstreams;
  std::vector<std::uint32_t> seen_nonces;
  Time created_at;
  Time expiry;
  Time forwarded_at;
  std::uint32_t pit_count = 0;
  EventId expiry_event = kNoEvent;

  bool seen(std::uint32_t nonce) const;
  std::size_t network_downstreams() const;
  bool has_local_downstream() const;
};

class Pit {
 public:
  PitEntry* find(const Name& name);
  const PitEntry* find(const Name& name) const;
  PitEntry& create(const Name& name, Time now);
  void erase(const Name& name) { entries_.erase(name); }
  std::size_t size() const { return entries_.size(); }

 private:
  std::map<Name, PitEntry> entries_;
};

}  // namespace dcsim::ndn
