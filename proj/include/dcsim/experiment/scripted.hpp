#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace dcsim::experiment {

// Five-node aggregation scenario. Consumer c reaches producer d through two
// relays x and y (in range of each other) and a shared relay z next to d:
//
//   c - x - z - d      x - y
//   c - y - z
//
// The first Interest wave is lost to a collision at d, so the consumer
// retransmits at t = 1 s. With a fixed 2 s lifetime z still holds the first
// wave's PIT entry and aggregates the retransmission into it; with dynamic
// lifetime the entry has already expired.
struct AggregationResult {
  bool dynamic_lifetime = false;
  double retransmitted_at = 0.0;
  // z's PIT entry right after the retransmitted Interest was processed there.
  std::size_t z_downstreams = 0;
  std::uint32_t z_pit_count = 0;
  bool z_entry_reused = false;
  std::uint64_t data_broadcasts = 0;
  std::uint64_t pit_expired = 0;
  std::uint64_t delivered = 0;
  std::uint64_t collisions = 0;
  std::vector<std::string> log;
};

AggregationResult run_aggregation_scenario(bool dynamic_lifetime, std::uint64_t seed = 1);

// Seven-node ring c - x1 - d1 - p - d2 - y2 - x2 - c: two disjoint paths
// between consumer c and producer p, the second one hop longer. The producer
// answers the copy of the Interest arriving over the short path; with caching
// the later copy is answered from p's store, so Data returns on both paths.
struct CacheRedundancyResult {
  std::uint32_t cs_capacity = 0;
  std::uint64_t delivered = 0;
  std::uint64_t duplicates = 0;
  std::uint64_t cache_hits = 0;
  std::uint64_t data_broadcasts = 0;
  std::uint64_t loops_dropped = 0;
  std::vector<std::string> log;
};

CacheRedundancyResult run_cache_redundancy_scenario(std::uint32_t cs_capacity,
                                                    std::uint64_t seed = 1);

}  // namespace dcsim::experiment
