#pragma once

#include <string>
#include <vector>

#include "dcsim/core/random.hpp"
#include "dcsim/experiment/config.hpp"
#include "dcsim/ndn/name.hpp"
#include "dcsim/topology/geometry.hpp"

namespace dcsim::experiment {

struct Endpoint {
  NodeId node = 0;
  ndn::Name prefix;
};

struct TrafficPlan {
  std::vector<Endpoint> consumers;
  std::vector<Endpoint> producers;
  // Distinct prefixes in first-use order.
  std::vector<ndn::Name> prefixes;
};

// Prefix served to consumer `i` (and by producer `i`) under the config's
// traffic mode: /p<i> for one-to-one, /A, /B, ... otherwise.
ndn::Name consumer_prefix(const ScenarioConfig& config, std::uint32_t i);
ndn::Name producer_prefix(const ScenarioConfig& config, std::uint32_t i);

// Assigns roles to distinct nodes. Chains put the consumer on node 0 and the
// producer on the last node; grids draw nodes uniformly from `rand`.
TrafficPlan build_traffic(const ScenarioConfig& config, RandomStream& rand);

// Same roles, nodes taken from placement text: one "consumer <node>" or
// "producer <node>" per line, in role order. '#' starts a comment.
TrafficPlan traffic_from_placement(const ScenarioConfig& config, std::string_view text);

}  // namespace dcsim::experiment
