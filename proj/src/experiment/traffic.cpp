#include "dcsim/experiment/traffic.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>
#include <set>
#include <sstream>

namespace dcsim::experiment {
namespace {

ndn::Name letter_prefix(std::uint32_t i) {
  std::string label;
  do {
    label.insert(label.begin(), static_cast<char>('A' + i % 26));
    i /= 26;
  } while (i-- > 0);
  return ndn::Name({label});
}

std::uint32_t group_count(const ScenarioConfig& config) {
  switch (config.traffic) {
    case Traffic::kOneToOne: return config.consumers;
    case Traffic::kManyToOne: return config.effective_producers();
    case Traffic::kManyToMany: return 2;
  }
  return 1;
}

TrafficPlan assign(const ScenarioConfig& config, const std::vector<NodeId>& consumer_nodes,
                   const std::vector<NodeId>& producer_nodes) {
  TrafficPlan plan;
  for (std::uint32_t i = 0; i < consumer_nodes.size(); ++i) {
    plan.consumers.push_back({consumer_nodes[i], consumer_prefix(config, i)});
  }
  for (std::uint32_t i = 0; i < producer_nodes.size(); ++i) {
    plan.producers.push_back({producer_nodes[i], producer_prefix(config, i)});
  }
  for (const auto* group : {&plan.consumers, &plan.producers}) {
    for (const auto& e : *group) {
      if (std::find(plan.prefixes.begin(), plan.prefixes.end(), e.prefix) == plan.prefixes.end()) {
        plan.prefixes.push_back(e.prefix);
      }
    }
  }
  return plan;
}

}  // namespace

ndn::Name consumer_prefix(const ScenarioConfig& config, std::uint32_t i) {
  if (config.traffic == Traffic::kOneToOne) return ndn::Name({"p" + std::to_string(i)});
  return letter_prefix(i % group_count(config));
}

ndn::Name producer_prefix(const ScenarioConfig& config, std::uint32_t i) {
  if (config.traffic == Traffic::kOneToOne) return ndn::Name({"p" + std::to_string(i)});
  return letter_prefix(i % group_count(config));
}

TrafficPlan build_traffic(const ScenarioConfig& config, RandomStream& rand) {
  config.validate();
  const std::uint32_t n_cons = config.consumers;
  const std::uint32_t n_prod = config.effective_producers();
  if (config.topology != Topology::kGrid) {
    return assign(config, {0}, {config.nodes - 1});
  }
  std::vector<NodeId> pool(config.nodes);
  std::iota(pool.begin(), pool.end(), NodeId{0});
  const std::size_t need = n_cons + n_prod;
  // Partial Fisher-Yates: the first `need` slots become a uniform sample.
  for (std::size_t i = 0; i < need; ++i) {
    const auto j = static_cast<std::size_t>(rand.uniform_int(i, pool.size() - 1));
    std::swap(pool[i], pool[j]);
  }
  return assign(config, std::vector<NodeId>(pool.begin(), pool.begin() + n_cons),
                std::vector<NodeId>(pool.begin() + n_cons, pool.begin() + need));
}

TrafficPlan traffic_from_placement(const ScenarioConfig& config, std::string_view text) {
  config.validate();
  std::vector<NodeId> cons;
  std::vector<NodeId> prods;
  std::set<NodeId> used;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    std::string role;
    std::string node_text;
    if (!(fields >> role)) continue;
    std::string extra;
    if (!(fields >> node_text) || (fields >> extra)) {
      throw ConfigError("placement line " + std::to_string(line_no) + ": expected '<role> <node>'");
    }
    NodeId node = 0;
    auto [ptr, ec] = std::from_chars(node_text.data(), node_text.data() + node_text.size(), node);
    if (ec != std::errc() || ptr != node_text.data() + node_text.size() || node >= config.nodes) {
      throw ConfigError("placement line " + std::to_string(line_no) + ": bad node '" + node_text + "'");
    }
    if (!used.insert(node).second) {
      throw ConfigError("placement line " + std::to_string(line_no) + ": node " + node_text +
                        " already has a role");
    }
    if (role == "consumer") {
      cons.push_back(node);
    } else if (role == "producer") {
      prods.push_back(node);
    } else {
      throw ConfigError("placement line " + std::to_string(line_no) + ": unknown role '" + role + "'");
    }
  }
  if (cons.size() != config.consumers || prods.size() != config.effective_producers()) {
    throw ConfigError("placement lists " + std::to_string(cons.size()) + " consumers and " +
                      std::to_string(prods.size()) + " producers; the config needs " +
                      std::to_string(config.consumers) + " and " +
                      std::to_string(config.effective_producers()));
  }
  return assign(config, cons, prods);
}

}  // namespace dcsim::experiment
