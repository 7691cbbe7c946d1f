#pragma once

#include <memory>
#include <vector>

#include "dcsim/core/simulator.hpp"
#include "dcsim/experiment/config.hpp"
#include "dcsim/experiment/traffic.hpp"
#include "dcsim/mac/wired_network.hpp"
#include "dcsim/mac/wireless_channel.hpp"
#include "dcsim/ndn/forwarder.hpp"
#include "dcsim/topology/mobility.hpp"
#include "dcsim/transport/consumer.hpp"

namespace dcsim::experiment {

// Owns every per-run object: movement, medium, forwarders and applications.
// Packets handed up by the link layer are dispatched to the receiving
// node's forwarder.
class Network {
 public:
  explicit Network(Simulator& sim) : sim_(sim) {}
  Network(const Network&) = delete;
  Network& operator=(const Network&) = delete;

  void set_mobility(std::unique_ptr<Mobility> mobility) { mobility_ = std::move(mobility); }
  void set_reachability(std::unique_ptr<mac::Reachability> reach) { reach_ = std::move(reach); }
  // Creates one forwarder per node of `link`.
  void install(std::unique_ptr<mac::LinkLayer> link, const ndn::ForwarderParams& params);

  transport::ConsumerApp& add_consumer(NodeId node, transport::ConsumerConfig config);
  transport::ProducerApp& add_producer(NodeId node, ndn::Name prefix, std::uint32_t payload);

  void set_forwarder_observer(ndn::ForwarderObserver* observer);
  void set_consumer_observer(transport::ConsumerObserver* observer);

  Simulator& sim() { return sim_; }
  std::size_t size() const { return forwarders_.size(); }
  mac::LinkLayer& link() { return *link_; }
  const mac::LinkLayer& link() const { return *link_; }
  // Null for wired networks.
  mac::WirelessChannel* wireless() { return dynamic_cast<mac::WirelessChannel*>(link_.get()); }
  Mobility* mobility() { return mobility_.get(); }
  const mac::Reachability* reachability() const { return reach_.get(); }
  ndn::Forwarder& forwarder(NodeId node) { return *forwarders_.at(node); }
  const ndn::Forwarder& forwarder(NodeId node) const { return *forwarders_.at(node); }
  const std::vector<std::unique_ptr<transport::ConsumerApp>>& consumers() const { return consumers_; }
  const std::vector<std::unique_ptr<transport::ProducerApp>>& producers() const { return producers_; }

  // Sum of every forwarder's counters.
  ndn::ForwarderStats forwarder_totals() const;

 private:
  Simulator& sim_;
  std::unique_ptr<Mobility> mobility_;
  std::unique_ptr<mac::Reachability> reach_;
  std::unique_ptr<mac::LinkLayer> link_;
  std::vector<std::unique_ptr<ndn::Forwarder>> forwarders_;
  std::vector<std::unique_ptr<transport::ConsumerApp>> consumers_;
  std::vector<std::unique_ptr<transport::ProducerApp>> producers_;
};

// Initial node positions for wireless topologies (grid or chain).
std::vector<Vec2> initial_positions(const ScenarioConfig& config, RandomStream& jitter);

ndn::ForwarderParams forwarder_params(const ScenarioConfig& config);
transport::ConsumerConfig consumer_config(const ScenarioConfig& config, const ndn::Name& prefix);

// Builds the topology and attaches the applications of `plan`. Consumers are
// not started.
std::unique_ptr<Network> build_network(Simulator& sim, const ScenarioConfig& config,
                                       const TrafficPlan& plan);

}  // namespace dcsim::experiment
