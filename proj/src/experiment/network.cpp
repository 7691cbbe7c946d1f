#include "dcsim/experiment/network.hpp"

#include <algorithm>
#include <variant>

namespace dcsim::experiment {

void Network::install(std::unique_ptr<mac::LinkLayer> link, const ndn::ForwarderParams& params) {
  link_ = std::move(link);
  forwarders_.clear();
  for (NodeId i = 0; i < link_->node_count(); ++i) {
    forwarders_.push_back(std::make_unique<ndn::Forwarder>(i, sim_, *link_, params));
  }
  link_->set_receiver([this](NodeId at, NodeId from, const ndn::Packet& packet) {
    ndn::Forwarder& fwd = *forwarders_[at];
    if (const auto* interest = std::get_if<ndn::Interest>(&packet)) {
      fwd.on_interest(from, *interest);
    } else {
      fwd.on_data(from, std::get<ndn::Data>(packet));
    }
  });
}

transport::ConsumerApp& Network::add_consumer(NodeId node, transport::ConsumerConfig config) {
  auto app = std::make_unique<transport::ConsumerApp>(consumers_.size(), sim_, forwarder(node),
                                                      std::move(config));
  forwarder(node).attach(app.get());
  consumers_.push_back(std::move(app));
  return *consumers_.back();
}

transport::ProducerApp& Network::add_producer(NodeId node, ndn::Name prefix, std::uint32_t payload) {
  auto app = std::make_unique<transport::ProducerApp>(forwarder(node), std::move(prefix), payload);
  forwarder(node).attach(app.get());
  producers_.push_back(std::move(app));
  return *producers_.back();
}

void Network::set_forwarder_observer(ndn::ForwarderObserver* observer) {
  for (auto& f : forwarders_) f->set_observer(observer);
}

void Network::set_consumer_observer(transport::ConsumerObserver* observer) {
  for (auto& c : consumers_) c->set_observer(observer);
}

ndn::ForwarderStats Network::forwarder_totals() const {
  ndn::ForwarderStats t;
  for (const auto& f : forwarders_) {
    const auto& s = f->stats();
    t.interests_in += s.interests_in;
    t.interests_unicast += s.interests_unicast;
    t.interests_broadcast += s.interests_broadcast;
    t.interests_to_app += s.interests_to_app;
    t.loops_dropped += s.loops_dropped;
    t.pit_aggregations += s.pit_aggregations;
    t.pit_suppressed += s.pit_suppressed;
    t.pit_expired += s.pit_expired;
    t.cache_hits += s.cache_hits;
    t.data_in += s.data_in;
    t.data_unicast += s.data_unicast;
    t.data_broadcasts += s.data_broadcasts;
    t.data_unsolicited += s.data_unsolicited;
    t.cm_marked += s.cm_marked;
    t.malformed += s.malformed;
    t.link_rejects += s.link_rejects;
  }
  return t;
}

std::vector<Vec2> initial_positions(const ScenarioConfig& config, RandomStream& jitter) {
  std::vector<Vec2> pos;
  if (config.topology == Topology::kGrid) {
    pos = grid_topology(config.nodes / config.grid_cols, config.grid_cols, config.spacing);
  } else {
    pos = linear_topology(config.nodes, config.spacing);
  }
  if (config.placement_jitter > 0.0) {
    const double j = config.placement_jitter;
    for (auto& p : pos) {
      p.x = std::clamp(p.x + jitter.uniform(-j, j), 0.0, config.arena_width);
      p.y = std::clamp(p.y + jitter.uniform(-j, j), 0.0, config.arena_height);
    }
  }
  return pos;
}

ndn::ForwarderParams forwarder_params(const ScenarioConfig& config) {
  ndn::ForwarderParams p;
  p.cs_capacity = config.cs;
  p.suppression_interval = Time::from_seconds(config.suppression);
  p.cm_fraction = config.cm_fraction;
  p.fib_rto = {config.initial_rto, config.min_rto, config.max_rto};
  return p;
}

transport::ConsumerConfig consumer_config(const ScenarioConfig& config, const ndn::Name& prefix) {
  transport::ConsumerConfig c;
  c.prefix = prefix;
  c.cwl_enabled = config.cwl;
  c.dil_enabled = config.dil;
  c.gamma = config.gamma;
  c.fixed_lifetime = Time::from_seconds(config.lifetime);
  c.rto = {config.initial_rto, config.min_rto, config.max_rto};
  return c;
}

namespace {

void build_wireless(Network& net, Simulator& sim, const ScenarioConfig& config) {
  const std::vector<Vec2> pos = initial_positions(config, sim.stream("placement.jitter"));
  const Arena arena{config.arena_width, config.arena_height, config.tx_radius};
  if (config.speed > 0.0) {
    auto mobility = std::make_unique<Mobility>(sim, pos, arena, config.speed);
    auto reach = std::make_unique<mac::GeometricReachability>(*mobility, config.tx_radius);
    net.set_mobility(std::move(mobility));
    net.set_reachability(std::move(reach));
  } else {
    net.set_reachability(std::make_unique<mac::StaticReachability>(neighbors(pos, config.tx_radius)));
  }
  mac::WirelessParams wp;
  wp.bitrate_bps = config.wireless_bitrate;
  wp.queue_capacity = config.queue;
  wp.unicast_retries = config.mac_retries;
  wp.p_frame_error = config.p_frame_error;
  net.install(std::make_unique<mac::WirelessChannel>(sim, *net.reachability(), wp),
              forwarder_params(config));
}

void build_wired(Network& net, Simulator& sim, const ScenarioConfig& config) {
  auto wired = std::make_unique<mac::WiredNetwork>(sim, config.nodes, config.queue);
  const mac::WiredLink plain{config.wired_bitrate, Time::from_seconds(config.wired_delay), 0.0};
  const NodeId last = config.nodes - 1;
  const NodeId middle = (config.nodes - 2) / 2;
  for (NodeId i = 0; i < last; ++i) {
    mac::WiredLink link = plain;
    if (config.bottleneck && i == middle) {
      link.bitrate_bps = config.bottleneck_bitrate;
      link.prop_delay = Time::from_seconds(config.bottleneck_delay);
    }
    wired->connect(i, i + 1, link);
  }
  if (config.p_byte_error > 0.0) {
    // Lossy receiving interfaces at both end hosts.
    mac::WiredLink into_consumer = wired->direction(1, 0);
    into_consumer.p_byte_error = config.p_byte_error;
    wired->set_direction(1, 0, into_consumer);
    mac::WiredLink into_producer = wired->direction(last - 1, last);
    into_producer.p_byte_error = config.p_byte_error;
    wired->set_direction(last - 1, last, into_producer);
  }
  net.install(std::move(wired), forwarder_params(config));
}

}  // namespace

std::unique_ptr<Network> build_network(Simulator& sim, const ScenarioConfig& config,
                                       const TrafficPlan& plan) {
  config.validate();
  auto net = std::make_unique<Network>(sim);
  if (config.topology == Topology::kLinearWired) {
    build_wired(*net, sim, config);
  } else {
    build_wireless(*net, sim, config);
  }
  for (const auto& p : plan.producers) net->add_producer(p.node, p.prefix, config.payload);
  for (const auto& c : plan.consumers) net->add_consumer(c.node, consumer_config(config, c.prefix));
  return net;
}

}  // namespace dcsim::experiment
