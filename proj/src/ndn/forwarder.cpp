#include "dcsim/ndn/forwarder.hpp"

#include <algorithm>
#include <cmath>

namespace dcsim::ndn {

bool PitEntry::seen(std::uint32_t nonce) const {
  return std::find(seen_nonces.begin(), seen_nonces.end(), nonce) != seen_nonces.end();
}

std::size_t PitEntry::network_downstreams() const {
  return static_cast<std::size_t>(std::count_if(downstreams.begin(), downstreams.end(),
                                                [](const Downstream& d) { return d.face != kLocalFace; }));
}

bool PitEntry::has_local_downstream() const {
  return std::any_of(downstreams.begin(), downstreams.end(),
                     [](const Downstream& d) { return d.face == kLocalFace; });
}

PitEntry* Pit::find(const Name& name) {
  auto it = entries_.find(name);
  return it == entries_.end() ? nullptr : &it->second;
}

const PitEntry* Pit::find(const Name& name) const {
  auto it = entries_.find(name);
  return it == entries_.end() ? nullptr : &it->second;
}

PitEntry& Pit::create(const Name& name, Time now) {
  PitEntry& e = entries_[name];
  e.name = name;
  e.created_at = now;
  return e;
}

std::size_t congestion_threshold(std::size_t capacity, double fraction) {
  return static_cast<std::size_t>(std::ceil(static_cast<double>(capacity) * fraction - 1e-12));
}

void mark_congestion(Data& data, std::size_t queue_len, std::size_t capacity, double fraction) {
  if (queue_len >= congestion_threshold(capacity, fraction)) data.congestion_mark = true;
}

Forwarder::Forwarder(NodeId id, Simulator& sim, mac::LinkLayer& link, ForwarderParams params)
    : id_(id), sim_(sim), link_(link), params_(params), cs_(params.cs_capacity),
      fib_(params.fib_rto) {}

std::size_t Forwarder::cm_threshold() const {
  return congestion_threshold(link_.queue_capacity(), params_.cm_fraction);
}

LocalApp* Forwarder::producer_for(const Name& name) const {
  for (LocalApp* app : apps_) {
    if (app->serves(name)) return app;
  }
  return nullptr;
}

void Forwarder::on_interest(NodeId from, const Interest& interest) {
  ++stats_.interests_in;
  if (interest.name.empty() || interest.lifetime <= Time::zero()) {
    ++stats_.malformed;
    return;
  }
  const Time now = sim_.now();

  if (const Data* cached = cs_.find(interest.name)) {
    ++stats_.cache_hits;
    Data reply = *cached;
    reply.hop_count = 0;
    reply.congestion_mark = false;
    if (from == kLocalFace) {
      deliver_data_to_apps(reply);
    } else {
      send_data(reply, from, 1);
    }
    return;
  }

  if (PitEntry* entry = pit_.find(interest.name)) {
    if (entry->seen(interest.nonce)) {
      ++stats_.loops_dropped;
      return;
    }
    ++stats_.pit_aggregations;
    entry->downstreams.push_back({from, interest.nonce});
    entry->seen_nonces.push_back(interest.nonce);
    ++entry->pit_count;
    const Time expiry = std::max(entry->expiry, now + interest.lifetime);
    if (expiry != entry->expiry) {
      entry->expiry = expiry;
      schedule_expiry(*entry);
    }
    if (now - entry->forwarded_at < params_.suppression_interval) {
      ++stats_.pit_suppressed;
      if (observer_) observer_->pit_changed(id_, *entry);
      return;
    }
    forward_interest(*entry, from, interest);
    if (observer_) observer_->pit_changed(id_, *entry);
    return;
  }

  if (is_dead_nonce(interest.name, interest.nonce)) {
    ++stats_.loops_dropped;
    return;
  }

  PitEntry& entry = pit_.create(interest.name, now);
  entry.downstreams.push_back({from, interest.nonce});
  entry.seen_nonces.push_back(interest.nonce);
  entry.pit_count = 1;
  entry.expiry = now + interest.lifetime;
  schedule_expiry(entry);
  forward_interest(entry, from, interest);
  if (observer_) observer_->pit_changed(id_, entry);
}

void Forwarder::forward_interest(PitEntry& entry, NodeId from, const Interest& interest) {
  entry.forwarded_at = sim_.now();
  if (LocalApp* producer = producer_for(interest.name)) {
    ++stats_.interests_to_app;
    deliver_interest_to_app(producer, interest);
    return;
  }
  Interest out = interest;
  ++out.hop_count;
  const FibEntry* route = fib_.lookup(interest.name, sim_.now());
  // A route pointing back where the Interest came from is useless; rediscover.
  if (route && route->nexthop != from) {
    ++stats_.interests_unicast;
    if (observer_) observer_->interest_sent(id_, out, route->nexthop, route);
    if (!link_.send(id_, std::move(out), route->nexthop)) ++stats_.link_rejects;
    return;
  }
  ++stats_.interests_broadcast;
  if (observer_) observer_->interest_sent(id_, out, mac::kBroadcast, nullptr);
  if (!link_.send(id_, std::move(out), mac::kBroadcast)) ++stats_.link_rejects;
}

void Forwarder::on_data(NodeId from, const Data& data) {
  ++stats_.data_in;
  const Time now = sim_.now();
  PitEntry* entry = pit_.find(data.name);

  if (from != kLocalFace && entry && data.name.size() > 1) {
    const double sample = (now - entry->forwarded_at).seconds();
    fib_.learn(data.name.parent(), from, sample > 0.0 ? std::optional(sample) : std::nullopt, now);
  }

  if (cs_.capacity() > 0) {
    Data stored = data;
    stored.hop_count = 0;
    stored.congestion_mark = false;
    cs_.insert(stored);
    if (observer_) observer_->cs_changed(id_, cs_);
  }

  if (!entry) {
    ++stats_.data_unsolicited;
    for (LocalApp* app : apps_) {
      sim_.schedule_in(Time::zero(), [app, data] { app->on_unsolicited_data(data); });
    }
    return;
  }

  const PitEntry satisfied = std::move(*entry);
  sim_.cancel(satisfied.expiry_event);
  pit_.erase(data.name);
  bury_nonces(satisfied);
  if (observer_) observer_->pit_removed(id_, satisfied, false);

  if (satisfied.has_local_downstream()) deliver_data_to_apps(data);
  const std::size_t records = satisfied.network_downstreams();
  if (records == 1) {
    for (const auto& d : satisfied.downstreams) {
      if (d.face != kLocalFace) send_data(data, d.face, 1);
    }
  } else if (records >= 2) {
    send_data(data, mac::kBroadcast, records);
  }
}

void Forwarder::send_data(const Data& data, NodeId dst, std::size_t records) {
  Data out = data;
  ++out.hop_count;
  const bool was_marked = out.congestion_mark;
  mark_congestion(out, link_.queue_length(id_, dst), link_.queue_capacity(), params_.cm_fraction);
  if (out.congestion_mark && !was_marked) ++stats_.cm_marked;
  if (dst == mac::kBroadcast) {
    ++stats_.data_broadcasts;
  } else {
    ++stats_.data_unicast;
  }
  if (observer_) observer_->data_sent(id_, out, dst, records);
  if (!link_.send(id_, std::move(out), dst)) ++stats_.link_rejects;
}

void Forwarder::deliver_interest_to_app(LocalApp* app, const Interest& interest) {
  sim_.schedule_in(Time::zero(), [app, interest] { app->on_interest(interest); });
}

void Forwarder::deliver_data_to_apps(const Data& data) {
  for (LocalApp* app : apps_) {
    sim_.schedule_in(Time::zero(), [app, data] { app->on_data(data); });
  }
}

void Forwarder::schedule_expiry(PitEntry& entry) {
  if (entry.expiry_event != kNoEvent) sim_.cancel(entry.expiry_event);
  entry.expiry_event = sim_.schedule_at(entry.expiry, [this, name = entry.name] { expire(name); });
}

void Forwarder::expire(const Name& name) {
  PitEntry* entry = pit_.find(name);
  if (!entry) return;
  ++stats_.pit_expired;
  const PitEntry gone = std::move(*entry);
  pit_.erase(name);
  bury_nonces(gone);
  if (observer_) observer_->pit_removed(id_, gone, true);
}

namespace {

std::uint64_t nonce_key(const Name& name, std::uint32_t nonce) {
  std::uint64_t z = NameHash{}(name) ^ (std::uint64_t{nonce} * 0x9E3779B97F4A7C15ull);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

}  // namespace

void Forwarder::bury_nonces(const PitEntry& entry) {
  const Time expires = sim_.now() + params_.dead_nonce_lifetime;
  for (const std::uint32_t nonce : entry.seen_nonces) {
    const std::uint64_t key = nonce_key(entry.name, nonce);
    dead_nonces_[key] = expires;
    dead_order_.push_back({expires, key});
  }
}

bool Forwarder::is_dead_nonce(const Name& name, std::uint32_t nonce) {
  const Time now = sim_.now();
  while (!dead_order_.empty() && dead_order_.front().expires <= now) {
    auto it = dead_nonces_.find(dead_order_.front().key);
    if (it != dead_nonces_.end() && it->second <= now) dead_nonces_.erase(it);
    dead_order_.pop_front();
  }
  return dead_nonces_.count(nonce_key(name, nonce)) > 0;
}

}  // namespace dcsim::ndn
