#include "dcsim/ndn/fib.hpp"

namespace dcsim::ndn {

const FibEntry* Fib::lookup(const Name& name, Time now) const {
  for (std::size_t len = name.size(); len > 0; --len) {
    auto it = entries_.find(name.prefix(len));
    if (it != entries_.end() && it->second.valid(now)) return &it->second;
  }
  return nullptr;
}

const FibEntry& Fib::learn(const Name& prefix, NodeId nexthop, std::optional<double> rtt_sample,
                           Time now) {
  auto it = entries_.find(prefix);
  if (it == entries_.end() || it->second.nexthop != nexthop) {
    FibEntry fresh{prefix, nexthop, transport::RttEstimator(rto_), now};
    it = entries_.insert_or_assign(prefix, std::move(fresh)).first;
  }
  FibEntry& e = it->second;
  if (rtt_sample && *rtt_sample > 0.0) e.rtt.add_sample(*rtt_sample);
  e.last_confirmed = now;
  return e;
}

const FibEntry* Fib::find_exact(const Name& prefix) const {
  auto it = entries_.find(prefix);
  return it == entries_.end() ? nullptr : &it->second;
}

}  // namespace dcsim::ndn
