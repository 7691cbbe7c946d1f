#pragma once

#include <map>
#include <optional>

#include "dcsim/core/time.hpp"
#include "dcsim/ndn/name.hpp"
#include "dcsim/topology/geometry.hpp"
#include "dcsim/transport/rtt_estimator.hpp"

namespace dcsim::ndn {

// Learned next hop for a producer prefix. The entry is usable only while
// now - last_confirmed < rtt.rto().
struct FibEntry {
  Name prefix;
  NodeId nexthop = 0;
  transport::RttEstimator rtt;
  Time last_confirmed;

  bool valid(Time now) const { return now - last_confirmed < rtt.rto_time(); }
};

class Fib {
 public:
  explicit Fib(transport::RtoParams rto = {}) : rto_(rto) {}

  // Longest-prefix match among valid entries.
  const FibEntry* lookup(const Name& name, Time now) const;
  // Records that Data under `prefix` arrived from `nexthop`. A different
  // next hop replaces the entry and its estimator.
  const FibEntry& learn(const Name& prefix, NodeId nexthop, std::optional<double> rtt_sample,
                        Time now);
  const FibEntry* find_exact(const Name& prefix) const;
  std::size_t size() const { return entries_.size(); }

 private:
  transport::RtoParams rto_;
  std::map<Name, FibEntry> entries_;
};

}  // namespace dcsim::ndn
