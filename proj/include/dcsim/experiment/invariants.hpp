#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <unordered_set>
#include <vector>

#include "dcsim/core/simulator.hpp"
#include "dcsim/ndn/forwarder.hpp"
#include "dcsim/transport/consumer.hpp"

namespace dcsim::experiment {

// Names of the properties checked by InvariantChecker.
inline constexpr const char* kLoopFreedom = "loop_freedom";
inline constexpr const char* kPitAccounting = "pit_accounting";
inline constexpr const char* kCsCapacity = "cs_capacity";
inline constexpr const char* kFibValidity = "fib_validity";
inline constexpr const char* kOutstandingConservation = "outstanding_conservation";
inline constexpr const char* kCwndFloor = "cwnd_floor";
inline constexpr const char* kCwlClamp = "cwl_clamp";
inline constexpr const char* kSingleDecrease = "single_decrease_per_window";
inline constexpr const char* kRtoBounds = "rto_bounds";

const std::vector<std::string>& invariant_names();

// Runtime assertions over forwarder and consumer activity. Each property is
// evaluated at every relevant hook; failures are counted and the first few
// are kept with a description.
class InvariantChecker final : public ndn::ForwarderObserver, public transport::ConsumerObserver {
 public:
  explicit InvariantChecker(const Simulator& sim, std::size_t keep_messages = 20);

  void interest_sent(NodeId node, const ndn::Interest& interest, NodeId dst,
                     const ndn::FibEntry* via) override;
  void pit_changed(NodeId node, const ndn::PitEntry& entry) override;
  void pit_removed(NodeId node, const ndn::PitEntry& entry, bool expired) override;
  void cs_changed(NodeId node, const ndn::ContentStore& cs) override;
  void consumer_event(const transport::ConsumerApp& app, transport::ConsumerEvent event,
                      std::uint64_t seq, const ndn::Data* data) override;

  std::uint64_t checks(const std::string& name) const;
  std::uint64_t violations(const std::string& name) const;
  std::uint64_t total_violations() const;
  const std::vector<std::string>& messages() const { return messages_; }

 private:
  void check(const char* name, bool ok, const std::string& detail);

  const Simulator& sim_;
  std::size_t keep_;
  std::map<std::string, std::uint64_t> checks_;
  std::map<std::string, std::uint64_t> violations_;
  std::vector<std::string> messages_;
  std::unordered_set<std::uint64_t> forwarded_;
  std::map<std::size_t, std::optional<std::uint64_t>> recovery_;
};

}  // namespace dcsim::experiment
