#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "dcsim/core/simulator.hpp"
#include "dcsim/ndn/forwarder.hpp"
#include "dcsim/transport/congestion.hpp"
#include "dcsim/transport/rtt_estimator.hpp"

namespace dcsim::transport {

struct ConsumerConfig {
  ndn::Name prefix;
  bool cwl_enabled = false;
  bool dil_enabled = false;
  // Timeout multiplier under dynamic Interest lifetime; must exceed 1.
  double gamma = 2.0;
  Time fixed_lifetime = Time::from_ms(2000);
  RtoParams rto;
  // 0 requests an unbounded ascending sequence.
  std::uint64_t sequence_limit = 0;
};

// Lifetime stamped on the next Interest: the current RTO under dynamic
// lifetime, the fixed lifetime otherwise.
Time interest_lifetime(const ConsumerConfig& config, const RttEstimator& rtt);

// Application timeout for an Interest sent at `sent_at`: RTO * gamma under
// dynamic lifetime, plain RTO otherwise.
Time timeout_deadline(const ConsumerConfig& config, const RttEstimator& rtt, Time sent_at);

struct OutstandingInterest {
  std::uint64_t seq = 0;
  Time sent_at;
  std::uint32_t nonce = 0;
  bool is_retransmission = false;
  Time deadline;
  std::uint32_t retries = 0;
  EventId timeout_event = kNoEvent;
};

struct ConsumerStats {
  std::uint64_t interests_sent = 0;  // distinct sequences
  std::uint64_t retransmissions = 0;
  std::uint64_t timeouts = 0;
  std::uint64_t unique_data = 0;
  std::uint64_t duplicates = 0;
  std::uint64_t bytes = 0;
  std::uint64_t decreases = 0;
  std::uint64_t congestion_marks = 0;
  std::uint64_t rtt_samples = 0;
  double rtt_sum = 0.0;
  std::uint64_t hop_sum = 0;
};

enum class ConsumerEvent { kSend, kRetransmit, kData, kDuplicate, kTimeout, kDecrease };

const char* to_string(ConsumerEvent event);

class ConsumerApp;

class ConsumerObserver {
 public:
  virtual ~ConsumerObserver() = default;
  virtual void consumer_event(const ConsumerApp& app, ConsumerEvent event, std::uint64_t seq,
                              const ndn::Data* data) = 0;
};

// Adaptive-rate consumer: AIMD window over Interests with conservative window
// adaptation, optional hop-count window limit and dynamic Interest lifetime.
// Data is accepted out of order; each sequence counts once.
class ConsumerApp final : public ndn::LocalApp {
 public:
  ConsumerApp(std::size_t index, Simulator& sim, ndn::Forwarder& forwarder, ConsumerConfig config);

  void start(Time at);
  void set_observer(ConsumerObserver* observer) { observer_ = observer; }

  void on_data(const ndn::Data& data) override;
  void on_unsolicited_data(const ndn::Data& data) override;

  std::size_t index() const { return index_; }
  NodeId node() const { return forwarder_.id(); }
  const ConsumerConfig& config() const { return config_; }
  const CongestionState& window() const { return window_; }
  const RttEstimator& rtt() const { return rtt_; }
  const ConsumerStats& stats() const { return stats_; }
  std::size_t outstanding() const { return outstanding_.size(); }
  const std::map<std::uint64_t, OutstandingInterest>& outstanding_interests() const {
    return outstanding_;
  }
  std::uint64_t next_seq() const { return next_seq_; }
  std::optional<std::uint64_t> highest_sent() const;
  bool satisfied(std::uint64_t seq) const { return seq < satisfied_.size() && satisfied_[seq]; }
  std::uint64_t satisfied_count() const { return stats_.unique_data; }

 private:
  void fill_window();
  void send(std::uint64_t seq, bool retransmission);
  void on_timeout(std::uint64_t seq);
  void congestion_signal(std::uint64_t seq);
  void notify(ConsumerEvent event, std::uint64_t seq, const ndn::Data* data = nullptr);

  std::size_t index_;
  Simulator& sim_;
  ndn::Forwarder& forwarder_;
  ConsumerConfig config_;
  RandomStream& nonce_rand_;
  CongestionState window_;
  RttEstimator rtt_;
  std::map<std::uint64_t, OutstandingInterest> outstanding_;
  std::vector<bool> satisfied_;
  std::uint64_t next_seq_ = 0;
  ConsumerStats stats_;
  ConsumerObserver* observer_ = nullptr;
};

// Producer answer for an Interest, or nothing if the name is outside `prefix`.
std::optional<ndn::Data> producer_on_interest(const ndn::Name& prefix, std::uint32_t payload,
                                              const ndn::Interest& interest);

class ProducerApp final : public ndn::LocalApp {
 public:
  ProducerApp(ndn::Forwarder& forwarder, ndn::Name prefix, std::uint32_t payload)
      : forwarder_(forwarder), prefix_(std::move(prefix)), payload_(payload) {}

  bool serves(const ndn::Name& name) const override { return prefix_.is_prefix_of(name); }
  void on_interest(const ndn::Interest& interest) override;

  NodeId node() const { return forwarder_.id(); }
  const ndn::Name& prefix() const { return prefix_; }
  std::uint64_t served() const { return served_; }

 private:
  ndn::Forwarder& forwarder_;
  ndn::Name prefix_;
  std::uint32_t payload_;
  std::uint64_t served_ = 0;
};

}  // namespace dcsim::transport
