#include "dcsim/transport/consumer.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace dcsim::transport {

Time interest_lifetime(const ConsumerConfig& config, const RttEstimator& rtt) {
  return config.dil_enabled ? rtt.rto_time() : config.fixed_lifetime;
}

Time timeout_deadline(const ConsumerConfig& config, const RttEstimator& rtt, Time sent_at) {
  const double wait = config.dil_enabled ? rtt.rto() * config.gamma : rtt.rto();
  return sent_at + Time::from_seconds(wait);
}

const char* to_string(ConsumerEvent event) {
  switch (event) {
    case ConsumerEvent::kSend: return "send";
    case ConsumerEvent::kRetransmit: return "retransmit";
    case ConsumerEvent::kData: return "data";
    case ConsumerEvent::kDuplicate: return "duplicate";
    case ConsumerEvent::kTimeout: return "timeout";
    case ConsumerEvent::kDecrease: return "decrease";
  }
  return "?";
}

ConsumerApp::ConsumerApp(std::size_t index, Simulator& sim, ndn::Forwarder& forwarder,
                         ConsumerConfig config)
    : index_(index), sim_(sim), forwarder_(forwarder), config_(std::move(config)),
      nonce_rand_(sim.stream("app.consumer" + std::to_string(index) + ".nonce")),
      rtt_(config_.rto) {
  if (config_.dil_enabled && !(config_.gamma > 1.0)) {
    throw std::invalid_argument("dynamic Interest lifetime needs gamma > 1");
  }
  if (config_.fixed_lifetime <= Time::zero()) throw std::invalid_argument("lifetime must be positive");
}

void ConsumerApp::start(Time at) {
  sim_.schedule_at(at, [this] { fill_window(); });
}

std::optional<std::uint64_t> ConsumerApp::highest_sent() const {
  if (next_seq_ == 0) return std::nullopt;
  return next_seq_ - 1;
}

void ConsumerApp::notify(ConsumerEvent event, std::uint64_t seq, const ndn::Data* data) {
  if (observer_) observer_->consumer_event(*this, event, seq, data);
}

void ConsumerApp::fill_window() {
  const auto budget = static_cast<std::size_t>(std::floor(window_.cwnd));
  while (outstanding_.size() < budget &&
         (config_.sequence_limit == 0 || next_seq_ < config_.sequence_limit)) {
    send(next_seq_++, false);
  }
}

void ConsumerApp::send(std::uint64_t seq, bool retransmission) {
  const Time now = sim_.now();
  OutstandingInterest& out = outstanding_[seq];
  if (out.timeout_event != kNoEvent) sim_.cancel(out.timeout_event);
  out.seq = seq;
  out.sent_at = now;
  out.nonce = nonce_rand_.next_u32();
  out.is_retransmission = out.is_retransmission || retransmission;
  if (retransmission) ++out.retries;
  out.deadline = timeout_deadline(config_, rtt_, now);
  out.timeout_event = sim_.schedule_at(out.deadline, [this, seq] { on_timeout(seq); });

  if (retransmission) {
    ++stats_.retransmissions;
  } else {
    ++stats_.interests_sent;
    if (satisfied_.size() <= seq) satisfied_.resize(seq + 1, false);
  }

  ndn::Interest interest;
  interest.name = config_.prefix.append_sequence(seq);
  interest.nonce = out.nonce;
  interest.lifetime = interest_lifetime(config_, rtt_);
  notify(retransmission ? ConsumerEvent::kRetransmit : ConsumerEvent::kSend, seq);
  forwarder_.on_interest(ndn::kLocalFace, interest);
}

void ConsumerApp::congestion_signal(std::uint64_t seq) {
  if (cwa_admit(window_, seq, highest_sent().value_or(0))) {
    window_decrease(window_);
    ++stats_.decreases;
    notify(ConsumerEvent::kDecrease, seq);
  }
}

void ConsumerApp::on_timeout(std::uint64_t seq) {
  auto it = outstanding_.find(seq);
  if (it == outstanding_.end()) return;
  it->second.timeout_event = kNoEvent;
  ++stats_.timeouts;
  notify(ConsumerEvent::kTimeout, seq);
  congestion_signal(seq);
  rtt_.backoff();
  send(seq, true);
}

void ConsumerApp::on_data(const ndn::Data& data) {
  if (!config_.prefix.is_prefix_of(data.name) || data.name.size() != config_.prefix.size() + 1) {
    return;
  }
  const auto seq = data.name.sequence();
  if (!seq) return;
  if (satisfied(*seq)) {
    ++stats_.duplicates;
    notify(ConsumerEvent::kDuplicate, *seq, &data);
    return;
  }
  auto it = outstanding_.find(*seq);
  if (it == outstanding_.end()) return;  // never requested

  satisfied_[*seq] = true;
  ++stats_.unique_data;
  stats_.bytes += data.payload_size;
  stats_.hop_sum += data.hop_count;

  const OutstandingInterest record = it->second;
  sim_.cancel(record.timeout_event);
  outstanding_.erase(it);
  if (!record.is_retransmission) {
    const double sample = (sim_.now() - record.sent_at).seconds();
    if (sample > 0.0) {
      rtt_.add_sample(sample);
      ++stats_.rtt_samples;
      stats_.rtt_sum += sample;
    }
  }

  window_increase(window_);
  if (config_.cwl_enabled) apply_cwl(window_, data.hop_count);
  notify(ConsumerEvent::kData, *seq, &data);
  if (data.congestion_mark) {
    ++stats_.congestion_marks;
    congestion_signal(*seq);
  }
  fill_window();
}

void ConsumerApp::on_unsolicited_data(const ndn::Data& data) {
  if (!config_.prefix.is_prefix_of(data.name)) return;
  const auto seq = data.name.sequence();
  if (seq && satisfied(*seq)) {
    ++stats_.duplicates;
    notify(ConsumerEvent::kDuplicate, *seq, &data);
  }
}

std::optional<ndn::Data> producer_on_interest(const ndn::Name& prefix, std::uint32_t payload,
                                              const ndn::Interest& interest) {
  if (!prefix.is_prefix_of(interest.name)) return std::nullopt;
  ndn::Data data;
  data.name = interest.name;
  data.payload_size = payload;
  data.hop_count = 0;
  return data;
}

void ProducerApp::on_interest(const ndn::Interest& interest) {
  auto data = producer_on_interest(prefix_, payload_, interest);
  if (!data) return;
  ++served_;
  forwarder_.on_data(ndn::kLocalFace, *data);
}

}  // namespace dcsim::transport
