#pragma once

#include <optional>

#include "dcsim/core/time.hpp"

namespace dcsim::transport {

struct RtoParams {
  double initial_rto = 2.0;
  double min_rto = 0.2;
  double max_rto = 60.0;
};

// Smoothed RTT / RTT variance estimator with the standard retransmission
// timeout rule (alpha 1/8, beta 1/4, K = 4). Times are in seconds.
class RttEstimator {
 public:
  static constexpr double kAlpha = 0.125;
  static constexpr double kBeta = 0.25;
  static constexpr double kK = 4.0;

  explicit RttEstimator(RtoParams params = {});

  // Throws std::invalid_argument for non-positive samples. Callers apply
  // Karn's rule and never pass samples from retransmitted requests.
  void add_sample(double rtt);
  // Doubles the timeout after an expiry, capped at max_rto.
  void backoff();

  bool has_sample() const { return srtt_.has_value(); }
  std::optional<double> srtt() const { return srtt_; }
  double rttvar() const { return rttvar_; }
  double rto() const { return rto_; }
  Time rto_time() const { return Time::from_seconds(rto_); }
  const RtoParams& params() const { return params_; }
  std::uint64_t samples() const { return samples_; }

 private:
  double clamp(double rto) const;

  RtoParams params_;
  std::optional<double> srtt_;
  double rttvar_ = 0.0;
  double rto_;
  std::uint64_t samples_ = 0;
};

}  // namespace dcsim::transport
