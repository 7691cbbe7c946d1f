#include "dcsim/transport/rtt_estimator.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dcsim::transport {

RttEstimator::RttEstimator(RtoParams params) : params_(params) {
  if (!(params_.min_rto > 0.0) || params_.min_rto > params_.max_rto) {
    throw std::invalid_argument("RTO bounds must satisfy 0 < min_rto <= max_rto");
  }
  rto_ = clamp(params_.initial_rto);
}

double RttEstimator::clamp(double rto) const {
  return std::clamp(rto, params_.min_rto, params_.max_rto);
}

void RttEstimator::add_sample(double rtt) {
  if (!(rtt > 0.0) || !std::isfinite(rtt)) throw std::invalid_argument("RTT sample must be positive");
  if (!srtt_) {
    srtt_ = rtt;
    rttvar_ = rtt / 2.0;
  } else {
    rttvar_ = (1.0 - kBeta) * rttvar_ + kBeta * std::abs(*srtt_ - rtt);
    srtt_ = (1.0 - kAlpha) * *srtt_ + kAlpha * rtt;
  }
  rto_ = clamp(*srtt_ + kK * rttvar_);
  ++samples_;
}

void RttEstimator::backoff() { rto_ = std::min(2.0 * rto_, params_.max_rto); }

}  // namespace dcsim::transport
