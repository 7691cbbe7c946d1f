#pragma once

#include <cstdint>
#include <limits>
#include <optional>

namespace dcsim::transport {

// Consumer-side AIMD window, counted in Interests.
struct CongestionState {
  double cwnd = 1.0;
  double ssthresh = std::numeric_limits<double>::infinity();
  double beta = 0.5;
  // Highest sequence outstanding when the last decrease was taken.
  std::optional<std::uint64_t> recovery_seq;
};

// Slow start below ssthresh, +1/cwnd otherwise.
void window_increase(CongestionState& state);
// ssthresh = cwnd * beta; cwnd = max(ssthresh, 1).
void window_decrease(CongestionState& state);

// Conservative window adaptation: a congestion signal for `seq` may shrink the
// window only if `seq` was sent after the previous decrease. On admission the
// recovery point moves to `highest_sent`.
bool cwa_admit(CongestionState& state, std::uint64_t seq, std::uint64_t highest_sent);

// Window limit from the Data's hop count (half the round-trip hop count).
// Beyond 15 hops the table continues as ceil(hops / 3).
std::uint32_t cwl_from_hops(std::uint32_t hop_count);

// cwnd = min(cwnd, cwl_from_hops(hop_count))
void apply_cwl(CongestionState& state, std::uint32_t hop_count);

}  // namespace dcsim::transport
