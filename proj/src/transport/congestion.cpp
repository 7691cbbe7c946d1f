#include "dcsim/transport/congestion.hpp"

#include <algorithm>

namespace dcsim::transport {

void window_increase(CongestionState& state) {
  if (state.cwnd < state.ssthresh) {
    state.cwnd += 1.0;
  } else {
    state.cwnd += 1.0 / state.cwnd;
  }
}

void window_decrease(CongestionState& state) {
  state.ssthresh = state.cwnd * state.beta;
  state.cwnd = std::max(state.ssthresh, 1.0);
}

bool cwa_admit(CongestionState& state, std::uint64_t seq, std::uint64_t highest_sent) {
  if (state.recovery_seq && seq <= *state.recovery_seq) return false;
  state.recovery_seq = highest_sent;
  return true;
}

std::uint32_t cwl_from_hops(std::uint32_t hop_count) {
  const std::uint32_t h = std::max<std::uint32_t>(hop_count, 1);
  if (h <= 2) return 2;
  if (h <= 4) return 1;
  if (h <= 6) return 2;
  if (h <= 10) return 3;
  if (h <= 13) return 4;
  if (h <= 15) return 5;
  return (h + 2) / 3;
}

void apply_cwl(CongestionState& state, std::uint32_t hop_count) {
  state.cwnd = std::min(state.cwnd, static_cast<double>(cwl_from_hops(hop_count)));
}

}  // namespace dcsim::transport
