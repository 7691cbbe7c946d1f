#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <string_view>

namespace dcsim {

// Derives the 64-bit seed of a named substream. Stable across platforms:
// FNV-1a over the label, mixed with the root seed through splitmix64.
std::uint64_t derive_stream_seed(std::uint64_t root_seed, std::string_view label);

// A labelled pseudo-random stream. The engine is std::mt19937_64, whose output
// sequence is fixed by the standard; the conversions to doubles and bounded
// integers are done here so results do not depend on the standard library's
// distribution implementations.
class RandomStream {
 public:
  RandomStream(std::uint64_t root_seed, std::string label);

  const std::string& label() const { return label_; }

  std::uint64_t next_u64() { return engine_(); }
  std::uint32_t next_u32() { return static_cast<std::uint32_t>(engine_() >> 32); }

  // Uniform in [0, 1).
  double uniform();
  // Uniform in [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  // Uniform integer in [lo, hi], unbiased.
  std::uint64_t uniform_int(std::uint64_t lo, std::uint64_t hi);
  bool bernoulli(double p) { return p > 0.0 && uniform() < p; }

 private:
  std::string label_;
  std::mt19937_64 engine_;
};

}  // namespace dcsim
