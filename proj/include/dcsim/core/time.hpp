#pragma once

#include <cmath>
#include <compare>
#include <cstdint>
#include <limits>
#include <ostream>

namespace dcsim {

// Simulation time with microsecond resolution. Integer ticks keep event
// ordering exact across platforms.
class Time {
 public:
  constexpr Time() = default;

  static constexpr Time from_us(std::int64_t us) { return Time(us); }
  static constexpr Time from_ms(std::int64_t ms) { return Time(ms * 1000); }
  // Rounds to the nearest microsecond.
  static Time from_seconds(double s) {
    return Time(static_cast<std::int64_t>(std::llround(s * 1e6)));
  }
  static constexpr Time zero() { return Time(0); }
  static constexpr Time max() {
    return Time(std::numeric_limits<std::int64_t>::max());
  }

  constexpr std::int64_t us() const { return us_; }
  constexpr double seconds() const { return static_cast<double>(us_) * 1e-6; }

  constexpr auto operator<=>(const Time&) const = default;

  constexpr Time operator+(Time o) const { return Time(us_ + o.us_); }
  constexpr Time operator-(Time o) const { return Time(us_ - o.us_); }
  constexpr Time& operator+=(Time o) {
    us_ += o.us_;
    return *this;
  }
  constexpr Time& operator-=(Time o) {
    us_ -= o.us_;
    return *this;
  }
  constexpr Time operator*(std::int64_t k) const { return Time(us_ * k); }

 private:
  constexpr explicit Time(std::int64_t us) : us_(us) {}
  std::int64_t us_ = 0;
};

inline std::ostream& operator<<(std::ostream& os, Time t) {
  return os << t.seconds() << "s";
}

}  // namespace dcsim
