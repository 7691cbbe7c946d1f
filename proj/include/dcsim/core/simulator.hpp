#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>

#include "dcsim/core/event_queue.hpp"
#include "dcsim/core/random.hpp"
#include "dcsim/core/time.hpp"

namespace dcsim {

// Single-threaded discrete-event engine: a virtual clock, the pending event
// queue and the named random streams of one simulation run.
class Simulator {
 public:
  explicit Simulator(std::uint64_t root_seed) : root_seed_(root_seed) {}
  Simulator(const Simulator&) = delete;
  Simulator& operator=(const Simulator&) = delete;

  Time now() const { return now_; }
  std::uint64_t root_seed() const { return root_seed_; }

  // Throws std::logic_error when `at` lies in the past.
  EventId schedule_at(Time at, EventQueue::Action action);
  EventId schedule_in(Time delay, EventQueue::Action action) {
    return schedule_at(now_ + delay, std::move(action));
  }
  bool cancel(EventId id) { return queue_.cancel(id); }
  bool pending(EventId id) const { return queue_.pending(id); }

  // Fires every event with time <= t_end in (time, insertion) order, then
  // leaves the clock at t_end.
  void run_until(Time t_end);
  // Stops run_until after the current event; the clock stays where it is.
  void stop() { stopped_ = true; }

  std::size_t pending_events() const { return queue_.size(); }
  std::uint64_t fired_events() const { return fired_; }

  // Returns the stream for `label`, creating it on first use. References stay
  // valid for the simulator's lifetime.
  RandomStream& stream(std::string_view label);

 private:
  std::uint64_t root_seed_;
  Time now_;
  EventQueue queue_;
  std::map<std::string, RandomStream, std::less<>> streams_;
  std::uint64_t fired_ = 0;
  bool stopped_ = false;
};

}  // namespace dcsim
