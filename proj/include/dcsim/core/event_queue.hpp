#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <queue>
#include <unordered_map>
#include <vector>

#include "dcsim/core/time.hpp"

namespace dcsim {

using EventId = std::uint64_t;
inline constexpr EventId kNoEvent = 0;

// Pending events ordered by (time, insertion sequence). Cancellation is lazy:
// the heap entry stays behind but its action is gone, so it is skipped on pop.
class EventQueue {
 public:
  using Action = std::function<void()>;

  EventId push(Time at, Action action);
  // Returns false if the event already fired or was cancelled.
  bool cancel(EventId id);
  bool pending(EventId id) const { return actions_.contains(id); }

  bool empty() const { return actions_.empty(); }
  std::size_t size() const { return actions_.size(); }
  // Time of the earliest live event, if any.
  std::optional<Time> next_time();

  struct Fired {
    Time at;
    EventId id;
    Action action;
  };
  // Removes and returns the earliest live event. Precondition: !empty().
  Fired pop();

 private:
  struct Entry {
    Time at;
    EventId id;
    bool operator>(const Entry& o) const {
      return at != o.at ? at > o.at : id > o.id;
    }
  };
  void drop_dead();

  std::priority_queue<Entry, std::vector<Entry>, std::greater<Entry>> heap_;
  std::unordered_map<EventId, Action> actions_;
  EventId next_id_ = 1;
};

}  // namespace dcsim
