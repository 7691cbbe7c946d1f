#include "dcsim/core/event_queue.hpp"

#include <stdexcept>

namespace dcsim {

EventId EventQueue::push(Time at, Action action) {
  const EventId id = next_id_++;
  heap_.push(Entry{at, id});
  actions_.emplace(id, std::move(action));
  return id;
}

bool EventQueue::cancel(EventId id) { return actions_.erase(id) > 0; }

void EventQueue::drop_dead() {
  while (!heap_.empty() && !actions_.contains(heap_.top().id)) heap_.pop();
}

std::optional<Time> EventQueue::next_time() {
  drop_dead();
  if (heap_.empty()) return std::nullopt;
  return heap_.top().at;
}

EventQueue::Fired EventQueue::pop() {
  drop_dead();
  if (heap_.empty()) throw std::logic_error("EventQueue::pop on empty queue");
  const Entry top = heap_.top();
  heap_.pop();
  auto it = actions_.find(top.id);
  Fired fired{top.at, top.id, std::move(it->second)};
  actions_.erase(it);
  return fired;
}

}  // namespace dcsim
