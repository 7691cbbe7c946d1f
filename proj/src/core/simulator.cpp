#include "dcsim/core/simulator.hpp"

#include <sstream>
#include <stdexcept>

namespace dcsim {

EventId Simulator::schedule_at(Time at, EventQueue::Action action) {
  if (at < now_) {
    std::ostringstream msg;
    msg << "cannot schedule at " << at << ", clock is at " << now_;
    throw std::logic_error(msg.str());
  }
  return queue_.push(at, std::move(action));
}

void Simulator::run_until(Time t_end) {
  if (t_end < now_) throw std::logic_error("run_until target is in the past");
  stopped_ = false;
  while (!stopped_) {
    auto next = queue_.next_time();
    if (!next || *next > t_end) break;
    auto fired = queue_.pop();
    now_ = fired.at;
    ++fired_;
    fired.action();
  }
  if (!stopped_) now_ = t_end;
}

RandomStream& Simulator::stream(std::string_view label) {
  auto it = streams_.find(label);
  if (it == streams_.end()) {
    it = streams_.emplace(std::string(label), RandomStream(root_seed_, std::string(label)))
             .first;
  }
  return it->second;
}

}  // namespace dcsim
