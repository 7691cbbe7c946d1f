#pragma once

#include <vector>

#include "dcsim/core/random.hpp"
#include "dcsim/core/simulator.hpp"
#include "dcsim/core/time.hpp"
#include "dcsim/topology/geometry.hpp"

namespace dcsim {

// Straight-line motion since `since`; positions between updates are obtained
// by advance(), which folds the trajectory back into the arena.
struct NodeKinematics {
  Vec2 position;
  Vec2 velocity;
  Time since;
  Time leg_end;
};

inline constexpr Time kDefaultLegDuration = Time::from_ms(5000);

// Moves `kin` forward to `t` with specular reflection on the arena walls.
// Reflection flips the velocity component that hit the wall.
NodeKinematics advance(const NodeKinematics& kin, Time t, const Arena& arena);

// Random-walk leg change at `now`: advance to `now`, then pick a heading
// uniform in [0, 2*pi) at constant `speed` for one leg.
NodeKinematics mobility_step(const NodeKinematics& kin, Time now, double speed,
                             const Arena& arena, RandomStream& rand,
                             Time leg_duration = kDefaultLegDuration);

// Random-walk 2D mobility for every node of a run. All nodes share one speed;
// speed 0 keeps the initial layout for the whole run.
class Mobility {
 public:
  Mobility(Simulator& sim, std::vector<Vec2> initial, Arena arena, double speed,
           Time leg_duration = kDefaultLegDuration);

  // Schedules the first leg of every node at the current time.
  void start();

  std::size_t size() const { return nodes_.size(); }
  const Arena& arena() const { return arena_; }
  double speed() const { return speed_; }
  Vec2 position(NodeId node) const;
  Vec2 position(NodeId node, Time t) const;
  const NodeKinematics& kinematics(NodeId node) const { return nodes_[node]; }
  std::vector<Vec2> snapshot() const;

 private:
  void next_leg(NodeId node);

  Simulator& sim_;
  Arena arena_;
  double speed_;
  Time leg_duration_;
  std::vector<NodeKinematics> nodes_;
};

}  // namespace dcsim
