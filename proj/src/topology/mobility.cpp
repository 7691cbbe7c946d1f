#include "dcsim/topology/mobility.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace dcsim {
namespace {

// Position and direction sign of a point moving freely along an axis of
// length `extent` with mirrors at 0 and `extent`.
std::pair<double, double> fold(double x, double extent) {
  const double period = 2.0 * extent;
  double m = std::fmod(x, period);
  if (m < 0.0) m += period;
  if (m <= extent) return {m, 1.0};
  return {period - m, -1.0};
}

}  // namespace

NodeKinematics advance(const NodeKinematics& kin, Time t, const Arena& arena) {
  if (t < kin.since) throw std::logic_error("cannot advance kinematics backwards");
  NodeKinematics out = kin;
  out.since = t;
  if (kin.velocity.x == 0.0 && kin.velocity.y == 0.0) return out;
  const double dt = (t - kin.since).seconds();
  auto [x, sx] = fold(kin.position.x + kin.velocity.x * dt, arena.width);
  auto [y, sy] = fold(kin.position.y + kin.velocity.y * dt, arena.height);
  out.position = {x, y};
  out.velocity = {kin.velocity.x * sx, kin.velocity.y * sy};
  return out;
}

NodeKinematics mobility_step(const NodeKinematics& kin, Time now, double speed,
                             const Arena& arena, RandomStream& rand, Time leg_duration) {
  NodeKinematics out = advance(kin, now, arena);
  if (speed <= 0.0) {
    out.velocity = {0.0, 0.0};
  } else {
    const double heading = rand.uniform(0.0, 2.0 * std::numbers::pi);
    out.velocity = {speed * std::cos(heading), speed * std::sin(heading)};
  }
  out.leg_end = now + leg_duration;
  return out;
}

Mobility::Mobility(Simulator& sim, std::vector<Vec2> initial, Arena arena, double speed,
                   Time leg_duration)
    : sim_(sim), arena_(arena), speed_(speed), leg_duration_(leg_duration) {
  if (!(arena.width > 0.0 && arena.height > 0.0 && arena.tx_radius > 0.0)) {
    throw std::invalid_argument("arena dimensions and radius must be positive");
  }
  if (speed < 0.0) throw std::invalid_argument("speed must be non-negative");
  nodes_.reserve(initial.size());
  for (const auto& p : initial) {
    if (!arena.contains(p)) throw std::invalid_argument("initial position outside the arena");
    nodes_.push_back({p, {0.0, 0.0}, sim.now(), Time::max()});
  }
}

void Mobility::start() {
  if (speed_ <= 0.0) return;
  for (NodeId i = 0; i < nodes_.size(); ++i) next_leg(i);
}

void Mobility::next_leg(NodeId node) {
  auto& rand = sim_.stream("mobility.node" + std::to_string(node));
  nodes_[node] = mobility_step(nodes_[node], sim_.now(), speed_, arena_, rand, leg_duration_);
  sim_.schedule_at(nodes_[node].leg_end, [this, node] { next_leg(node); });
}

Vec2 Mobility::position(NodeId node) const { return position(node, sim_.now()); }

Vec2 Mobility::position(NodeId node, Time t) const {
  return advance(nodes_[node], t, arena_).position;
}

std::vector<Vec2> Mobility::snapshot() const {
  std::vector<Vec2> out;
  out.reserve(nodes_.size());
  for (NodeId i = 0; i < nodes_.size(); ++i) out.push_back(position(i));
  return out;
}

}  // namespace dcsim
