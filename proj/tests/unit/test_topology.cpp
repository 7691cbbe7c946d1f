#include <cmath>
#include <set>

#include "doctest.h"
#include "dcsim/topology/geometry.hpp"
#include "dcsim/topology/mobility.hpp"

using namespace dcsim;

TEST_CASE("grid layout") {
  const auto g = grid_topology(5, 10, 100.0);
  REQUIRE(g.size() == 50);
  double max_x = 0.0;
  double max_y = 0.0;
  for (const auto& p : g) {
    max_x = std::max(max_x, p.x);
    max_y = std::max(max_y, p.y);
  }
  CHECK(max_x == 900.0);
  CHECK(max_y == 400.0);
  CHECK(g[13] == Vec2{300.0, 100.0});

  const auto one = grid_topology(1, 1, 100.0);
  REQUIRE(one.size() == 1);
  CHECK(one[0] == Vec2{0.0, 0.0});

  const auto sq = grid_topology(2, 2, 100.0);
  CHECK(distance(sq[0], sq[3]) == doctest::Approx(141.42).epsilon(1e-4));
}

TEST_CASE("linear chains") {
  const auto three = neighbors(linear_topology(3, 100.0), 125.0);
  CHECK(three[0] == std::vector<NodeId>{1});
  CHECK(three[1] == std::vector<NodeId>{0, 2});

  const auto two = neighbors(linear_topology(2, 100.0), 125.0);
  CHECK(two[0] == std::vector<NodeId>{1});
  CHECK(two[1] == std::vector<NodeId>{0});

  CHECK(edge_count(neighbors(linear_topology(10, 100.0), 125.0)) == 9);
}

TEST_CASE("unit-disk adjacency on the grid") {
  const auto adj = neighbors(grid_topology(5, 10, 100.0), 125.0);
  std::size_t max_degree = 0;
  for (NodeId i = 0; i < adj.size(); ++i) {
    max_degree = std::max(max_degree, adj[i].size());
    for (NodeId j : adj[i]) {
      const auto& back = adj[j];
      CHECK(std::find(back.begin(), back.end(), i) != back.end());
    }
  }
  CHECK(max_degree == 4);
  CHECK(edge_count(adj) == 85);
  CHECK(edge_count(neighbors(grid_topology(5, 10, 100.0), 50.0)) == 0);
}

TEST_CASE("stationary nodes never move") {
  Simulator sim(1);
  Mobility m(sim, grid_topology(5, 10, 100.0), Arena{}, 0.0);
  m.start();
  const auto before = m.snapshot();
  sim.run_until(Time::from_seconds(100));
  CHECK(m.snapshot() == before);
}

TEST_CASE("a free leg covers speed times duration") {
  RandomStream rand(5, "leg");
  const Arena arena{};
  NodeKinematics kin{{750.0, 500.0}, {0.0, 0.0}, Time::zero(), Time::max()};
  for (int leg = 0; leg < 20; ++leg) {
    const Time start = Time::from_seconds(5.0 * leg);
    kin = mobility_step(kin, start, 8.0, arena, rand);
    const Vec2 from = kin.position;
    const auto end = advance(kin, kin.leg_end, arena);
    if (arena.contains({from.x + kin.velocity.x * 5, from.y + kin.velocity.y * 5})) {
      CHECK(distance(from, end.position) == doctest::Approx(40.0).epsilon(1e-9));
    }
  }
}

TEST_CASE("reflection keeps nodes inside the arena") {
  const Arena arena{};
  NodeKinematics kin{{1495.0, 5.0}, {8.0, -8.0}, Time::zero(), Time::max()};
  const auto out = advance(kin, Time::from_seconds(5), arena);
  CHECK(arena.contains(out.position));
  CHECK(out.position.x == doctest::Approx(1465.0));
  CHECK(out.position.y == doctest::Approx(35.0));
  CHECK(out.velocity.x == -8.0);
  CHECK(out.velocity.y == 8.0);

  Simulator sim(9);
  Mobility m(sim, grid_topology(5, 10, 100.0), arena, 8.0);
  m.start();
  for (int step = 1; step <= 400; ++step) {
    sim.run_until(Time::from_ms(250 * step));
    for (const auto& p : m.snapshot()) REQUIRE(arena.contains(p));
  }
}
