#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace dcsim {

using NodeId = std::uint32_t;

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Vec2&, const Vec2&) = default;
};

inline double distance(Vec2 a, Vec2 b) { return std::hypot(a.x - b.x, a.y - b.y); }

struct Arena {
  double width = 1500.0;
  double height = 1000.0;
  // 250 m transmission diameter.
  double tx_radius = 125.0;

  bool contains(Vec2 p) const {
    return p.x >= 0.0 && p.x <= width && p.y >= 0.0 && p.y <= height;
  }
};

// Symmetric adjacency: adjacency[i] lists the neighbours of i in ascending id.
using Adjacency = std::vector<std::vector<NodeId>>;

// Node (r, c) sits at (c * spacing, r * spacing); ids run row-major.
std::vector<Vec2> grid_topology(std::size_t rows, std::size_t cols, double spacing);

// Nodes on the x axis, `spacing` apart.
std::vector<Vec2> linear_topology(std::size_t n, double spacing);

// Unit-disk graph: i ~ j iff distance(i, j) <= tx_radius.
Adjacency neighbors(const std::vector<Vec2>& positions, double tx_radius);

std::size_t edge_count(const Adjacency& adjacency);

}  // namespace dcsim
