#include "dcsim/topology/geometry.hpp"

#include <algorithm>
#include <stdexcept>

namespace dcsim {

std::vector<Vec2> grid_topology(std::size_t rows, std::size_t cols, double spacing) {
  if (rows == 0 || cols == 0) throw std::invalid_argument("grid needs at least one row and column");
  if (!(spacing > 0.0)) throw std::invalid_argument("grid spacing must be positive");
  std::vector<Vec2> out;
  out.reserve(rows * cols);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      out.push_back({static_cast<double>(c) * spacing, static_cast<double>(r) * spacing});
    }
  }
  return out;
}

std::vector<Vec2> linear_topology(std::size_t n, double spacing) {
  if (n < 2) throw std::invalid_argument("a chain needs at least two nodes");
  if (!(spacing > 0.0)) throw std::invalid_argument("chain spacing must be positive");
  std::vector<Vec2> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back({static_cast<double>(i) * spacing, 0.0});
  return out;
}

Adjacency neighbors(const std::vector<Vec2>& positions, double tx_radius) {
  if (!(tx_radius > 0.0)) throw std::invalid_argument("transmission radius must be positive");
  Adjacency adj(positions.size());
  for (std::size_t i = 0; i < positions.size(); ++i) {
    for (std::size_t j = i + 1; j < positions.size(); ++j) {
      if (distance(positions[i], positions[j]) <= tx_radius) {
        adj[i].push_back(static_cast<NodeId>(j));
        adj[j].push_back(static_cast<NodeId>(i));
      }
    }
  }
  for (auto& list : adj) std::sort(list.begin(), list.end());
  return adj;
}

std::size_t edge_count(const Adjacency& adjacency) {
  std::size_t degree_sum = 0;
  for (const auto& list : adjacency) degree_sum += list.size();
  return degree_sum / 2;
}

}  // namespace dcsim
