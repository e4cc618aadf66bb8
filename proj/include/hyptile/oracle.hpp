#pragma once

#include "hyptile/tiling.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace hyptile {

/// Finite piece of the cell graph: a level range and, per level, a
/// coordinate box (inclusive bounds per axis).
struct CellGraphWindow {
  int level_min = 0;
  int level_max = 0;
  std::vector<std::vector<std::pair<BigInt, BigInt>>> boxes;  // boxes[level - level_min][axis]

  bool contains(const CellId& c) const;
};

/// Window covering the ancestor chains of p and q from the lower level up to
/// two levels above their bridge, padded by `slack` cells per axis.
CellGraphWindow window_for(const CellId& p, const CellId& q, int slack = 4, int extra_levels = 2);

/// Breadth-first move count between p and q inside w.
long d1_bfs(const CellId& p, const CellId& q, const CellGraphWindow& w);

enum class Metric { D1, D2, DH };

/// argmin over points of the metric to q, smallest index on ties.
std::size_t nn_bruteforce(const std::vector<CellId>& points, const CellId& q, Metric metric);
std::size_t nn_bruteforce(const std::vector<HPoint>& points, const HPoint& q);

struct CellQueryAnswer {
  std::optional<std::size_t> largest_contained;
  std::optional<std::size_t> smallest_containing;
};

/// Linear scan over stored boxes: the highest-level box inside `box` and the
/// lowest-level box containing it.
CellQueryAnswer cell_query_scan(const std::vector<CellId>& stored, const CellId& box);

}  // namespace hyptile
