#pragma once

#include "hyptile/hyperbolic.hpp"
#include "hyptile/quadtree.hpp"

#include <optional>
#include <vector>

namespace hyptile {

/// Cell centers of the points all lie in [1/4,1/2]^(D-1) at levels <= 0.
bool in_avd_box(const CellId& c);

/// T': the tree with every in-root horizontal neighbor of every nonempty
/// node box inserted. Compressed nodes contribute their child box too.
QuadTree refine(const QuadTree& t);

/// Compressed nodes of `base` whose region can hold a bridge end seen from
/// below the box `c` across its outer boundary.
std::vector<int> outer_shell_compressed(const QuadTree& base, const CellId& c);
/// Same across the boundary of `c1` from inside it.
std::vector<int> inner_shell_compressed(const QuadTree& base, const CellId& c1);

/// Fills QuadNode::nearest of the refined tree with n2 of each node box.
void annotate(QuadTree& refined, const QuadTree& base);

struct AvdIndex {
  QuadTree tree;  // T'
  std::vector<std::vector<std::size_t>> representatives;  // per node of T', sorted
  std::optional<NormalizeTransform> transform;            // set for continuous input
  std::size_t highest = 0;
  std::optional<std::size_t> highest_below_root;  // highest point whose cell is not the root
  std::size_t base_nodes = 0;                     // node count of T
  std::size_t max_adjacent_compressed = 0;        // over leaves of T'

  int dim() const { return tree.dim(); }
  std::size_t region_count() const { return tree.size(); }
};

AvdIndex build_avd(const std::vector<CellId>& points);
AvdIndex build_avd(const std::vector<HPoint>& points);

/// Node of T' whose Voronoi region contains q; q must lie in the root shadow.
int locate_region(const AvdIndex& ix, const CellId& q);
bool region_contains(const AvdIndex& ix, int node, const CellId& q);

struct AvdAnswer {
  std::size_t point = 0;
  long distance = 0;  // d2(q, point)
  int region = -1;    // -1 outside the root shadow
};

AvdAnswer query(const AvdIndex& ix, const CellId& q);
/// Answer for b(T(q)) where T is the stored transform (identity if none).
AvdAnswer query_hyperbolic(const AvdIndex& ix, const HPoint& q);

struct AvdStats {
  std::size_t points = 0;
  std::size_t base_nodes = 0;
  std::size_t regions = 0;
  std::size_t max_representatives = 0;
  double mean_representatives = 0;
  std::size_t max_adjacent_compressed = 0;
};

AvdStats avd_stats(const AvdIndex& ix);

}  // namespace hyptile
