#pragma once

#include <cstddef>
#include <utility>
#include <vector>

namespace hyptile {

/// Upward forest plus shortcut edges. Every edge points from a vertex to one
/// of its proper ancestors.
struct ShortcutSet {
  std::vector<int> forest;  // parent id, -1 for roots
  int k = 1;
  std::vector<std::pair<int, int>> extra_edges;  // (descendant, ancestor), tree edges excluded
};

/// Adds edges so that every descendant reaches every ancestor in at most k hops.
///   k = 1: full closure.
///   k = 2: centroid recursion, O(n log n) edges.
///   k >= 3: mark a sparse LCA-closed vertex set, route through it, and
///           recurse with k - 2 on the marked forest and with k on the rest.
ShortcutSet shortcut_forest(const std::vector<int>& forest, int k);

/// Largest hop count needed over all ancestor pairs, using tree and extra
/// edges; 0 for a forest without ancestor pairs.
int max_hops(const ShortcutSet& s);

/// Whether every extra edge goes from a vertex to a proper ancestor.
bool edges_point_upward(const ShortcutSet& s);

/// Number of ancestor pairs, i.e. the size of the transitive closure.
std::size_t ancestor_pairs(const std::vector<int>& forest);

}  // namespace hyptile
