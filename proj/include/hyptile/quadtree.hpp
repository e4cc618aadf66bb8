#pragma once

#include "hyptile/tiling.hpp"

#include <optional>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace hyptile {

enum class NodeKind { Ordinary, Compressed, Leaf };

const char* to_string(NodeKind k);

struct QuadNode {
  CellId cell;
  NodeKind kind = NodeKind::Leaf;
  int parent = -1;
  std::vector<int> children;  // all 2^(D-1) for Ordinary, one for Compressed
  std::optional<std::size_t> stored_point;  // input index whose cell equals `cell`
  std::optional<std::size_t> highest;       // h: highest input point at or below the node
  std::optional<std::size_t> nearest;       // n2, filled by the AVD
};

struct CellQuery {
  std::optional<int> largest_contained;
  std::optional<int> smallest_containing;
};

/// Compressed quadtree over boxes inside the root cell [0,1]^(D-1) x [1,2].
///
/// Explicit boxes are the distinct input cells plus inserted boxes. A node
/// with box C and explicit boxes S inside it is a Leaf if S is empty or {C},
/// Ordinary if C is in S or two children of C meet S, and Compressed
/// otherwise, with the smallest box containing S as its only child. Nodes
/// are numbered in preorder; children follow the order of children().
class QuadTree {
 public:
  QuadTree() = default;
  static QuadTree build(const std::vector<CellId>& points);

  int dim() const { return dim_; }
  const std::vector<CellId>& points() const { return points_; }
  /// Index of the first input equal to points()[i].
  std::size_t canonical(std::size_t i) const { return canonical_[i]; }
  /// Distinct input cells in input order, then inserted boxes in insertion order.
  const std::vector<CellId>& explicit_boxes() const { return explicit_; }
  const std::vector<QuadNode>& nodes() const { return nodes_; }
  const QuadNode& node(int i) const { return nodes_[static_cast<std::size_t>(i)]; }
  std::size_t size() const { return nodes_.size(); }
  int root() const { return 0; }

  std::optional<int> find(const CellId& c) const;
  /// Leaf or compressed node whose box or region contains x, x in [0,1)^(D-1).
  int locate(const std::vector<double>& x) const;
  CellQuery cell_query(const CellId& box) const;
  /// Deepest node whose box contains `box`; requires box inside the root shadow.
  int deepest_containing(const CellId& box) const;
  /// Highest input point whose cell lies in `box`, if any.
  std::optional<std::size_t> highest_within(const CellId& box) const;

  void insert_box(const CellId& box);
  void insert_boxes(const std::vector<CellId>& boxes);

  /// Nonempty means the node's box contains an input point.
  bool nonempty(int i) const { return node(i).highest.has_value(); }
  bool in_root_shadow(const CellId& box) const;

  void set_nearest(int i, std::optional<std::size_t> p) { nodes_[static_cast<std::size_t>(i)].nearest = p; }

  /// Structural problems found by recomputation; empty when the tree is valid.
  std::vector<std::string> validate() const;

 private:
  void rebuild();
  int build_node(const CellId& cell, std::vector<CellId> boxes, int parent);
  std::size_t better_highest(std::size_t a, std::size_t b) const;

  int dim_ = 2;
  std::vector<CellId> points_;
  std::vector<std::size_t> canonical_;
  std::unordered_map<CellId, std::size_t, CellHash> point_index_;
  std::vector<CellId> explicit_;
  std::unordered_set<CellId, CellHash> explicit_set_;
  std::vector<QuadNode> nodes_;
  std::unordered_map<CellId, int, CellHash> by_cell_;
};

/// Smallest quadtree box containing every box in the list.
CellId lowest_common_box(const std::vector<CellId>& boxes);
CellId lowest_common_box(const CellId& a, const CellId& b);

}  // namespace hyptile
