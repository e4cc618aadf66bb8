#include "hyptile/quadtree.hpp"

#include "hyptile/metrics.hpp"

#include <algorithm>

namespace hyptile {

const char* to_string(NodeKind k) {
  switch (k) {
    case NodeKind::Ordinary:
      return "ordinary";
    case NodeKind::Compressed:
      return "compressed";
    case NodeKind::Leaf:
      return "leaf";
  }
  return "?";
}

CellId lowest_common_box(const CellId& a, const CellId& b) {
  const int lev = std::max(a.level, b.level);
  const CellId x = ancestor_at(a, lev), y = ancestor_at(b, lev);
  return ancestor_at(x, lev + min_shift_within(x, y, 0));
}

CellId lowest_common_box(const std::vector<CellId>& boxes) {
  if (boxes.empty()) throw InvalidInput("lowest_common_box: empty list");
  CellId acc = boxes[0];
  for (std::size_t i = 1; i < boxes.size(); ++i)
    if (!is_ancestor_or_self(acc, boxes[i])) acc = lowest_common_box(acc, boxes[i]);
  return acc;
}

bool QuadTree::in_root_shadow(const CellId& box) const {
  return static_cast<int>(box.coords.size()) == dim_ - 1 && is_ancestor_or_self(root_cell(dim_), box);
}

QuadTree QuadTree::build(const std::vector<CellId>& points) {
  if (points.empty()) throw InvalidInput("quadtree: empty point set");
  QuadTree t;
  t.dim_ = points[0].dim();
  if (t.dim_ < 2) throw InvalidInput("quadtree: dimension must be >= 2");
  t.points_ = points;
  t.canonical_.resize(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (!t.in_root_shadow(points[i]))
      throw InvalidInput("quadtree: point " + to_string(points[i]) + " is outside the root cell");
    auto [it, fresh] = t.point_index_.emplace(points[i], i);
    t.canonical_[i] = it->second;
    if (fresh) {
      t.explicit_.push_back(points[i]);
      t.explicit_set_.insert(points[i]);
    }
  }
  t.rebuild();
  return t;
}

std::size_t QuadTree::better_highest(std::size_t a, std::size_t b) const {
  const int la = points_[a].level, lb = points_[b].level;
  if (la != lb) return la > lb ? a : b;
  return std::min(a, b);
}

void QuadTree::rebuild() {
  nodes_.clear();
  by_cell_.clear();
  build_node(root_cell(dim_), explicit_, -1);
}

int QuadTree::build_node(const CellId& cell, std::vector<CellId> boxes, int parent) {
  const int id = static_cast<int>(nodes_.size());
  nodes_.push_back(QuadNode{});
  {
    QuadNode& n = nodes_.back();
    n.cell = cell;
    n.parent = parent;
    if (auto it = point_index_.find(cell); it != point_index_.end()) {
      n.stored_point = it->second;
      n.highest = it->second;
    }
  }
  by_cell_.emplace(cell, id);

  bool contains_self = false;
  const std::size_t nchild = std::size_t{1} << (dim_ - 1);
  std::vector<std::vector<CellId>> groups(nchild);
  for (auto& b : boxes) {
    if (b == cell) {
      contains_self = true;
      continue;
    }
    const int ci = child_index(ancestor_at(b, cell.level - 1));
    groups[static_cast<std::size_t>(ci)].push_back(std::move(b));
  }
  boxes.clear();
  std::size_t nonempty_groups = 0;
  for (const auto& g : groups) nonempty_groups += g.empty() ? 0 : 1;

  std::vector<int> kids;
  NodeKind kind;
  if (nonempty_groups == 0) {
    kind = NodeKind::Leaf;
  } else if (contains_self || nonempty_groups >= 2) {
    kind = NodeKind::Ordinary;
    for (std::size_t c = 0; c < nchild; ++c)
      kids.push_back(build_node(child(cell, static_cast<int>(c)), std::move(groups[c]), id));
  } else {
    kind = NodeKind::Compressed;
    for (auto& g : groups) {
      if (g.empty()) continue;
      const CellId inner = lowest_common_box(g);
      kids.push_back(build_node(inner, std::move(g), id));
    }
  }
  QuadNode& n = nodes_[static_cast<std::size_t>(id)];
  n.kind = kind;
  n.children = std::move(kids);
  for (int k : n.children) {
    const auto& h = nodes_[static_cast<std::size_t>(k)].highest;
    if (!h) continue;
    n.highest = n.highest ? better_highest(*n.highest, *h) : *h;
  }
  return id;
}

std::optional<int> QuadTree::find(const CellId& c) const {
  auto it = by_cell_.find(c);
  if (it == by_cell_.end()) return std::nullopt;
  return it->second;
}

int QuadTree::locate(const std::vector<double>& x) const {
  if (!xbox_contains_point(root_cell(dim_), x)) throw InvalidInput("locate: point outside the root box");
  int cur = root();
  while (true) {
    const QuadNode& n = node(cur);
    if (n.kind == NodeKind::Leaf) return cur;
    int next = -1;
    for (int c : n.children)
      if (xbox_contains_point(node(c).cell, x)) next = c;
    if (next < 0) return cur;  // compressed region
    cur = next;
  }
}

int QuadTree::deepest_containing(const CellId& box) const {
  if (!in_root_shadow(box)) throw InvalidInput("deepest_containing: box outside the root shadow");
  int cur = root();
  while (true) {
    const QuadNode& n = node(cur);
    if (n.cell == box || n.kind == NodeKind::Leaf) return cur;
    int next = -1;
    for (int c : n.children)
      if (is_ancestor_or_self(node(c).cell, box)) next = c;
    if (next < 0) return cur;
    cur = next;
  }
}

CellQuery QuadTree::cell_query(const CellId& box) const {
  CellQuery q;
  if (static_cast<int>(box.coords.size()) != dim_ - 1) throw InvalidInput("cell_query: dimension mismatch");
  if (!in_root_shadow(box)) {
    if (is_ancestor_or_self(box, root_cell(dim_))) q.largest_contained = root();
    return q;
  }
  const int d = deepest_containing(box);
  q.smallest_containing = d;
  const QuadNode& n = node(d);
  if (n.cell == box) {
    q.largest_contained = d;
  } else if (n.kind == NodeKind::Compressed && is_ancestor_or_self(box, node(n.children[0]).cell)) {
    q.largest_contained = n.children[0];
  }
  return q;
}

std::optional<std::size_t> QuadTree::highest_within(const CellId& box) const {
  const CellQuery q = cell_query(box);
  if (!q.largest_contained) return std::nullopt;
  return node(*q.largest_contained).highest;
}

void QuadTree::insert_box(const CellId& box) { insert_boxes({box}); }

void QuadTree::insert_boxes(const std::vector<CellId>& boxes) {
  bool changed = false;
  for (const auto& b : boxes) {
    if (!in_root_shadow(b)) throw InvalidInput("insert_box: box " + to_string(b) + " is outside the root shadow");
    if (by_cell_.count(b)) continue;
    if (!explicit_set_.insert(b).second) continue;
    explicit_.push_back(b);
    changed = true;
  }
  if (changed) rebuild();
}

std::vector<std::string> QuadTree::validate() const {
  std::vector<std::string> errs;
  auto err = [&](int i, const std::string& what) { errs.push_back("node " + std::to_string(i) + ": " + what); };
  const std::size_t nchild = std::size_t{1} << (dim_ - 1);
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    const int id = static_cast<int>(i);
    const QuadNode& n = nodes_[i];
    std::vector<CellId> inside;
    for (const auto& b : explicit_)
      if (is_ancestor_or_self(n.cell, b)) inside.push_back(b);
    const bool self_in = std::find(inside.begin(), inside.end(), n.cell) != inside.end();
    for (int c : n.children)
      if (node(c).parent != id) err(id, "child does not point back");
    switch (n.kind) {
      case NodeKind::Leaf:
        if (!n.children.empty()) err(id, "leaf with children");
        if (!(inside.empty() || (inside.size() == 1 && self_in))) err(id, "leaf holds more than its own box");
        break;
      case NodeKind::Ordinary: {
        if (n.children.size() != nchild) err(id, "ordinary node without all children");
        std::size_t busy = 0;
        for (int c : n.children) {
          if (node(c).cell.level != n.cell.level - 1 || parent(node(c).cell) != n.cell) err(id, "bad child box");
          for (const auto& b : inside)
            if (is_ancestor_or_self(node(c).cell, b)) {
              ++busy;
              break;
            }
        }
        if (busy < 2 && !self_in) err(id, "ordinary node with fewer than two nonempty children");
        break;
      }
      case NodeKind::Compressed: {
        if (n.children.size() != 1) {
          err(id, "compressed node without exactly one child");
          break;
        }
        if (self_in || inside.empty()) err(id, "compressed node over its own or an empty box");
        if (!inside.empty() && node(n.children[0]).cell != lowest_common_box(inside))
          err(id, "compressed child is not the smallest box holding the same boxes");
        break;
      }
    }
    std::optional<std::size_t> h;
    for (std::size_t p = 0; p < points_.size(); ++p)
      if (canonical_[p] == p && is_ancestor_or_self(n.cell, points_[p])) h = h ? better_highest(*h, p) : p;
    if (h != n.highest) err(id, "highest point mismatch");
    if (n.stored_point && points_[*n.stored_point] != n.cell) err(id, "stored point not equal to the box");
  }
  return errs;
}

}  // namespace hyptile
