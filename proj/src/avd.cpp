#include "hyptile/avd.hpp"

#include "hyptile/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace hyptile {

namespace {

// Closed x-interval of c along `axis`, in units of 2^unit_level.
std::pair<BigInt, BigInt> interval(const CellId& c, std::size_t axis, int unit_level) {
  const unsigned s = static_cast<unsigned>(c.level - unit_level);
  const BigInt lo = c.coords[axis] << s;
  return {lo, lo + (BigInt(1) << s)};
}

bool touch_closed(const CellId& a, const CellId& b) {
  const int u = std::min(a.level, b.level);
  for (std::size_t j = 0; j < a.coords.size(); ++j) {
    const auto [alo, ahi] = interval(a, j, u);
    const auto [blo, bhi] = interval(b, j, u);
    if (ahi < blo || bhi < alo) return false;
  }
  return true;
}

// r inside box; true when r reaches the boundary of box on some axis.
bool on_boundary(const CellId& r, const CellId& box) {
  const int u = r.level;
  for (std::size_t j = 0; j < r.coords.size(); ++j) {
    const auto [rlo, rhi] = interval(r, j, u);
    const auto [blo, bhi] = interval(box, j, u);
    if (rlo == blo || rhi == bhi) return true;
  }
  return false;
}

// Compressed nodes mu of `base` with inner box inside `region` such that the
// ancestor of the inner box at level min(lev mu, lmax) is strictly above the
// inner box and satisfies `pred`. pred must be monotone under taking
// ancestors inside `region`.
void collect_compressed(const QuadTree& base, const CellId& region, int lmax,
                        const std::function<bool(const CellId&)>& pred, std::vector<int>& out) {
  auto check = [&](int n) {
    const QuadNode& nd = base.node(n);
    const CellId& inner = base.node(nd.children[0]).cell;
    const int lev = std::min(nd.cell.level, lmax);
    if (lev <= inner.level) return;
    if (pred(ancestor_at(inner, lev))) out.push_back(n);
  };
  std::vector<int> stack{base.deepest_containing(region)};
  while (!stack.empty()) {
    const int n = stack.back();
    stack.pop_back();
    const QuadNode& nd = base.node(n);
    if (!is_ancestor_or_self(region, nd.cell)) {
      if (nd.kind == NodeKind::Compressed && is_ancestor_or_self(region, base.node(nd.children[0]).cell)) {
        check(n);
        stack.push_back(nd.children[0]);
      }
      continue;
    }
    if (!pred(nd.cell)) continue;
    if (nd.kind == NodeKind::Compressed) check(n);
    for (int c : nd.children) stack.push_back(c);
  }
}

void sort_unique(std::vector<std::size_t>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

std::size_t nearest_of(const std::vector<CellId>& pts, const CellId& q, const std::vector<std::size_t>& cand,
                       long* dist) {
  std::size_t best = cand.front();
  long bd = d2(q, pts[best]);
  for (std::size_t i = 1; i < cand.size(); ++i) {
    const long d = d2(q, pts[cand[i]]);
    if (d < bd || (d == bd && cand[i] < best)) {
      bd = d;
      best = cand[i];
    }
  }
  if (dist) *dist = bd;
  return best;
}

}  // namespace

bool in_avd_box(const CellId& c) {
  if (c.level > 0) return false;
  const int e = c.level + 1;
  for (const auto& k : c.coords) {
    const BigInt odd = 2 * k + 1;
    if (e >= 0) {
      const BigInt v = odd << static_cast<unsigned>(e);
      if (v < 1 || v > 2) return false;
    } else {
      const BigInt lo = BigInt(1) << static_cast<unsigned>(-e);
      if (odd < lo || odd > 2 * lo) return false;
    }
  }
  return true;
}

QuadTree refine(const QuadTree& t) {
  for (const auto& p : t.points())
    if (!in_avd_box(p)) throw InvalidInput("refine: point " + to_string(p) + " is outside [1/4,1/2]^(D-1)");
  std::vector<CellId> boxes;
  for (std::size_t i = 0; i < t.size(); ++i) {
    const int id = static_cast<int>(i);
    if (!t.nonempty(id)) continue;
    std::vector<CellId> own{t.node(id).cell};
    if (t.node(id).kind == NodeKind::Compressed) own.push_back(t.node(t.node(id).children[0]).cell);
    for (const auto& c : own)
      for (auto& nb : horizontal_neighbors(c))
        if (t.in_root_shadow(nb)) boxes.push_back(std::move(nb));
  }
  QuadTree out = t;
  out.insert_boxes(boxes);
  return out;
}

std::vector<int> outer_shell_compressed(const QuadTree& base, const CellId& c) {
  std::vector<int> out;
  for (const auto& nb : horizontal_neighbors(c)) {
    if (!base.in_root_shadow(nb)) continue;
    collect_compressed(base, nb, c.level - 1, [&](const CellId& r) { return touch_closed(r, c); }, out);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<int> inner_shell_compressed(const QuadTree& base, const CellId& c1) {
  std::vector<int> out;
  collect_compressed(base, c1, c1.level - 1, [&](const CellId& r) { return on_boundary(r, c1); }, out);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

void annotate(QuadTree& refined, const QuadTree& base) {
  const auto& pts = refined.points();
  for (std::size_t i = 0; i < refined.size(); ++i) {
    const QuadNode& nd = refined.node(static_cast<int>(i));
    std::vector<std::size_t> cand;
    if (nd.parent >= 0) cand.push_back(*refined.node(nd.parent).nearest);
    if (nd.highest) cand.push_back(*nd.highest);
    for (const auto& nb : horizontal_neighbors(nd.cell)) {
      if (!refined.in_root_shadow(nb)) continue;
      if (auto h = refined.highest_within(nb)) cand.push_back(*h);
    }
    if (nd.parent >= 0) {
      const QuadNode& par = refined.node(nd.parent);
      if (par.kind == NodeKind::Compressed && par.cell.level - nd.cell.level >= 2)
        for (int mu : outer_shell_compressed(base, par.cell)) cand.push_back(*base.node(mu).highest);
    }
    refined.set_nearest(static_cast<int>(i), nearest_of(pts, nd.cell, cand, nullptr));
  }
}

namespace {

AvdIndex assemble(QuadTree base) {
  AvdIndex ix;
  ix.base_nodes = base.size();
  ix.tree = refine(base);
  annotate(ix.tree, base);
  const QuadTree& t = ix.tree;
  ix.representatives.resize(t.size());
  for (std::size_t i = 0; i < t.size(); ++i) {
    const QuadNode& nd = t.node(static_cast<int>(i));
    auto& reps = ix.representatives[i];
    reps.push_back(*nd.nearest);
    if (nd.kind == NodeKind::Ordinary) continue;
    const auto outer = outer_shell_compressed(base, nd.cell);
    for (int mu : outer) reps.push_back(*base.node(mu).highest);
    if (nd.kind == NodeKind::Leaf) {
      ix.max_adjacent_compressed = std::max(ix.max_adjacent_compressed, outer.size());
    } else {
      reps.push_back(*nd.highest);
      for (int mu : inner_shell_compressed(base, t.node(nd.children[0]).cell)) reps.push_back(*base.node(mu).highest);
    }
    sort_unique(reps);
  }
  ix.highest = *t.node(t.root()).highest;
  const CellId root = root_cell(t.dim());
  const auto& pts = t.points();
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (t.canonical(i) != i || pts[i] == root) continue;
    auto& h = ix.highest_below_root;
    if (!h || pts[i].level > pts[*h].level) h = i;
  }
  return ix;
}

}  // namespace

AvdIndex build_avd(const std::vector<CellId>& points) {
  if (points.empty()) throw InvalidInput("build_avd: empty point set");
  return assemble(QuadTree::build(points));
}

AvdIndex build_avd(const std::vector<HPoint>& points) {
  if (points.empty()) throw InvalidInput("build_avd: empty point set");
  // Pull the normalized set into [1/4, 0.45] so no point sits on x = 1/2,
  // whose cells would leave [1/4,1/2).
  constexpr double kShrink = 0.8;
  const NormalizedSet ns = normalize(points);
  NormalizeTransform tr;
  tr.scale = kShrink * ns.transform.scale;
  for (double s : ns.transform.shift) tr.shift.push_back(0.25 + kShrink * (s - 0.25));
  std::vector<CellId> cells;
  cells.reserve(points.size());
  for (const auto& p : points) {
    HPoint t = tr.apply(p);
    for (auto& v : t.x) v = std::clamp(v, 0.25, 0.45);
    cells.push_back(embed(t));
  }
  AvdIndex ix = assemble(QuadTree::build(cells));
  ix.transform = tr;
  return ix;
}

int locate_region(const AvdIndex& ix, const CellId& q) {
  const QuadTree& t = ix.tree;
  if (!t.in_root_shadow(q)) throw InvalidInput("locate_region: query outside the root shadow");
  int cur = t.root();
  while (true) {
    const QuadNode& nd = t.node(cur);
    if (nd.cell == q || nd.kind == NodeKind::Leaf) return cur;
    if (nd.kind == NodeKind::Ordinary) {
      cur = nd.children[static_cast<std::size_t>(child_index(ancestor_at(q, nd.cell.level - 1)))];
      continue;
    }
    const int ch = nd.children[0];
    if (!is_ancestor_or_self(t.node(ch).cell, q)) return cur;
    cur = ch;
  }
}

bool region_contains(const AvdIndex& ix, int node, const CellId& q) {
  const QuadNode& nd = ix.tree.node(node);
  switch (nd.kind) {
    case NodeKind::Ordinary:
      return nd.cell == q;
    case NodeKind::Leaf:
      return is_ancestor_or_self(nd.cell, q);
    case NodeKind::Compressed:
      return is_ancestor_or_self(nd.cell, q) && !is_ancestor_or_self(ix.tree.node(nd.children[0]).cell, q);
  }
  return false;
}

AvdAnswer query(const AvdIndex& ix, const CellId& q) {
  if (q.dim() != ix.dim()) throw InvalidInput("query: dimension mismatch");
  AvdAnswer a;
  const auto& pts = ix.tree.points();
  if (!ix.tree.in_root_shadow(q)) {
    std::vector<std::size_t> cand{ix.highest};
    if (ix.highest_below_root) cand.push_back(*ix.highest_below_root);
    a.point = nearest_of(pts, q, cand, &a.distance);
    return a;
  }
  a.region = locate_region(ix, q);
  a.point = nearest_of(pts, q, ix.representatives[static_cast<std::size_t>(a.region)], &a.distance);
  return a;
}

AvdAnswer query_hyperbolic(const AvdIndex& ix, const HPoint& q) {
  if (static_cast<int>(q.x.size()) != ix.dim() - 1) throw InvalidInput("query_hyperbolic: dimension mismatch");
  if (!(q.z > 0) || !std::isfinite(q.z)) throw InvalidInput("query_hyperbolic: z must be positive and finite");
  return query(ix, embed(ix.transform ? ix.transform->apply(q) : q));
}

AvdStats avd_stats(const AvdIndex& ix) {
  AvdStats s;
  s.points = ix.tree.points().size();
  s.base_nodes = ix.base_nodes;
  s.regions = ix.region_count();
  std::size_t total = 0;
  for (const auto& r : ix.representatives) {
    s.max_representatives = std::max(s.max_representatives, r.size());
    total += r.size();
  }
  s.mean_representatives = s.regions ? static_cast<double>(total) / static_cast<double>(s.regions) : 0.0;
  s.max_adjacent_compressed = ix.max_adjacent_compressed;
  return s;
}

}  // namespace hyptile
