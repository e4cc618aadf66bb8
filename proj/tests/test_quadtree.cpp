#include "hyptile/oracle.hpp"
#include "hyptile/quadtree.hpp"
#include "hyptile/random.hpp"

#include <gtest/gtest.h>

using namespace hyptile;

namespace {

// Cell at a random level in [min_level, 0] inside the root shadow.
CellId random_inner_cell(Rng& rng, int dim, int min_level) {
  const int lev = static_cast<int>(uniform_int(rng, min_level, 0));
  CellId c{lev, {}};
  for (int j = 0; j < dim - 1; ++j) c.coords.emplace_back(uniform_int(rng, 0, (std::int64_t{1} << -lev) - 1));
  return c;
}

std::vector<double> random_x(Rng& rng, int dim) {
  std::vector<double> x;
  for (int j = 0; j < dim - 1; ++j) x.push_back(uniform01(rng));
  return x;
}

// Number of leaf boxes and compressed regions holding x.
int regions_holding(const QuadTree& t, const std::vector<double>& x) {
  int count = 0;
  for (const auto& n : t.nodes()) {
    if (!xbox_contains_point(n.cell, x)) continue;
    if (n.kind == NodeKind::Leaf) ++count;
    if (n.kind == NodeKind::Compressed && !xbox_contains_point(t.node(n.children[0]).cell, x)) ++count;
  }
  return count;
}

std::vector<CellId> stored_boxes(const QuadTree& t) {
  std::vector<CellId> out;
  for (const auto& n : t.nodes()) out.push_back(n.cell);
  return out;
}

void check_partition(const QuadTree& t, Rng& rng, int samples) {
  for (int s = 0; s < samples; ++s) {
    const auto x = random_x(rng, t.dim());
    ASSERT_EQ(regions_holding(t, x), 1);
    const QuadNode& n = t.node(t.locate(x));
    EXPECT_TRUE(xbox_contains_point(n.cell, x));
    if (n.kind == NodeKind::Compressed) EXPECT_FALSE(xbox_contains_point(t.node(n.children[0]).cell, x));
    else EXPECT_EQ(n.kind, NodeKind::Leaf);
  }
}

}  // namespace

TEST(QuadTree, SinglePoint) {
  const CellId p = make_cell(-3, {2});
  QuadTree t = QuadTree::build({p});
  EXPECT_TRUE(t.validate().empty());
  ASSERT_EQ(t.size(), 2u);
  EXPECT_EQ(t.node(0).kind, NodeKind::Compressed);
  EXPECT_EQ(t.node(1).cell, p);
  EXPECT_EQ(t.node(1).kind, NodeKind::Leaf);
  EXPECT_EQ(t.node(1).stored_point, std::optional<std::size_t>(0));
  EXPECT_EQ(t.locate({0.3}), 1);
  EXPECT_EQ(t.locate({0.9}), 0);
}

TEST(QuadTree, TwoPointsInDisjointChildren) {
  QuadTree t = QuadTree::build({make_cell(-1, {0}), make_cell(-1, {1})});
  EXPECT_TRUE(t.validate().empty());
  ASSERT_EQ(t.size(), 3u);
  EXPECT_EQ(t.node(0).kind, NodeKind::Ordinary);
  EXPECT_EQ(t.node(1).kind, NodeKind::Leaf);
  EXPECT_EQ(t.node(2).kind, NodeKind::Leaf);
}

TEST(QuadTree, RootAsInput) {
  QuadTree t = QuadTree::build({root_cell(2), make_cell(-2, {3})});
  EXPECT_TRUE(t.validate().empty());
  EXPECT_EQ(t.node(0).kind, NodeKind::Ordinary);
  EXPECT_EQ(t.node(0).stored_point, std::optional<std::size_t>(0));
  EXPECT_EQ(t.node(0).highest, std::optional<std::size_t>(0));
}

TEST(QuadTree, DuplicatesKeepFirstIndex) {
  QuadTree t = QuadTree::build({make_cell(-2, {1}), make_cell(-2, {1}), make_cell(-4, {1})});
  EXPECT_EQ(t.canonical(1), 0u);
  EXPECT_EQ(t.node(*t.find(make_cell(-2, {1}))).stored_point, std::optional<std::size_t>(0));
  EXPECT_TRUE(t.validate().empty());
}

TEST(QuadTree, RejectsOutside) {
  EXPECT_THROW(QuadTree::build({make_cell(-1, {2})}), InvalidInput);
  EXPECT_THROW(QuadTree::build({make_cell(1, {0})}), InvalidInput);
  EXPECT_THROW(QuadTree::build({}), InvalidInput);
}

TEST(QuadTree, CellQueryExamples) {
  QuadTree t = QuadTree::build({make_cell(-3, {2}), make_cell(-3, {6})});
  const int leaf = *t.find(make_cell(-3, {2}));
  CellQuery a = t.cell_query(make_cell(-3, {2}));
  EXPECT_EQ(a.largest_contained, std::optional<int>(leaf));
  EXPECT_EQ(a.smallest_containing, std::optional<int>(leaf));
  // Inside the region of the compressed node above (-3,[2]), with nothing stored inside.
  const int comp = *t.find(make_cell(-1, {0}));
  ASSERT_EQ(t.node(comp).kind, NodeKind::Compressed);
  CellQuery b = t.cell_query(make_cell(-3, {0}));
  EXPECT_FALSE(b.largest_contained.has_value());
  EXPECT_EQ(b.smallest_containing, std::optional<int>(comp));
  CellQuery c = t.cell_query(make_cell(-2, {1}));
  EXPECT_EQ(c.largest_contained, std::optional<int>(leaf));
  EXPECT_EQ(c.smallest_containing, std::optional<int>(comp));
}

TEST(QuadTree, RandomTreesAgainstOracles) {
  Rng rng(51);
  for (int dim = 2; dim <= 4; ++dim) {
    for (int trial = 0; trial < 12; ++trial) {
      std::vector<CellId> pts;
      const int n = static_cast<int>(uniform_int(rng, 1, 60));
      for (int i = 0; i < n; ++i) pts.push_back(random_inner_cell(rng, dim, -8));
      QuadTree t = QuadTree::build(pts);
      ASSERT_TRUE(t.validate().empty()) << t.validate().front();
      check_partition(t, rng, 300);
      const auto boxes = stored_boxes(t);
      for (int s = 0; s < 300; ++s) {
        const CellId q = random_inner_cell(rng, dim, -9);
        const CellQuery got = t.cell_query(q);
        const CellQueryAnswer want = cell_query_scan(boxes, q);
        EXPECT_EQ(got.largest_contained.has_value(), want.largest_contained.has_value());
        if (want.largest_contained) EXPECT_EQ(*got.largest_contained, static_cast<int>(*want.largest_contained));
        ASSERT_TRUE(want.smallest_containing && got.smallest_containing);
        EXPECT_EQ(*got.smallest_containing, static_cast<int>(*want.smallest_containing));
      }
      for (std::size_t i = 0; i < pts.size(); ++i) {
        auto id = t.find(pts[i]);
        ASSERT_TRUE(id.has_value());
        EXPECT_EQ(t.node(*id).stored_point, std::optional<std::size_t>(t.canonical(i)));
      }
    }
  }
}

TEST(QuadTree, InsertBoxes) {
  Rng rng(52);
  QuadTree t = QuadTree::build({make_cell(-5, {3}), make_cell(-6, {40})});
  const std::size_t before = t.size();
  t.insert_box(root_cell(2));
  EXPECT_EQ(t.size(), before);
  // (-3,[0]) lies on the compressed edge above (-5,[3]).
  const CellId mid = make_cell(-3, {0});
  EXPECT_FALSE(t.find(mid).has_value());
  t.insert_box(mid);
  ASSERT_TRUE(t.find(mid).has_value());
  EXPECT_TRUE(t.validate().empty());
  CellQuery q = t.cell_query(mid);
  EXPECT_EQ(q.largest_contained, t.find(mid));
  EXPECT_EQ(q.smallest_containing, t.find(mid));
  check_partition(t, rng, 2000);
}

TEST(QuadTree, InsertSequencesKeepInvariants) {
  Rng rng(53);
  for (int dim = 2; dim <= 3; ++dim) {
    std::vector<CellId> pts;
    for (int i = 0; i < 20; ++i) pts.push_back(random_inner_cell(rng, dim, -7));
    QuadTree t = QuadTree::build(pts);
    for (int s = 0; s < 25; ++s) {
      std::vector<CellId> before = stored_boxes(t);
      const CellId b = random_inner_cell(rng, dim, -7);
      t.insert_box(b);
      ASSERT_TRUE(t.validate().empty());
      EXPECT_TRUE(t.find(b).has_value());
      for (const auto& c : before) EXPECT_TRUE(t.find(c).has_value());
      check_partition(t, rng, 200);
    }
  }
}

TEST(QuadTree, LinearNodeCount) {
  Rng rng(54);
  for (int dim = 2; dim <= 3; ++dim) {
    double lo = 1e9, hi = 0;
    for (int n = 64; n <= 1024; n *= 2) {
      std::vector<CellId> pts;
      for (int i = 0; i < n; ++i) pts.push_back(random_inner_cell(rng, dim, -20));
      QuadTree t = QuadTree::build(pts);
      const double ratio = static_cast<double>(t.size()) / n;
      lo = std::min(lo, ratio);
      hi = std::max(hi, ratio);
    }
    EXPECT_LE(hi, 2.0 * (1 << (dim - 1)) + 1);
    RecordProperty("nodes_per_point_max_D" + std::to_string(dim), std::to_string(hi));
  }
}
