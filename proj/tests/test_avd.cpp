#include "hyptile/avd.hpp"
#include "hyptile/metrics.hpp"
#include "hyptile/oracle.hpp"
#include "hyptile/random.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace hyptile;

namespace {

// Cells with centers in [1/4,1/2]^(D-1): the root, the level -1 corner cell,
// or any cell of level <= -2 inside [1/4,1/2)^(D-1).
CellId random_box_cell(Rng& rng, int dim, int min_level) {
  const double u = uniform01(rng);
  if (u < 0.02) return root_cell(dim);
  CellId c{-1, std::vector<BigInt>(static_cast<std::size_t>(dim - 1), BigInt(0))};
  if (u < 0.04) return c;
  c.level = static_cast<int>(uniform_int(rng, min_level, -2));
  const std::int64_t w = std::int64_t{1} << (-c.level - 2);
  for (auto& k : c.coords) k = w + uniform_int(rng, 0, w - 1);
  return c;
}

std::vector<CellId> random_box_cells(Rng& rng, int dim, int n, int min_level) {
  std::vector<CellId> pts;
  for (int i = 0; i < n; ++i) pts.push_back(random_box_cell(rng, dim, min_level));
  return pts;
}

CellId random_query(Rng& rng, int dim, int min_level, bool inside) {
  CellId c{static_cast<int>(uniform_int(rng, min_level, 0)), {}};
  const std::int64_t w = std::int64_t{1} << -c.level;
  for (int j = 0; j < dim - 1; ++j) c.coords.emplace_back(inside ? uniform_int(rng, 0, w - 1) : uniform_int(rng, -w, 2 * w - 1));
  return c;
}

CellId random_descendant(Rng& rng, CellId c, int steps) {
  for (int s = 0; s < steps; ++s)
    c = child(c, static_cast<int>(uniform_int(rng, 0, (std::int64_t{1} << c.coords.size()) - 1)));
  return c;
}

// Query cell inside the Voronoi region of node i.
CellId random_in_region(Rng& rng, const AvdIndex& ix, int i) {
  const QuadNode& nd = ix.tree.node(i);
  switch (nd.kind) {
    case NodeKind::Ordinary:
      return nd.cell;
    case NodeKind::Leaf:
      return random_descendant(rng, nd.cell, static_cast<int>(uniform_int(rng, 0, 6)));
    case NodeKind::Compressed:
      break;
  }
  const int gap = nd.cell.level - ix.tree.node(nd.children[0]).cell.level;
  while (true) {
    const CellId q = random_descendant(rng, nd.cell, static_cast<int>(uniform_int(rng, 0, gap + 3)));
    if (region_contains(ix, i, q)) return q;
  }
}

}  // namespace

TEST(Avd, BoxPrecondition) {
  EXPECT_TRUE(in_avd_box(root_cell(2)));
  EXPECT_TRUE(in_avd_box(make_cell(-1, {0})));
  EXPECT_FALSE(in_avd_box(make_cell(-1, {1})));
  EXPECT_TRUE(in_avd_box(make_cell(-2, {1})));
  EXPECT_FALSE(in_avd_box(make_cell(-2, {2})));
  EXPECT_TRUE(in_avd_box(make_cell(-4, {4, 7})));
  EXPECT_FALSE(in_avd_box(make_cell(-4, {4, 8})));
  EXPECT_FALSE(in_avd_box(make_cell(1, {0})));
  EXPECT_THROW(build_avd(std::vector<CellId>{make_cell(-3, {0})}), InvalidInput);
  EXPECT_THROW(build_avd(std::vector<CellId>{}), InvalidInput);
  EXPECT_THROW(build_avd(std::vector<HPoint>{}), InvalidInput);
}

TEST(Avd, RefineSinglePointInsertsNeighbors) {
  for (int dim = 2; dim <= 4; ++dim) {
    CellId p{-3, std::vector<BigInt>(static_cast<std::size_t>(dim - 1), BigInt(2))};
    QuadTree t = QuadTree::build({p});
    QuadTree r = refine(t);
    const auto nbs = horizontal_neighbors(p);
    EXPECT_EQ(nbs.size(), static_cast<std::size_t>(std::pow(3, dim - 1)) - 1);
    for (const auto& nb : nbs) EXPECT_TRUE(r.find(nb).has_value()) << to_string(nb);
    EXPECT_TRUE(r.validate().empty());
  }
}

TEST(Avd, RefinementRefinesTheSubdivision) {
  Rng rng(81);
  for (int dim = 2; dim <= 3; ++dim) {
    double worst = 0;
    for (int trial = 0; trial < 10; ++trial) {
      auto pts = random_box_cells(rng, dim, 48, -10);
      QuadTree t = QuadTree::build(pts);
      QuadTree r = refine(t);
      EXPECT_TRUE(r.validate().empty());
      for (const auto& n : t.nodes()) EXPECT_TRUE(r.find(n.cell).has_value());
      worst = std::max(worst, static_cast<double>(r.size()) / static_cast<double>(t.size()));
      // Each leaf/compressed region of T' lies in one leaf/compressed region of T.
      AvdIndex before{t, {}, {}, 0, {}, 0, 0};
      AvdIndex after{r, {}, {}, 0, {}, 0, 0};
      for (int s = 0; s < 200; ++s) {
        const CellId q = random_query(rng, dim, -14, true);
        const int a = locate_region(after, q), b = locate_region(before, q);
        EXPECT_TRUE(is_ancestor_or_self(t.node(b).cell, r.node(a).cell));
      }
    }
    RecordProperty("refined_over_base_nodes_D" + std::to_string(dim), std::to_string(worst));
    EXPECT_LE(worst, dim == 2 ? 12.0 : 40.0);
  }
}

TEST(Avd, SingletonEverywhere) {
  AvdIndex ix = build_avd(std::vector<CellId>{make_cell(-5, {9})});
  for (std::size_t i = 0; i < ix.tree.size(); ++i) {
    EXPECT_EQ(*ix.tree.node(static_cast<int>(i)).nearest, 0u);
    EXPECT_EQ(ix.representatives[i], std::vector<std::size_t>{0});
  }
  EXPECT_EQ(query(ix, make_cell(-9, {3})).point, 0u);
  EXPECT_EQ(query(ix, make_cell(-2, {40})).point, 0u);
}

TEST(Avd, VerticalPairNearest) {
  const std::vector<CellId> pts{make_cell(-7, {40}), make_cell(-3, {2})};
  ASSERT_TRUE(is_ancestor_or_self(pts[1], pts[0]));
  AvdIndex ix = build_avd(pts);
  for (const auto& n : ix.tree.nodes()) EXPECT_EQ(*n.nearest, nn_bruteforce(pts, n.cell, Metric::D2));
}

TEST(Avd, NearestOfEveryNode) {
  Rng rng(82);
  for (int dim = 2; dim <= 3; ++dim)
    for (int trial = 0; trial < 25; ++trial) {
      const int n = static_cast<int>(uniform_int(rng, 1, 64));
      auto pts = random_box_cells(rng, dim, n, trial % 2 ? -12 : -7);
      AvdIndex ix = build_avd(pts);
      for (const auto& nd : ix.tree.nodes())
        ASSERT_EQ(*nd.nearest, nn_bruteforce(pts, nd.cell, Metric::D2)) << to_string(nd.cell);
    }
}

TEST(Avd, RepresentativesHoldTheNearest) {
  Rng rng(83);
  for (int dim = 2; dim <= 3; ++dim)
    for (int trial = 0; trial < 12; ++trial) {
      auto pts = random_box_cells(rng, dim, static_cast<int>(uniform_int(rng, 2, 64)), -11);
      AvdIndex ix = build_avd(pts);
      for (std::size_t i = 0; i < ix.tree.size(); ++i)
        for (int s = 0; s < 10; ++s) {
          const CellId q = random_in_region(rng, ix, static_cast<int>(i));
          ASSERT_EQ(locate_region(ix, q), static_cast<int>(i));
          const std::size_t want = nn_bruteforce(pts, q, Metric::D2);
          const auto& reps = ix.representatives[i];
          ASSERT_TRUE(std::binary_search(reps.begin(), reps.end(), want)) << to_string(q);
        }
    }
}

TEST(Avd, RegionsPartitionTheShadow) {
  Rng rng(84);
  for (int dim = 2; dim <= 3; ++dim) {
    AvdIndex ix = build_avd(random_box_cells(rng, dim, 40, -10));
    for (int s = 0; s < 500; ++s) {
      const CellId q = random_query(rng, dim, -14, true);
      int hits = 0, at = -1;
      for (std::size_t i = 0; i < ix.tree.size(); ++i)
        if (region_contains(ix, static_cast<int>(i), q)) {
          ++hits;
          at = static_cast<int>(i);
        }
      ASSERT_EQ(hits, 1) << to_string(q);
      EXPECT_EQ(at, locate_region(ix, q));
    }
  }
}

TEST(Avd, QueryMatchesBruteForce) {
  Rng rng(85);
  for (int dim = 2; dim <= 3; ++dim)
    for (int trial = 0; trial < 10; ++trial) {
      auto pts = random_box_cells(rng, dim, static_cast<int>(uniform_int(rng, 1, 64)), trial % 2 ? -12 : -7);
      AvdIndex ix = build_avd(pts);
      for (int s = 0; s < 1000; ++s) {
        const CellId q = random_query(rng, dim, -16, s % 10 != 0);
        const AvdAnswer a = query(ix, q);
        ASSERT_EQ(a.point, nn_bruteforce(pts, q, Metric::D2)) << to_string(q);
        EXPECT_EQ(a.distance, d2(q, pts[a.point]));
      }
    }
}

TEST(Avd, QueryExamples) {
  const std::vector<CellId> pts{make_cell(-6, {20}), make_cell(-3, {3}), make_cell(-8, {70})};
  AvdIndex ix = build_avd(pts);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const AvdAnswer a = query(ix, pts[i]);
    EXPECT_EQ(a.point, i);
    EXPECT_EQ(a.distance, 0);
  }
  const AvdAnswer out = query(ix, make_cell(0, {5}));
  EXPECT_EQ(out.point, 1u);
  EXPECT_EQ(out.region, -1);
}

TEST(Avd, OutsideQueryWithRootStored) {
  // The level -1 cell beats the root for queries just left of the box.
  const std::vector<CellId> pts{root_cell(2), make_cell(-1, {0})};
  AvdIndex ix = build_avd(pts);
  const CellId q = make_cell(-1, {-1});
  EXPECT_EQ(d2(q, pts[0]), 2);
  EXPECT_EQ(d2(q, pts[1]), 1);
  EXPECT_EQ(query(ix, q).point, 1u);
  EXPECT_EQ(query(ix, make_cell(-1, {2})).point, 0u);
}

TEST(Avd, HyperbolicQueries) {
  Rng rng(86);
  const double w = bounds::avd_window(2);
  double worst = 0;
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<HPoint> pts;
    for (int i = 0; i < 48; ++i) pts.push_back({{uniform01(rng) * 8 - 4}, std::exp2(uniform01(rng) * 10 - 5)});
    AvdIndex ix = build_avd(pts);
    for (std::size_t i = 0; i < pts.size(); ++i) {
      const std::size_t a = query_hyperbolic(ix, pts[i]).point;
      EXPECT_LE(hyperbolic_distance(pts[i], pts[a]), w);
    }
    for (int s = 0; s < 300; ++s) {
      const HPoint q{{uniform01(rng) * 12 - 6}, std::exp2(uniform01(rng) * 14 - 7)};
      const std::size_t a = query_hyperbolic(ix, q).point;
      const double err = hyperbolic_distance(q, pts[a]) - hyperbolic_distance(q, pts[nn_bruteforce(pts, q)]);
      EXPECT_LE(err, w);
      worst = std::max(worst, err);
    }
  }
  RecordProperty("max_hyperbolic_error", std::to_string(worst));
  AvdIndex one = build_avd(std::vector<HPoint>{{{0.3}, 0.7}});
  EXPECT_EQ(query_hyperbolic(one, {{-3.0}, 50.0}).point, 0u);
  EXPECT_EQ(query_hyperbolic(one, {{0.3}, 0.7}).point, 0u);
}

TEST(Avd, SizeStats) {
  Rng rng(87);
  for (int dim = 2; dim <= 3; ++dim)
    for (int n : {32, 64, 128}) {
      AvdIndex ix = build_avd(random_box_cells(rng, dim, n, -16));
      const AvdStats s = avd_stats(ix);
      EXPECT_EQ(s.regions, ix.tree.size());
      EXPECT_LE(s.regions, static_cast<std::size_t>(n) * (dim == 2 ? 30 : 120));
      EXPECT_LE(s.max_representatives, dim == 2 ? 12u : 40u);
      RecordProperty("D" + std::to_string(dim) + "_n" + std::to_string(n) + "_regions", std::to_string(s.regions));
      RecordProperty("D" + std::to_string(dim) + "_n" + std::to_string(n) + "_max_reps",
                     std::to_string(s.max_representatives));
    }
}
