#include "hyptile/metrics.hpp"
#include "hyptile/random.hpp"
#include "hyptile/spanner.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <set>

using namespace hyptile;

namespace {

CellId random_inner_cell(Rng& rng, int dim, int min_level) {
  const int lev = static_cast<int>(uniform_int(rng, min_level, 0));
  CellId c{lev, {}};
  for (int j = 0; j < dim - 1; ++j) c.coords.emplace_back(uniform_int(rng, 0, (std::int64_t{1} << -lev) - 1));
  return c;
}

std::vector<CellId> random_cells(Rng& rng, int dim, int n, int min_level) {
  std::vector<CellId> pts;
  for (int i = 0; i < n; ++i) pts.push_back(random_inner_cell(rng, dim, min_level));
  return pts;
}

std::vector<HPoint> random_points(Rng& rng, int dim, int n) {
  std::vector<HPoint> pts;
  for (int i = 0; i < n; ++i) {
    HPoint p;
    for (int j = 0; j < dim - 1; ++j) p.x.push_back(uniform01(rng) * 4);
    p.z = std::exp2(uniform01(rng) * 12 - 6);
    pts.push_back(p);
  }
  return pts;
}

}  // namespace

TEST(Spanner, Singleton) {
  SpannerGraph g = build_spanner({make_cell(-2, {1})});
  EXPECT_EQ(g.vertices.size(), 1u);
  EXPECT_TRUE(g.edges.empty());
  EXPECT_THROW(build_spanner({}), InvalidInput);
}

TEST(Spanner, NeighborPairIsItsOwnBridge) {
  const CellId a = make_cell(-3, {2}), b = make_cell(-3, {3});
  auto bridges = enumerate_bridges(QuadTree::build({a, b}));
  ASSERT_EQ(bridges.size(), 1u);
  EXPECT_EQ(bridges[0].left, a);
  EXPECT_EQ(bridges[0].right, b);
  SpannerGraph g = build_spanner({a, b});
  EXPECT_EQ(g.vertices.size(), 2u);
  EXPECT_EQ(g.steiner_count(), 0u);
}

TEST(Spanner, CompressedPairBridge) {
  // Both points hang under long compressed edges; the bridge sits on both.
  const CellId p = make_cell(-8, {127}), q = make_cell(-9, {256});
  QuadTree t = QuadTree::build({p, q});
  auto bridges = enumerate_bridges(t);
  const D2Path path = d2_path(p, q);
  ASSERT_TRUE(path.has_bridge);
  ASSERT_EQ(bridges.size(), 1u);
  EXPECT_TRUE((bridges[0] == Bridge{path.apex_p, path.apex_q}) || (bridges[0] == Bridge{path.apex_q, path.apex_p}));
  SpannerGraph g = build_spanner({p, q});
  EXPECT_EQ(dijkstra(g, g.input_vertex[0])[static_cast<std::size_t>(g.input_vertex[1])], static_cast<double>(d2(p, q)));
}

TEST(Spanner, PathThroughMiddlePointIsShorterThanD2) {
  // Two bridges beat the single-bridge path: the graph distance of (0,[1])
  // and (0,[3]) scaled into the root is d1, not d2.
  const CellId p = make_cell(-3, {1}), q = make_cell(-3, {2}), r = make_cell(-3, {3});
  SpannerGraph g = build_spanner({p, q, r});
  const auto dist = dijkstra(g, g.input_vertex[0]);
  EXPECT_EQ(dist[static_cast<std::size_t>(g.input_vertex[1])], 1.0);
  EXPECT_EQ(dist[static_cast<std::size_t>(g.input_vertex[2])], 2.0);
  EXPECT_EQ(d2(p, r), 3);
  EXPECT_EQ(d1(p, r), 2);
}

TEST(Spanner, BridgesAreExactlyThoseOfInputPairs) {
  Rng rng(71);
  for (int dim = 2; dim <= 3; ++dim) {
    for (int trial = 0; trial < 25; ++trial) {
      const int n = static_cast<int>(uniform_int(rng, 2, 64));
      auto pts = random_cells(rng, dim, n, trial % 2 ? -12 : -6);
      auto bridges = enumerate_bridges(QuadTree::build(pts));
      std::set<Bridge> got(bridges.begin(), bridges.end());
      std::set<Bridge> want;
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
          const D2Path path = d2_path(pts[static_cast<std::size_t>(i)], pts[static_cast<std::size_t>(j)]);
          if (!path.has_bridge) continue;
          Bridge b{path.apex_p, path.apex_q};
          if (b.right < b.left) std::swap(b.left, b.right);
          want.insert(b);
        }
      EXPECT_EQ(got, want) << "dim " << dim << " trial " << trial;
    }
  }
}

TEST(Spanner, GraphDistancesWithinSandwich) {
  Rng rng(72);
  for (int dim = 2; dim <= 3; ++dim) {
    for (int trial = 0; trial < 20; ++trial) {
      const int n = static_cast<int>(uniform_int(rng, 1, 64));
      auto pts = random_cells(rng, dim, n, trial % 2 ? -12 : -6);
      SpannerGraph g = build_spanner(pts);
      for (const auto& e : g.edges) {
        const CellId& a = *g.vertices[static_cast<std::size_t>(e.u)].cell;
        const CellId& b = *g.vertices[static_cast<std::size_t>(e.v)].cell;
        EXPECT_EQ(e.weight, static_cast<double>(d1(a, b)));
        if (e.kind == EdgeKind::Vertical) EXPECT_TRUE(is_ancestor_or_self(b, a));
        else EXPECT_TRUE(are_horizontal_neighbors(a, b));
      }
      for (int i = 0; i < n; ++i) {
        const auto dist = dijkstra(g, g.input_vertex[static_cast<std::size_t>(i)]);
        for (int j = 0; j < n; ++j) {
          const CellId& p = pts[static_cast<std::size_t>(i)];
          const CellId& q = pts[static_cast<std::size_t>(j)];
          const double ds = dist[static_cast<std::size_t>(g.input_vertex[static_cast<std::size_t>(j)])];
          EXPECT_LE(ds, static_cast<double>(d2(p, q)));
          EXPECT_GE(ds, static_cast<double>(d1(p, q)));
          EXPECT_LE(ds, static_cast<double>(d1(p, q) + 2));
        }
      }
    }
  }
}

TEST(Spanner, SteinerVerticesAreBridgeEndsOrMerges) {
  Rng rng(73);
  for (int trial = 0; trial < 20; ++trial) {
    auto pts = random_cells(rng, 2, 40, -10);
    SpannerGraph g = build_spanner(pts);
    std::vector<int> bridge_deg(g.vertices.size(), 0), below(g.vertices.size(), 0);
    for (const auto& e : g.edges) {
      if (e.kind == EdgeKind::Bridge) {
        ++bridge_deg[static_cast<std::size_t>(e.u)];
        ++bridge_deg[static_cast<std::size_t>(e.v)];
      } else {
        ++below[static_cast<std::size_t>(e.v)];
      }
    }
    for (std::size_t v = 0; v < g.vertices.size(); ++v)
      if (g.vertices[v].role == VertexRole::Steiner) EXPECT_TRUE(bridge_deg[v] > 0 || below[v] >= 2);
  }
}

TEST(Spanner, EmbeddingGraphVerticalPair) {
  EmbeddingGraph eg = build_embedding_graph({{{0.3}, 1.5}, {{0.3}, 6.0}});
  const auto dist = dijkstra(eg.graph, eg.graph.input_vertex[0]);
  const double dg = dist[static_cast<std::size_t>(eg.graph.input_vertex[1])];
  EXPECT_NEAR(dg, 2 * std::log(2.0), 1e-12);
  EXPECT_NEAR(dg, hyperbolic_distance({{0.3}, 1.5}, {{0.3}, 6.0}), 1e-12);
  EmbeddingGraph one = build_embedding_graph({{{5.0}, 0.1}});
  EXPECT_EQ(one.graph.vertices.size(), 1u);
}

TEST(Spanner, EmbeddingGraphDistortion) {
  Rng rng(74);
  for (int trial = 0; trial < 10; ++trial) {
    auto pts = random_points(rng, 2, 48);
    EmbeddingGraph eg = build_embedding_graph(pts);
    for (std::size_t i = 0; i < pts.size(); ++i) {
      const auto dist = dijkstra(eg.graph, eg.graph.input_vertex[i]);
      for (std::size_t j = 0; j < pts.size(); ++j) {
        const double e = hyperbolic_distance(pts[i], pts[j]) - dist[static_cast<std::size_t>(eg.graph.input_vertex[j])];
        EXPECT_GE(e, bounds::d2_low(2) - bounds::kSlack);
        EXPECT_LE(e, bounds::d1_high(2) + bounds::kSlack);
      }
    }
  }
}

TEST(Spanner, HyperbolicSpannerHopPaths) {
  Rng rng(75);
  for (int k : {1, 2, 3}) {
    for (int trial = 0; trial < 4; ++trial) {
      auto pts = random_points(rng, 2, 64);
      HyperbolicSpanner hs = build_hyperbolic_spanner(pts, k);
      for (const auto& e : hs.graph.edges) {
        EXPECT_GE(e.weight, 0.0);
        if (e.kind == EdgeKind::Attach) EXPECT_LE(e.weight, std::log(2.0) + bounds::kSlack);
      }
      EXPECT_LE(max_hops(hs.shortcuts), k);
      for (std::size_t i = 0; i < pts.size(); ++i) {
        const auto dist = hop_bounded_distances(hs.graph, static_cast<int>(i), 2 * k + 3);
        for (std::size_t j = 0; j < pts.size(); ++j) {
          const double err = dist[j] - hyperbolic_distance(pts[i], pts[j]);
          EXPECT_GE(err, -1e-9);
          EXPECT_LE(err, bounds::spanner_window(2, k));
        }
      }
    }
  }
}

TEST(Spanner, HyperbolicSpannerSaturatedAndSingleton) {
  Rng rng(76);
  auto pts = random_points(rng, 2, 30);
  // k = 1 closes every vertical run into one edge: five hops always suffice.
  HyperbolicSpanner closed = build_hyperbolic_spanner(pts, 1);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const auto dist = hop_bounded_distances(closed.graph, static_cast<int>(i), 5);
    for (std::size_t j = 0; j < pts.size(); ++j) EXPECT_TRUE(std::isfinite(dist[j]));
  }
  // k at least the forest depth needs no shortcuts at all.
  HyperbolicSpanner deep = build_hyperbolic_spanner(pts, 1000);
  EXPECT_TRUE(deep.shortcuts.extra_edges.empty());
  HyperbolicSpanner one = build_hyperbolic_spanner({{{0.7, 0.1}, 3.0}}, 2);
  EXPECT_EQ(one.graph.vertices.size(), 2u);
  ASSERT_EQ(one.graph.edges.size(), 1u);
  EXPECT_LT(one.graph.edges[0].weight, std::log(3.0));
  EXPECT_THROW(build_hyperbolic_spanner(pts, 0), InvalidInput);
}
