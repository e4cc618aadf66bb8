#include "hyptile/metrics.hpp"
#include "hyptile/oracle.hpp"
#include "hyptile/random.hpp"

#include <gtest/gtest.h>

using namespace hyptile;

namespace {

CellId random_cell(Rng& rng, int dim, int lo_level, int hi_level, int range) {
  CellId c{static_cast<int>(uniform_int(rng, lo_level, hi_level)), {}};
  for (int j = 0; j < dim - 1; ++j) c.coords.emplace_back(uniform_int(rng, -range, range));
  return c;
}

}  // namespace

TEST(Metrics, LambdaExamples) {
  EXPECT_EQ(lambda(make_cell(0, {0}), make_cell(0, {5})), 5);
  EXPECT_EQ(lambda(make_cell(3, {2, -7}), make_cell(3, {2, -7})), 0);
  EXPECT_EQ(lambda(make_cell(3, {2, -7}), make_cell(3, {4, 1})), 8);
  EXPECT_THROW(lambda(make_cell(0, {0}), make_cell(1, {0})), InvalidInput);
}

TEST(Metrics, LambdaParentBounds) {
  Rng rng(21);
  for (int t = 0; t < 5000; ++t) {
    const int dim = static_cast<int>(uniform_int(rng, 2, 4));
    CellId p = random_cell(rng, dim, 0, 0, 1000);
    CellId q = random_cell(rng, dim, 0, 0, 1000);
    const BigInt l = lambda(p, q);
    const BigInt lp = lambda(parent(p), parent(q));
    EXPECT_LE(2 * lp - 1, l);
    EXPECT_LE(l, 2 * lp + 1);
  }
}

TEST(Metrics, D1Examples) {
  EXPECT_EQ(d1(make_cell(0, {0}), make_cell(0, {5})), 4);
  EXPECT_EQ(d1(make_cell(0, {0}), make_cell(0, {4})), 4);
  const CellId p = make_cell(-3, {11, -2});
  EXPECT_EQ(d1(p, p), 0);
  EXPECT_EQ(d1(p, parent(p)), 1);
  EXPECT_EQ(d1(make_cell(0, {0}), make_cell(1, {2})), 3);
}

TEST(Metrics, PathPairConfiguration) {
  // Reconstructed layout: q two cells over and one level up from p.
  const CellId p = make_cell(0, {0});
  const CellId q = make_cell(1, {4});
  EXPECT_EQ(d1(p, q), 5);
  EXPECT_EQ(d2(p, q), 6);
  EXPECT_EQ(d1_bfs(p, q, window_for(p, q)), 5);
}

TEST(Metrics, D2PathExamples) {
  D2Path a = d2_path(make_cell(0, {0}), make_cell(0, {5}));
  EXPECT_TRUE(a.has_bridge);
  EXPECT_EQ(a.apex_p, make_cell(2, {0}));
  EXPECT_EQ(a.apex_q, make_cell(2, {1}));
  EXPECT_EQ(a.length, 5);
  EXPECT_EQ(a.level, 2);

  D2Path b = d2_path(make_cell(-2, {5}), make_cell(1, {0}));
  EXPECT_FALSE(b.has_bridge);
  EXPECT_EQ(b.length, 3);
  EXPECT_EQ(b.apex_p, b.apex_q);
  EXPECT_EQ(b.level, 1);

  EXPECT_EQ(d2(make_cell(0, {0}), make_cell(1, {2})), 4);
}

TEST(Metrics, D2TriangleFailure) {
  const CellId p = make_cell(0, {1}), q = make_cell(0, {2}), r = make_cell(0, {3});
  EXPECT_EQ(d2(p, q), 1);
  EXPECT_EQ(d2(q, r), 1);
  EXPECT_EQ(d2(p, r), 3);
}

TEST(Metrics, SandwichTightPair) {
  const CellId p = make_cell(0, {1}), q = make_cell(0, {4});
  EXPECT_EQ(d1(p, q), 3);
  EXPECT_EQ(d2(p, q), 5);
  D2Path path = d2_path(p, q);
  EXPECT_EQ(path.apex_p, make_cell(2, {0}));
  EXPECT_EQ(path.apex_q, make_cell(2, {1}));
}

TEST(Metrics, D2PathInvariants) {
  Rng rng(22);
  for (int t = 0; t < 5000; ++t) {
    const int dim = static_cast<int>(uniform_int(rng, 2, 4));
    CellId p = random_cell(rng, dim, -5, 5, 60);
    CellId q = random_cell(rng, dim, -5, 5, 60);
    D2Path path = d2_path(p, q);
    EXPECT_TRUE(is_ancestor_or_self(path.apex_p, p));
    EXPECT_TRUE(is_ancestor_or_self(path.apex_q, q));
    if (path.has_bridge) {
      EXPECT_TRUE(are_horizontal_neighbors(path.apex_p, path.apex_q));
      // Lowest such level: one level down the ancestors are neither equal nor neighbors.
      if (path.level > std::max(p.level, q.level)) {
        CellId a = ancestor_at(p, path.level - 1), b = ancestor_at(q, path.level - 1);
        EXPECT_FALSE(a == b || are_horizontal_neighbors(a, b));
      }
      EXPECT_EQ(path.length, (path.level - p.level) + (path.level - q.level) + 1);
    } else {
      EXPECT_EQ(path.apex_p, path.apex_q);
      EXPECT_TRUE(is_ancestor_or_self(p, q) || is_ancestor_or_self(q, p));
      EXPECT_EQ(path.length, std::abs(p.level - q.level));
    }
    EXPECT_EQ(d2(p, q), d2(q, p));
    EXPECT_EQ(d1(p, q), d1(q, p));
    EXPECT_LE(d1(p, q), d2(p, q));
    EXPECT_LE(d2(p, q), d1(p, q) + 2);
  }
}

TEST(Metrics, SameLevelStructure) {
  Rng rng(23);
  for (int t = 0; t < 5000; ++t) {
    const int dim = static_cast<int>(uniform_int(rng, 2, 4));
    CellId p = random_cell(rng, dim, 0, 0, 200);
    CellId q = random_cell(rng, dim, 0, 0, 200);
    const BigInt l = lambda(p, q);
    if (l <= 4) EXPECT_EQ(d1(p, q), l.convert_to<long>());
    if (l >= 5) EXPECT_EQ(d1(p, q), 2 + d1(parent(p), parent(q)));
    if (l >= 2) EXPECT_EQ(d2(p, q), 2 + d2(parent(p), parent(q)));
  }
}

TEST(Metrics, D1TriangleInequality) {
  Rng rng(24);
  for (int t = 0; t < 5000; ++t) {
    const int dim = static_cast<int>(uniform_int(rng, 2, 3));
    CellId a = random_cell(rng, dim, -4, 4, 50);
    CellId b = random_cell(rng, dim, -4, 4, 50);
    CellId c = random_cell(rng, dim, -4, 4, 50);
    EXPECT_LE(d1(a, c), d1(a, b) + d1(b, c));
  }
}

TEST(Metrics, D1MatchesBfs) {
  Rng rng(25);
  for (int t = 0; t < 300; ++t) {
    const int dim = static_cast<int>(uniform_int(rng, 2, 3));
    CellId p = random_cell(rng, dim, -3, 3, 24);
    CellId q = random_cell(rng, dim, -3, 3, 24);
    EXPECT_EQ(d1(p, q), d1_bfs(p, q, window_for(p, q))) << to_string(p) << " " << to_string(q);
  }
}

TEST(Metrics, BridgeLevelEstimate) {
  EXPECT_EQ(bridge_level_estimate(make_cell(0, {0}), make_cell(0, {5})), 2);
  EXPECT_EQ(bridge_level_estimate(make_cell(0, {0}), make_cell(0, {1})), 0);
  EXPECT_EQ(bridge_level(make_cell(0, {0}), make_cell(0, {1})), 0);
  EXPECT_THROW(bridge_level_estimate(make_cell(0, {0}), make_cell(0, {0})), InvalidInput);
  EXPECT_THROW(bridge_level_estimate(make_cell(0, {4}), make_cell(2, {1})), InvalidInput);
  Rng rng(26);
  for (int t = 0; t < 10000; ++t) {
    const int dim = static_cast<int>(uniform_int(rng, 2, 4));
    CellId p = random_cell(rng, dim, -8, 8, 500);
    CellId q = random_cell(rng, dim, -8, 8, 500);
    if (is_ancestor_or_self(p, q) || is_ancestor_or_self(q, p)) continue;
    const int l = bridge_level_estimate(p, q);
    const int lev = bridge_level(p, q);
    EXPECT_TRUE(l == lev || l == lev - 1) << to_string(p) << " " << to_string(q);
  }
}

TEST(Metrics, HugeCoordinates) {
  BigInt big = BigInt(1) << 300;
  CellId p{0, {big}}, q{0, {-big}};
  EXPECT_EQ(d1(p, q), 2 * 299 + 4);
  EXPECT_EQ(d2(p, q), 2 * 301 + 1);
}
