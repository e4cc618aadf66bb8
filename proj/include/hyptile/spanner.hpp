#pragma once

#include "hyptile/hyperbolic.hpp"
#include "hyptile/quadtree.hpp"
#include "hyptile/shortcut.hpp"

#include <optional>
#include <string>
#include <vector>

namespace hyptile {

enum class VertexRole { Input, Steiner };
enum class EdgeKind { Vertical, Bridge, Shortcut, Attach };
enum class GraphMetric { D1, Ln2Scaled, Hyperbolic };

const char* to_string(VertexRole r);
const char* to_string(EdgeKind k);
const char* to_string(GraphMetric m);

struct SpannerVertex {
  VertexRole role = VertexRole::Steiner;
  std::optional<CellId> cell;               // vertices of the discrete spanner
  std::optional<HPoint> point;              // input points of the hyperbolic spanner
  std::optional<std::size_t> input_index;   // first input index mapped here
};

struct SpannerEdge {
  int u = 0;
  int v = 0;
  double weight = 0;
  EdgeKind kind = EdgeKind::Vertical;
};

struct SpannerGraph {
  int dim = 2;
  GraphMetric metric = GraphMetric::D1;
  std::vector<SpannerVertex> vertices;
  std::vector<SpannerEdge> edges;
  std::vector<int> input_vertex;  // input index -> vertex

  std::size_t steiner_count() const;
};

struct Bridge {
  CellId left;
  CellId right;
  friend bool operator==(const Bridge& a, const Bridge& b) { return a.left == b.left && a.right == b.right; }
  friend bool operator<(const Bridge& a, const Bridge& b);
};

/// Bridges of the d2-paths between stored points, each once with left < right.
std::vector<Bridge> enumerate_bridges(const QuadTree& t);

/// 2-additive Steiner spanner of the input cells under d1.
SpannerGraph build_spanner(const std::vector<CellId>& points);

struct EmbeddingGraph {
  SpannerGraph graph;
  NormalizeTransform transform;
  std::vector<CellId> cells;  // b(p_i) after normalization
};

/// Spanner of the embedded points with every weight multiplied by ln 2.
EmbeddingGraph build_embedding_graph(const std::vector<HPoint>& points);

struct HyperbolicSpanner {
  SpannerGraph graph;  // cell vertices sit at their centers in the normalized frame
  NormalizeTransform transform;
  ShortcutSet shortcuts;  // over the cell vertices, ids are vertex ids minus cell_offset
  int cell_offset = 0;    // vertices [0, cell_offset) are the input points
  std::vector<int> anchor;  // input index -> vertex of b(p)
};

/// Input points, the spanner S of their embedding, and T_k on its vertical forest.
HyperbolicSpanner build_hyperbolic_spanner(const std::vector<HPoint>& points, int k);

/// Single-source shortest paths; unreachable vertices get +infinity.
std::vector<double> dijkstra(const SpannerGraph& g, int source);

/// Minimum weight over walks with at most `hops` edges.
std::vector<double> hop_bounded_distances(const SpannerGraph& g, int source, int hops);

}  // namespace hyptile
