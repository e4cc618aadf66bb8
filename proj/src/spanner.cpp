#include "hyptile/spanner.hpp"

#include "hyptile/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <queue>
#include <set>

namespace hyptile {

const char* to_string(VertexRole r) { return r == VertexRole::Input ? "input" : "steiner"; }

const char* to_string(EdgeKind k) {
  switch (k) {
    case EdgeKind::Vertical:
      return "vertical";
    case EdgeKind::Bridge:
      return "bridge";
    case EdgeKind::Shortcut:
      return "shortcut";
    case EdgeKind::Attach:
      return "attach";
  }
  return "?";
}

const char* to_string(GraphMetric m) {
  switch (m) {
    case GraphMetric::D1:
      return "d1";
    case GraphMetric::Ln2Scaled:
      return "ln2-scaled";
    case GraphMetric::Hyperbolic:
      return "hyperbolic";
  }
  return "?";
}

std::size_t SpannerGraph::steiner_count() const {
  return static_cast<std::size_t>(
      std::count_if(vertices.begin(), vertices.end(), [](const SpannerVertex& v) { return v.role == VertexRole::Steiner; }));
}

bool operator<(const Bridge& a, const Bridge& b) {
  if (a.left != b.left) return a.left < b.left;
  return a.right < b.right;
}

namespace {

bool is_point(const QuadTree& t, const CellId& c) {
  const auto id = t.find(c);
  return id && t.node(*id).stored_point.has_value();
}

// Nonempty children of c, plus c itself when it is an input point.
std::vector<CellId> occupied_parts(const QuadTree& t, const CellId& c) {
  std::vector<CellId> out;
  if (is_point(t, c)) out.push_back(c);
  for (auto& ch : children(c))
    if (t.highest_within(ch)) out.push_back(std::move(ch));
  return out;
}

// Strictly between the compressed node's box and its child's box.
bool on_compressed_edge(const QuadTree& t, int node, const CellId& c) {
  const CellId& outer = t.node(node).cell;
  const CellId& inner = t.node(t.node(node).children[0]).cell;
  return c != outer && c != inner && is_ancestor_or_self(outer, c) && is_ancestor_or_self(c, inner);
}

}  // namespace

std::vector<Bridge> enumerate_bridges(const QuadTree& t) {
  std::set<Bridge> found;
  auto emit = [&](const CellId& a, const CellId& b) {
    if (b < a) found.insert(Bridge{b, a});
    else found.insert(Bridge{a, b});
  };

  // Bridges with at least one endpoint stored as a node.
  for (std::size_t i = 0; i < t.size(); ++i) {
    const int id = static_cast<int>(i);
    if (!t.nonempty(id)) continue;
    const CellId& r = t.node(id).cell;
    std::vector<CellId> mine;
    for (const auto& nb : horizontal_neighbors(r)) {
      if (!t.in_root_shadow(nb) || !t.highest_within(nb)) continue;
      if (mine.empty()) mine = occupied_parts(t, r);
      const std::vector<CellId> theirs = occupied_parts(t, nb);
      bool used = false;
      for (const auto& a : mine) {
        for (const auto& b : theirs) {
          if (a == r || b == nb || !are_horizontal_neighbors(a, b)) {
            used = true;
            break;
          }
        }
        if (used) break;
      }
      if (used) emit(r, nb);
    }
  }

  // Bridges whose endpoints both sit strictly inside compressed edges. All
  // points below such an endpoint share the compressed child, so one witness
  // pair per pair of touching compressed nodes decides the bridge.
  for (std::size_t i = 0; i < t.size(); ++i) {
    const int nu = static_cast<int>(i);
    if (t.node(nu).kind != NodeKind::Compressed || !t.nonempty(nu)) continue;
    const CellId& c = t.node(nu).cell;
    std::set<int> partners;
    for (const auto& nb : horizontal_neighbors(c)) {
      if (!t.in_root_shadow(nb)) continue;
      for (int w = t.deepest_containing(nb); w >= 0; w = t.node(w).parent) {
        const QuadNode& wn = t.node(w);
        if (wn.kind != NodeKind::Compressed || !t.nonempty(w)) continue;
        if (wn.cell.level < c.level || is_ancestor_or_self(wn.cell, c)) continue;
        partners.insert(w);
      }
    }
    for (int w : partners) {
      const D2Path path = d2_path(t.points()[*t.node(nu).highest], t.points()[*t.node(w).highest]);
      if (!path.has_bridge) continue;
      if (on_compressed_edge(t, nu, path.apex_p) && on_compressed_edge(t, w, path.apex_q))
        emit(path.apex_p, path.apex_q);
    }
  }
  return {found.begin(), found.end()};
}

SpannerGraph build_spanner(const std::vector<CellId>& points) {
  if (points.empty()) throw InvalidInput("build_spanner: empty point set");
  const QuadTree t = QuadTree::build(points);
  const std::vector<Bridge> bridges = enumerate_bridges(t);

  // Input cells and bridge endpoints.
  std::vector<CellId> base;
  std::set<CellId> seen;
  for (std::size_t i = 0; i < points.size(); ++i)
    if (t.canonical(i) == i && seen.insert(points[i]).second) base.push_back(points[i]);
  std::set<CellId> extra;
  for (const auto& b : bridges)
    for (const CellId* c : {&b.left, &b.right})
      if (!seen.count(*c)) extra.insert(*c);
  std::vector<CellId> v0 = base;
  v0.insert(v0.end(), extra.begin(), extra.end());

  // Merge vertices: branching boxes of the vertex set that lie below a vertex.
  const QuadTree vt = QuadTree::build(v0);
  for (std::size_t i = 0; i < vt.size(); ++i) {
    const QuadNode& n = vt.node(static_cast<int>(i));
    if (n.kind != NodeKind::Ordinary || n.stored_point) continue;
    bool covered = false;
    for (int a = n.parent; a >= 0 && !covered; a = vt.node(a).parent) covered = vt.node(a).stored_point.has_value();
    if (covered) extra.insert(n.cell);
  }

  SpannerGraph g;
  g.dim = points[0].dim();
  g.metric = GraphMetric::D1;
  std::map<CellId, int> vertex_of;
  for (const auto& c : base) {
    vertex_of.emplace(c, static_cast<int>(g.vertices.size()));
    SpannerVertex v;
    v.role = VertexRole::Input;
    v.cell = c;
    g.vertices.push_back(std::move(v));
  }
  for (const auto& c : extra) {
    vertex_of.emplace(c, static_cast<int>(g.vertices.size()));
    SpannerVertex v;
    v.role = VertexRole::Steiner;
    v.cell = c;
    g.vertices.push_back(std::move(v));
  }
  g.input_vertex.resize(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    g.input_vertex[i] = vertex_of.at(points[i]);
    auto& v = g.vertices[static_cast<std::size_t>(g.input_vertex[i])];
    if (!v.input_index) v.input_index = i;
  }

  // Each vertex links to its nearest strict-ancestor vertex.
  std::vector<CellId> all;
  for (const auto& v : g.vertices) all.push_back(*v.cell);
  const QuadTree at = QuadTree::build(all);
  for (std::size_t i = 0; i < g.vertices.size(); ++i) {
    const CellId& c = *g.vertices[i].cell;
    for (int a = at.node(*at.find(c)).parent; a >= 0; a = at.node(a).parent) {
      if (!at.node(a).stored_point) continue;
      const CellId& up = at.node(a).cell;
      g.edges.push_back({static_cast<int>(i), vertex_of.at(up), static_cast<double>(up.level - c.level), EdgeKind::Vertical});
      break;
    }
  }
  for (const auto& b : bridges) g.edges.push_back({vertex_of.at(b.left), vertex_of.at(b.right), 1.0, EdgeKind::Bridge});
  return g;
}

EmbeddingGraph build_embedding_graph(const std::vector<HPoint>& points) {
  if (points.empty()) throw InvalidInput("build_embedding_graph: empty point set");
  NormalizedSet ns = normalize(points);
  EmbeddingGraph out;
  out.transform = ns.transform;
  for (const auto& p : ns.points) out.cells.push_back(embed(p));
  out.graph = build_spanner(out.cells);
  out.graph.metric = GraphMetric::Ln2Scaled;
  const double ln2 = std::log(2.0);
  for (auto& e : out.graph.edges) e.weight *= ln2;
  return out;
}

HyperbolicSpanner build_hyperbolic_spanner(const std::vector<HPoint>& points, int k) {
  if (k < 1) throw InvalidInput("build_hyperbolic_spanner: k must be >= 1");
  if (points.empty()) throw InvalidInput("build_hyperbolic_spanner: empty point set");
  NormalizedSet ns = normalize(points);
  std::vector<CellId> cells;
  for (const auto& p : ns.points) cells.push_back(embed(p));
  const SpannerGraph s = build_spanner(cells);

  HyperbolicSpanner out;
  out.transform = ns.transform;
  SpannerGraph& g = out.graph;
  g.dim = points[0].dim();
  g.metric = GraphMetric::Hyperbolic;
  const std::size_t n = points.size();
  out.cell_offset = static_cast<int>(n);
  std::vector<HPoint> pos;
  for (std::size_t i = 0; i < n; ++i) {
    SpannerVertex v;
    v.role = VertexRole::Input;
    v.point = points[i];
    v.input_index = i;
    g.vertices.push_back(std::move(v));
    pos.push_back(ns.points[i]);
  }
  for (const auto& sv : s.vertices) {
    SpannerVertex v;
    v.role = VertexRole::Steiner;
    v.cell = sv.cell;
    g.vertices.push_back(std::move(v));
    pos.push_back(center(*sv.cell));
  }
  g.input_vertex.resize(n);
  for (std::size_t i = 0; i < n; ++i) g.input_vertex[i] = static_cast<int>(i);

  auto add = [&](int u, int v, EdgeKind kind) {
    g.edges.push_back({u, v, hyperbolic_distance(pos[static_cast<std::size_t>(u)], pos[static_cast<std::size_t>(v)]), kind});
  };
  const int off = out.cell_offset;
  std::vector<int> forest(s.vertices.size(), -1);
  for (const auto& e : s.edges)
    if (e.kind == EdgeKind::Vertical) forest[static_cast<std::size_t>(e.u)] = e.v;
  out.shortcuts = shortcut_forest(forest, k);
  for (std::size_t v = 0; v < forest.size(); ++v)
    if (forest[v] >= 0) add(off + static_cast<int>(v), off + forest[v], EdgeKind::Vertical);
  for (const auto& e : out.shortcuts.extra_edges) add(off + e.first, off + e.second, EdgeKind::Shortcut);
  for (const auto& e : s.edges)
    if (e.kind == EdgeKind::Bridge) add(off + e.u, off + e.v, EdgeKind::Bridge);
  out.anchor.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    out.anchor[i] = off + s.input_vertex[i];
    add(static_cast<int>(i), out.anchor[i], EdgeKind::Attach);
  }
  return out;
}

namespace {

std::vector<std::vector<std::pair<int, double>>> adjacency(const SpannerGraph& g) {
  std::vector<std::vector<std::pair<int, double>>> adj(g.vertices.size());
  for (const auto& e : g.edges) {
    adj[static_cast<std::size_t>(e.u)].emplace_back(e.v, e.weight);
    adj[static_cast<std::size_t>(e.v)].emplace_back(e.u, e.weight);
  }
  return adj;
}

}  // namespace

std::vector<double> dijkstra(const SpannerGraph& g, int source) {
  const auto adj = adjacency(g);
  std::vector<double> dist(g.vertices.size(), std::numeric_limits<double>::infinity());
  using Item = std::pair<double, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<Item>> pq;
  dist[static_cast<std::size_t>(source)] = 0;
  pq.emplace(0.0, source);
  while (!pq.empty()) {
    auto [d, u] = pq.top();
    pq.pop();
    if (d > dist[static_cast<std::size_t>(u)]) continue;
    for (auto [v, w] : adj[static_cast<std::size_t>(u)]) {
      if (d + w < dist[static_cast<std::size_t>(v)]) {
        dist[static_cast<std::size_t>(v)] = d + w;
        pq.emplace(d + w, v);
      }
    }
  }
  return dist;
}

std::vector<double> hop_bounded_distances(const SpannerGraph& g, int source, int hops) {
  std::vector<double> dist(g.vertices.size(), std::numeric_limits<double>::infinity());
  dist[static_cast<std::size_t>(source)] = 0;
  for (int h = 0; h < hops; ++h) {
    std::vector<double> next = dist;
    for (const auto& e : g.edges) {
      const auto u = static_cast<std::size_t>(e.u), v = static_cast<std::size_t>(e.v);
      next[v] = std::min(next[v], dist[u] + e.weight);
      next[u] = std::min(next[u], dist[v] + e.weight);
    }
    dist = std::move(next);
  }
  return dist;
}

}  // namespace hyptile
