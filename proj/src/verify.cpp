#include "hyptile/verify.hpp"

#include "hyptile/generate.hpp"
#include "hyptile/metrics.hpp"
#include "hyptile/oracle.hpp"
#include "hyptile/random.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace hyptile {

namespace {

CellId random_shadow_cell(Rng& rng, int dim, int min_level) {
  CellId c{static_cast<int>(uniform_int(rng, min_level, 0)), {}};
  const std::int64_t w = std::int64_t{1} << -c.level;
  for (int j = 0; j < dim - 1; ++j) c.coords.emplace_back(uniform_int(rng, 0, w - 1));
  return c;
}

CellId random_query_cell(Rng& rng, int dim, int min_level) {
  if (uniform01(rng) >= 0.1) return random_shadow_cell(rng, dim, min_level);
  CellId c{static_cast<int>(uniform_int(rng, min_level, 1)), {}};
  const std::int64_t w = std::int64_t{1} << std::max(0, -c.level);
  for (int j = 0; j < dim - 1; ++j) c.coords.emplace_back(uniform_int(rng, -w, 2 * w - 1));
  return c;
}

Json metrics_suite(const VerifyOptions& o, Rng& rng) {
  std::size_t sandwich = 0, symmetry = 0, tight = 0, level_bad = 0, level_pairs = 0, bfs_pairs = 0, bfs_bad = 0;
  for (std::size_t s = 0; s < o.pairs; ++s) {
    const CellId p = random_shadow_cell(rng, o.dim, -o.depth - 2);
    const CellId q = random_shadow_cell(rng, o.dim, -o.depth - 2);
    const long a = d1(p, q), b = d2(p, q);
    if (a > b || b > a + 2) ++sandwich;
    if (a != d1(q, p) || b != d2(q, p)) ++symmetry;
    if (b == a + 2) ++tight;
    if (!is_ancestor_or_self(p, q) && !is_ancestor_or_self(q, p)) {
      ++level_pairs;
      const int lev = bridge_level(p, q), est = bridge_level_estimate(p, q);
      if (est != lev && est != lev - 1) ++level_bad;
    }
  }
  const std::size_t nbfs = std::min<std::size_t>(o.pairs, 200);
  for (std::size_t s = 0; s < nbfs; ++s) {
    const CellId p = random_shadow_cell(rng, o.dim, -8);
    const CellId q = random_shadow_cell(rng, o.dim, -8);
    ++bfs_pairs;
    if (d1_bfs(p, q, window_for(p, q)) != d1(p, q)) ++bfs_bad;
  }
  return {{"pairs", o.pairs},
          {"sandwich_violations", sandwich},
          {"symmetry_violations", symmetry},
          {"tight_pairs", tight},
          {"bridge_level_pairs", level_pairs},
          {"bridge_level_violations", level_bad},
          {"bfs_pairs", bfs_pairs},
          {"bfs_mismatches", bfs_bad},
          {"violations", sandwich + symmetry + level_bad + bfs_bad}};
}

Json hyperbolic_suite(const VerifyOptions& o, const std::vector<HPoint>& pts) {
  const DistortionReport r = distortion_report(pts, o.pairs, o.seed);
  double radius = 0;
  for (const auto& p : pts) radius = std::max(radius, hyperbolic_distance(p, center(embed(p))));
  const double bound = o.dim == 2 ? bounds::embed_radius(2) + bounds::kSlack : std::log(static_cast<double>(o.dim));
  const std::size_t radius_bad = (o.dim == 2 ? radius > bound : radius >= bound) ? 1 : 0;
  return {{"samples", r.samples},
          {"d1_deviation", {{"min", r.d1_min}, {"max", r.d1_max}, {"mean", r.d1_mean}}},
          {"d2_deviation", {{"min", r.d2_min}, {"max", r.d2_max}, {"mean", r.d2_mean}}},
          {"d1_window", {bounds::d1_low(o.dim), bounds::d1_high(o.dim)}},
          {"d2_window", {bounds::d2_low(o.dim), bounds::d2_high(o.dim)}},
          {"distortion_violations", r.violations},
          {"embed_radius_max", radius},
          {"embed_radius_bound", bound},
          {"violations", r.violations + radius_bad}};
}

Json quadtree_suite(const VerifyOptions& o, const std::vector<CellId>& cells, Rng& rng) {
  const QuadTree t = QuadTree::build(cells);
  const std::size_t errors = t.validate().size();
  std::vector<CellId> stored;
  for (const auto& n : t.nodes()) stored.push_back(n.cell);
  std::size_t bad = 0;
  for (std::size_t s = 0; s < o.queries; ++s) {
    const CellId q = random_shadow_cell(rng, o.dim, -o.depth - 2);
    const CellQuery got = t.cell_query(q);
    const CellQueryAnswer want = cell_query_scan(stored, q);
    auto as_int = [](const std::optional<std::size_t>& v) { return v ? std::optional<int>(static_cast<int>(*v)) : std::nullopt; };
    if (got.largest_contained != as_int(want.largest_contained) || got.smallest_containing != as_int(want.smallest_containing)) ++bad;
  }
  return {{"nodes", t.size()},
          {"nodes_per_point", static_cast<double>(t.size()) / static_cast<double>(cells.size())},
          {"validate_errors", errors},
          {"cell_query_checks", o.queries},
          {"cell_query_mismatches", bad},
          {"violations", errors + bad}};
}

Json spanner_suite(const std::vector<CellId>& cells, const SpannerGraph& g) {
  std::size_t sandwich = 0, weights = 0, exact = 0;
  long max_excess = 0;
  for (const auto& e : g.edges)
    if (e.weight != static_cast<double>(d1(*g.vertices[static_cast<std::size_t>(e.u)].cell, *g.vertices[static_cast<std::size_t>(e.v)].cell)))
      ++weights;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    const auto dist = dijkstra(g, g.input_vertex[i]);
    for (std::size_t j = 0; j < cells.size(); ++j) {
      const double ds = dist[static_cast<std::size_t>(g.input_vertex[j])];
      const long a = d1(cells[i], cells[j]), b = d2(cells[i], cells[j]);
      if (!(ds >= static_cast<double>(a) && ds <= static_cast<double>(b))) ++sandwich;
      if (ds != static_cast<double>(b)) ++exact;
      if (std::isfinite(ds)) max_excess = std::max(max_excess, static_cast<long>(ds) - a);
    }
  }
  const std::size_t size = g.vertices.size() + g.edges.size();
  return {{"vertices", g.vertices.size()},
          {"edges", g.edges.size()},
          {"steiner", g.steiner_count()},
          {"size_per_point", static_cast<double>(size) / static_cast<double>(cells.size())},
          {"edge_weight_violations", weights},
          {"sandwich_violations", sandwich},
          {"max_excess_over_d1", max_excess},
          {"d2_exact_mismatches", exact},
          {"violations", weights + sandwich}};
}

Json shortcut_suite(const SpannerGraph& g) {
  std::vector<int> forest(g.vertices.size(), -1);
  for (const auto& e : g.edges)
    if (e.kind == EdgeKind::Vertical) forest[static_cast<std::size_t>(e.u)] = e.v;
  Json per_k = Json::object();
  std::size_t bad = 0;
  for (int k = 1; k <= 4; ++k) {
    const ShortcutSet s = shortcut_forest(forest, k);
    const int hops = max_hops(s);
    const bool up = edges_point_upward(s);
    if (hops > k || !up) ++bad;
    per_k[std::to_string(k)] = {{"extra_edges", s.extra_edges.size()}, {"max_hops", hops}};
  }
  return {{"forest_vertices", forest.size()}, {"ancestor_pairs", ancestor_pairs(forest)}, {"by_k", per_k}, {"violations", bad}};
}

Json hyperbolic_spanner_suite(const VerifyOptions& o, const std::vector<HPoint>& pts) {
  Json per_k = Json::object();
  std::size_t bad = 0;
  for (int k : {2, 3}) {
    const HyperbolicSpanner hs = build_hyperbolic_spanner(pts, k);
    const double window = bounds::spanner_window(o.dim, k);
    std::size_t low = 0, high = 0;
    double worst = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < pts.size(); ++i) {
      const auto dist = hop_bounded_distances(hs.graph, static_cast<int>(i), 2 * k + 3);
      for (std::size_t j = 0; j < pts.size(); ++j) {
        if (i == j) continue;
        const double err = dist[j] - hyperbolic_distance(pts[i], pts[j]);
        if (!(err >= -1e-9)) ++low;
        if (!(err <= window)) ++high;
        worst = std::max(worst, err);
      }
    }
    bad += low + high;
    per_k[std::to_string(k)] = {{"vertices", hs.graph.vertices.size()},
                                {"edges", hs.graph.edges.size()},
                                {"hops", 2 * k + 3},
                                {"max_additive_error", pts.size() > 1 ? worst : 0.0},
                                {"window", window},
                                {"lower_violations", low},
                                {"window_violations", high}};
  }
  return {{"by_k", per_k}, {"violations", bad}};
}

Json avd_suite(const VerifyOptions& o, const std::vector<CellId>& cells, Rng& rng) {
  const AvdIndex ix = build_avd(cells);
  std::size_t node_bad = 0, query_bad = 0;
  for (const auto& n : ix.tree.nodes())
    if (*n.nearest != nn_bruteforce(cells, n.cell, Metric::D2)) ++node_bad;
  for (std::size_t s = 0; s < o.queries; ++s) {
    const CellId q = random_query_cell(rng, o.dim, -o.depth - 4);
    if (query(ix, q).point != nn_bruteforce(cells, q, Metric::D2)) ++query_bad;
  }
  const AvdStats st = avd_stats(ix);
  return {{"base_nodes", st.base_nodes},
          {"regions", st.regions},
          {"regions_per_point", static_cast<double>(st.regions) / static_cast<double>(st.points)},
          {"max_representatives", st.max_representatives},
          {"mean_representatives", st.mean_representatives},
          {"max_adjacent_compressed", st.max_adjacent_compressed},
          {"node_nearest_mismatches", node_bad},
          {"queries", o.queries},
          {"query_mismatches", query_bad},
          {"violations", node_bad + query_bad}};
}

Json avd_hyperbolic_suite(const VerifyOptions& o, const std::vector<HPoint>& pts, Rng& rng) {
  const AvdIndex ix = build_avd(pts);
  const double window = bounds::avd_window(o.dim);
  std::size_t bad = 0;
  double worst = 0;
  for (std::size_t s = 0; s < o.queries; ++s) {
    HPoint q;
    for (int j = 0; j < o.dim - 1; ++j) q.x.push_back(uniform01(rng) * 2 - 0.5);
    q.z = std::exp2(uniform01(rng) * 12 - 10);
    const std::size_t a = query_hyperbolic(ix, q).point;
    const double err = hyperbolic_distance(q, pts[a]) - hyperbolic_distance(q, pts[nn_bruteforce(pts, q)]);
    if (!(err <= window)) ++bad;
    worst = std::max(worst, err);
  }
  return {{"queries", o.queries}, {"max_additive_error", worst}, {"window", window}, {"violations", bad}};
}

}  // namespace

Json run_verify(const VerifyOptions& o) {
  if (o.dim < 2) throw InvalidInput("verify: dim must be >= 2");
  if (o.n == 0) throw InvalidInput("verify: n must be positive");
  const std::vector<CellId> cells = generate_stratified(o.dim, o.n, o.seed, o.depth);
  const std::vector<HPoint> pts = generate_uniform(o.dim, o.n, o.seed + 1);
  Rng rng(o.seed);
  Json r;
  r["config"] = {{"dim", o.dim}, {"n", o.n}, {"seed", o.seed}, {"pairs", o.pairs}, {"queries", o.queries}, {"depth", o.depth}};
  r["metrics"] = metrics_suite(o, rng);
  r["hyperbolic"] = hyperbolic_suite(o, pts);
  r["quadtree"] = quadtree_suite(o, cells, rng);
  const SpannerGraph g = build_spanner(cells);
  r["spanner"] = spanner_suite(cells, g);
  r["shortcut"] = shortcut_suite(g);
  r["hyperbolic_spanner"] = hyperbolic_spanner_suite(o, pts);
  r["avd"] = avd_suite(o, cells, rng);
  r["avd_hyperbolic"] = avd_hyperbolic_suite(o, pts, rng);
  std::size_t total = 0;
  for (const char* m : {"metrics", "hyperbolic", "quadtree", "spanner", "shortcut", "hyperbolic_spanner", "avd", "avd_hyperbolic"})
    total += r[m]["violations"].get<std::size_t>();
  r["constants"] = {{"c_quadtree", r["quadtree"]["nodes_per_point"]},
                    {"c_spanner", r["spanner"]["size_per_point"]},
                    {"c_avd_regions", r["avd"]["regions_per_point"]},
                    {"r_avd", r["avd"]["max_representatives"]}};
  r["violations"] = total;
  r["pass"] = total == 0;
  return r;
}

}  // namespace hyptile
