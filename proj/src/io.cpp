#include "hyptile/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace hyptile {

namespace {

[[noreturn]] void fail(const std::string& what) { throw InvalidInput(what); }

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) fail(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

template <class T>
T get(const Json& j, const char* key) {
  try {
    return field(j, key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    fail(std::string("field \"") + key + "\": " + e.what());
  }
}

Json opt_to_json(const std::optional<std::size_t>& v) { return v ? Json(*v) : Json(nullptr); }

std::optional<std::size_t> opt_from_json(const Json& j) {
  if (j.is_null()) return std::nullopt;
  if (!j.is_number_unsigned()) fail("expected a point index or null");
  return j.get<std::size_t>();
}

void expect_type(const Json& j, const char* type) {
  if (get<std::string>(j, "type") != type) fail(std::string("expected a ") + type + " artifact");
}

NodeKind node_kind_from(const std::string& s) {
  for (NodeKind k : {NodeKind::Ordinary, NodeKind::Compressed, NodeKind::Leaf})
    if (s == to_string(k)) return k;
  fail("unknown node kind " + s);
}

Json nodes_to_json(const QuadTree& t) {
  Json nodes = Json::array();
  for (const auto& n : t.nodes())
    nodes.push_back({{"cell", to_json(n.cell)},
                     {"kind", to_string(n.kind)},
                     {"parent", n.parent},
                     {"children", n.children},
                     {"stored_point", opt_to_json(n.stored_point)},
                     {"highest", opt_to_json(n.highest)},
                     {"nearest", opt_to_json(n.nearest)}});
  return nodes;
}

}  // namespace

const char* to_string(PointKind k) { return k == PointKind::Continuous ? "continuous" : "discrete"; }

Json to_json(const BigInt& v) {
  if (auto s = to_int64(v)) return *s;
  return to_string(v);
}

BigInt bigint_from_json(const Json& j) {
  if (j.is_number_unsigned()) return BigInt(j.get<std::uint64_t>());
  if (j.is_number_integer()) return BigInt(j.get<std::int64_t>());
  if (j.is_string()) {
    try {
      return parse_bigint(j.get<std::string>());
    } catch (const std::invalid_argument& e) {
      fail(e.what());
    }
  }
  fail("expected an integer or a decimal string");
}

Json to_json(const CellId& c) {
  Json coords = Json::array();
  for (const auto& k : c.coords) coords.push_back(to_json(k));
  return {{"level", c.level}, {"coords", coords}};
}

CellId cell_from_json(const Json& j) {
  CellId c;
  c.level = get<int>(j, "level");
  const Json& coords = field(j, "coords");
  if (!coords.is_array()) fail("coords must be an array");
  for (const auto& k : coords) c.coords.push_back(bigint_from_json(k));
  return c;
}

Json to_json(const HPoint& p) { return {{"x", p.x}, {"z", p.z}}; }

HPoint point_from_json(const Json& j) {
  HPoint p;
  p.x = get<std::vector<double>>(j, "x");
  p.z = get<double>(j, "z");
  if (!(p.z > 0) || !std::isfinite(p.z)) fail("z must be positive and finite");
  for (double v : p.x)
    if (!std::isfinite(v)) fail("x must be finite");
  return p;
}

Json to_json(const NormalizeTransform& t) { return {{"scale", t.scale}, {"shift", t.shift}}; }

NormalizeTransform transform_from_json(const Json& j) {
  NormalizeTransform t;
  t.scale = get<double>(j, "scale");
  t.shift = get<std::vector<double>>(j, "shift");
  return t;
}

PointSet read_point_set(std::istream& in) {
  PointSet s;
  std::string line;
  std::size_t lineno = 0;
  bool header = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const std::string where = "line " + std::to_string(lineno) + ": ";
    Json j;
    try {
      j = Json::parse(line);
    } catch (const nlohmann::json::exception& e) {
      fail(where + "malformed JSON");
    }
    try {
      if (!header) {
        s.dim = get<int>(j, "dim");
        if (s.dim < 2) fail("dim must be >= 2");
        const std::string kind = get<std::string>(j, "kind");
        if (kind == "continuous") s.kind = PointKind::Continuous;
        else if (kind == "discrete") s.kind = PointKind::Discrete;
        else fail("kind must be continuous or discrete");
        header = true;
        continue;
      }
      if (s.kind == PointKind::Continuous) {
        HPoint p = point_from_json(j);
        if (p.dim() != s.dim) fail("point dimension differs from the header");
        s.continuous.push_back(std::move(p));
      } else {
        CellId c = cell_from_json(j);
        if (c.dim() != s.dim) fail("cell dimension differs from the header");
        s.discrete.push_back(std::move(c));
      }
    } catch (const InvalidInput& e) {
      fail(where + e.what());
    }
  }
  if (!header) fail("point file has no header line");
  return s;
}

void write_point_set(std::ostream& out, const PointSet& s) {
  out << Json{{"dim", s.dim}, {"kind", to_string(s.kind)}}.dump() << '\n';
  if (s.kind == PointKind::Continuous)
    for (const auto& p : s.continuous) out << to_json(p).dump() << '\n';
  else
    for (const auto& c : s.discrete) out << to_json(c).dump() << '\n';
}

PointSet load_point_set(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail("cannot open " + path);
  return read_point_set(in);
}

void save_point_set(const std::string& path, const PointSet& s) {
  std::ofstream out(path);
  if (!out) fail("cannot write " + path);
  write_point_set(out, s);
}

Json to_json(const QuadTree& t) {
  Json points = Json::array(), inserted = Json::array();
  for (const auto& p : t.points()) points.push_back(to_json(p));
  std::size_t distinct = 0;
  for (std::size_t i = 0; i < t.points().size(); ++i) distinct += t.canonical(i) == i ? 1 : 0;
  const auto& ex = t.explicit_boxes();
  for (std::size_t i = distinct; i < ex.size(); ++i) inserted.push_back(to_json(ex[i]));
  return {{"type", "quadtree"}, {"dim", t.dim()}, {"points", points}, {"inserted", inserted}, {"nodes", nodes_to_json(t)}};
}

QuadTree quadtree_from_json(const Json& j) {
  expect_type(j, "quadtree");
  std::vector<CellId> points, inserted;
  for (const auto& p : field(j, "points")) points.push_back(cell_from_json(p));
  for (const auto& b : field(j, "inserted")) inserted.push_back(cell_from_json(b));
  QuadTree t = QuadTree::build(points);
  if (t.dim() != get<int>(j, "dim")) fail("quadtree: dim does not match the points");
  t.insert_boxes(inserted);
  const Json& nodes = field(j, "nodes");
  if (!nodes.is_array() || nodes.size() != t.size()) fail("quadtree: node list does not match the rebuilt tree");
  for (std::size_t i = 0; i < t.size(); ++i) {
    const Json& n = nodes[i];
    const QuadNode& m = t.node(static_cast<int>(i));
    if (cell_from_json(field(n, "cell")) != m.cell || node_kind_from(get<std::string>(n, "kind")) != m.kind ||
        get<int>(n, "parent") != m.parent || get<std::vector<int>>(n, "children") != m.children ||
        opt_from_json(field(n, "stored_point")) != m.stored_point || opt_from_json(field(n, "highest")) != m.highest)
      fail("quadtree: node " + std::to_string(i) + " does not match the rebuilt tree");
    const auto nearest = opt_from_json(field(n, "nearest"));
    if (nearest && *nearest >= t.points().size()) fail("quadtree: nearest index out of range");
    t.set_nearest(static_cast<int>(i), nearest);
  }
  return t;
}

Json to_json(const SpannerGraph& g) {
  Json vertices = Json::array(), edges = Json::array();
  for (const auto& v : g.vertices) {
    Json jv{{"role", to_string(v.role)}};
    if (v.cell) jv["cell"] = to_json(*v.cell);
    if (v.point) jv["point"] = to_json(*v.point);
    if (v.input_index) jv["input_index"] = *v.input_index;
    vertices.push_back(std::move(jv));
  }
  for (const auto& e : g.edges) edges.push_back({{"u", e.u}, {"v", e.v}, {"weight", e.weight}, {"kind", to_string(e.kind)}});
  return {{"type", "spanner"},     {"dim", g.dim},     {"metric", to_string(g.metric)},
          {"vertices", vertices}, {"edges", edges}, {"input_vertex", g.input_vertex}};
}

SpannerGraph spanner_from_json(const Json& j) {
  expect_type(j, "spanner");
  SpannerGraph g;
  g.dim = get<int>(j, "dim");
  const std::string metric = get<std::string>(j, "metric");
  bool known = false;
  for (GraphMetric m : {GraphMetric::D1, GraphMetric::Ln2Scaled, GraphMetric::Hyperbolic})
    if (metric == to_string(m)) {
      g.metric = m;
      known = true;
    }
  if (!known) fail("unknown metric " + metric);
  for (const auto& jv : field(j, "vertices")) {
    SpannerVertex v;
    const std::string role = get<std::string>(jv, "role");
    if (role == to_string(VertexRole::Input)) v.role = VertexRole::Input;
    else if (role == to_string(VertexRole::Steiner)) v.role = VertexRole::Steiner;
    else fail("unknown vertex role " + role);
    if (jv.contains("cell")) v.cell = cell_from_json(jv.at("cell"));
    if (jv.contains("point")) v.point = point_from_json(jv.at("point"));
    if (jv.contains("input_index")) v.input_index = get<std::size_t>(jv, "input_index");
    g.vertices.push_back(std::move(v));
  }
  const int nv = static_cast<int>(g.vertices.size());
  for (const auto& je : field(j, "edges")) {
    SpannerEdge e;
    e.u = get<int>(je, "u");
    e.v = get<int>(je, "v");
    if (e.u < 0 || e.u >= nv || e.v < 0 || e.v >= nv) fail("edge endpoint out of range");
    e.weight = get<double>(je, "weight");
    const std::string kind = get<std::string>(je, "kind");
    bool ok = false;
    for (EdgeKind k : {EdgeKind::Vertical, EdgeKind::Bridge, EdgeKind::Shortcut, EdgeKind::Attach})
      if (kind == to_string(k)) {
        e.kind = k;
        ok = true;
      }
    if (!ok) fail("unknown edge kind " + kind);
    g.edges.push_back(e);
  }
  g.input_vertex = get<std::vector<int>>(j, "input_vertex");
  for (int v : g.input_vertex)
    if (v < 0 || v >= nv) fail("input vertex out of range");
  return g;
}

Json to_json(const HyperbolicSpanner& s) {
  Json extra = Json::array();
  for (const auto& [d, a] : s.shortcuts.extra_edges) extra.push_back({d, a});
  return {{"type", "hyperbolic_spanner"},
          {"graph", to_json(s.graph)},
          {"transform", to_json(s.transform)},
          {"k", s.shortcuts.k},
          {"forest", s.shortcuts.forest},
          {"shortcut_edges", extra},
          {"cell_offset", s.cell_offset},
          {"anchor", s.anchor}};
}

HyperbolicSpanner hyperbolic_spanner_from_json(const Json& j) {
  expect_type(j, "hyperbolic_spanner");
  HyperbolicSpanner s;
  s.graph = spanner_from_json(field(j, "graph"));
  s.transform = transform_from_json(field(j, "transform"));
  s.shortcuts.k = get<int>(j, "k");
  s.shortcuts.forest = get<std::vector<int>>(j, "forest");
  for (const auto& e : field(j, "shortcut_edges")) {
    if (!e.is_array() || e.size() != 2) fail("shortcut edge must be a pair");
    s.shortcuts.extra_edges.emplace_back(e[0].get<int>(), e[1].get<int>());
  }
  s.cell_offset = get<int>(j, "cell_offset");
  s.anchor = get<std::vector<int>>(j, "anchor");
  return s;
}

Json to_json(const AvdIndex& ix) {
  return {{"type", "avd"},
          {"tree", to_json(ix.tree)},
          {"representatives", ix.representatives},
          {"transform", ix.transform ? to_json(*ix.transform) : Json(nullptr)},
          {"highest", ix.highest},
          {"highest_below_root", opt_to_json(ix.highest_below_root)},
          {"base_nodes", ix.base_nodes},
          {"max_adjacent_compressed", ix.max_adjacent_compressed}};
}

AvdIndex avd_from_json(const Json& j) {
  expect_type(j, "avd");
  AvdIndex ix;
  ix.tree = quadtree_from_json(field(j, "tree"));
  ix.representatives = get<std::vector<std::vector<std::size_t>>>(j, "representatives");
  if (ix.representatives.size() != ix.tree.size()) fail("avd: one representative list per node expected");
  const std::size_t n = ix.tree.points().size();
  for (const auto& r : ix.representatives) {
    if (r.empty()) fail("avd: empty representative list");
    for (std::size_t p : r)
      if (p >= n) fail("avd: representative out of range");
  }
  if (!field(j, "transform").is_null()) ix.transform = transform_from_json(j.at("transform"));
  ix.highest = get<std::size_t>(j, "highest");
  ix.highest_below_root = opt_from_json(field(j, "highest_below_root"));
  if (ix.highest >= n || (ix.highest_below_root && *ix.highest_below_root >= n)) fail("avd: point index out of range");
  ix.base_nodes = get<std::size_t>(j, "base_nodes");
  ix.max_adjacent_compressed = get<std::size_t>(j, "max_adjacent_compressed");
  return ix;
}

void write_edge_list(std::ostream& out, const SpannerGraph& g) {
  char buf[64];
  for (const auto& e : g.edges) {
    std::snprintf(buf, sizeof buf, "%.17g", e.weight);
    out << e.u << ' ' << e.v << ' ' << buf << '\n';
  }
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

Json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    fail(path + ": malformed JSON");
  }
}

}  // namespace hyptile
