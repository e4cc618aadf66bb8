// Command-line front end: gen, build, query, verify, render, bench.

#include "hyptile/avd.hpp"
#include "hyptile/generate.hpp"
#include "hyptile/io.hpp"
#include "hyptile/render.hpp"
#include "hyptile/verify.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace hyptile;

namespace {

std::uint64_t default_seed() {
  if (const char* s = std::getenv("HYPTILE_SEED")) {
    try {
      std::size_t used = 0;
      const unsigned long long v = std::stoull(s, &used);
      if (used == std::string(s).size()) return v;
    } catch (const std::exception&) {
    }
    throw InvalidInput("HYPTILE_SEED must be a non-negative integer");
  }
  return 1;
}

void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw InvalidInput("cannot write " + path);
  out << text;
}

int fail(const std::string& kind, const std::string& message) {
  std::cerr << Json{{"error", {{"kind", kind}, {"message", message}}}}.dump() << '\n';
  return 2;
}

std::pair<std::size_t, std::size_t> parse_pair(const std::string& s) {
  const auto comma = s.find(',');
  try {
    if (comma == std::string::npos) throw InvalidInput("");
    const long a = std::stol(s.substr(0, comma)), b = std::stol(s.substr(comma + 1));
    if (a < 1 || b < 1) throw InvalidInput("");
    return {static_cast<std::size_t>(a - 1), static_cast<std::size_t>(b - 1)};
  } catch (const std::exception&) {
    throw InvalidInput("pair must look like 3,6 (1-based point labels)");
  }
}

std::vector<CellId> discrete_points(const PointSet& s) {
  if (s.kind == PointKind::Discrete) return s.discrete;
  throw InvalidInput("this command needs a discrete point file");
}

struct GenArgs {
  int dim = 2;
  std::size_t n = 64;
  std::string kind = "stratified";
  int depth = -1;
  std::uint64_t seed = 0;
  std::string out;
};

void run_gen(const GenArgs& a) {
  PointSet s;
  s.dim = a.dim;
  if (a.kind == "uniform") {
    s.kind = PointKind::Continuous;
    s.continuous = generate_uniform(a.dim, a.n, a.seed, a.depth < 0 ? 8 : a.depth);
  } else if (a.kind == "stratified") {
    s.kind = PointKind::Discrete;
    s.discrete = generate_stratified(a.dim, a.n, a.seed, a.depth < 0 ? 10 : a.depth);
  } else if (a.kind == "homogeneous") {
    s.kind = PointKind::Discrete;
    s.discrete = generate_homogeneous(a.dim, a.n, a.seed, a.depth < 0 ? 32 : a.depth);
  } else {
    throw InvalidInput("kind must be uniform, stratified or homogeneous");
  }
  std::ostringstream out;
  write_point_set(out, s);
  emit(a.out, out.str());
}

struct BuildArgs {
  std::string input;
  std::string structure = "avd";
  int k = 2;
  std::string out;
  std::string edge_list;
};

void run_build(const BuildArgs& a) {
  const PointSet s = load_point_set(a.input);
  if (s.size() == 0) throw InvalidInput("point file has no points");
  Json j;
  if (a.structure == "quadtree") {
    std::vector<CellId> cells = s.kind == PointKind::Discrete ? s.discrete : std::vector<CellId>{};
    if (s.kind == PointKind::Continuous)
      for (const auto& p : normalize(s.continuous).points) cells.push_back(embed(p));
    j = to_json(QuadTree::build(cells));
  } else if (a.structure == "spanner") {
    if (s.kind == PointKind::Discrete) {
      const SpannerGraph g = build_spanner(s.discrete);
      j = to_json(g);
      if (!a.edge_list.empty()) {
        std::ostringstream el;
        write_edge_list(el, g);
        emit(a.edge_list, el.str());
      }
    } else {
      const HyperbolicSpanner h = build_hyperbolic_spanner(s.continuous, a.k);
      j = to_json(h);
      if (!a.edge_list.empty()) {
        std::ostringstream el;
        write_edge_list(el, h.graph);
        emit(a.edge_list, el.str());
      }
    }
  } else if (a.structure == "avd") {
    j = s.kind == PointKind::Discrete ? to_json(build_avd(s.discrete)) : to_json(build_avd(s.continuous));
  } else {
    throw InvalidInput("structure must be quadtree, spanner or avd");
  }
  emit(a.out, dump(j));
}

struct QueryArgs {
  std::string index;
  std::string queries;
  std::string cell;
  std::string point;
  std::string out;
};

void run_query(const QueryArgs& a) {
  const AvdIndex ix = avd_from_json(load_json(a.index));
  std::vector<Json> items;
  auto answer = [&](const AvdAnswer& r, const Json& q) {
    items.push_back({{"query", q}, {"answer", r.point}, {"d2", r.distance}, {"region", r.region}});
  };
  auto parse = [](const std::string& text) {
    try {
      return Json::parse(text);
    } catch (const nlohmann::json::exception&) {
      throw InvalidInput("malformed JSON query: " + text);
    }
  };
  if (!a.cell.empty()) {
    const CellId c = cell_from_json(parse(a.cell));
    answer(query(ix, c), to_json(c));
  }
  if (!a.point.empty()) {
    const HPoint p = point_from_json(parse(a.point));
    answer(query_hyperbolic(ix, p), to_json(p));
  }
  if (!a.queries.empty()) {
    const PointSet s = load_point_set(a.queries);
    if (s.dim != ix.dim()) throw InvalidInput("query file dimension differs from the index");
    for (const auto& c : s.discrete) answer(query(ix, c), to_json(c));
    for (const auto& p : s.continuous) answer(query_hyperbolic(ix, p), to_json(p));
  }
  if (items.empty()) throw InvalidInput("no queries given (use --cell, --point or --queries)");
  std::ostringstream out;
  for (const auto& it : items) out << it.dump() << '\n';
  emit(a.out, out.str());
}

struct RenderArgs {
  std::string input;
  std::string preset;
  std::string what = "spanner";
  std::vector<std::string> pairs;
  bool unrefined = false;
  int width = 800;
  std::string out;
};

void run_render(const RenderArgs& a) {
  RenderOptions opt;
  opt.what = a.what;
  opt.refined = !a.unrefined;
  opt.width = a.width;
  std::vector<CellId> pts;
  if (!a.preset.empty()) {
    const Preset p = preset(a.preset);
    pts = p.points;
    opt.labels = p.labels;
    opt.pairs = p.pairs;
  } else if (!a.input.empty()) {
    pts = discrete_points(load_point_set(a.input));
  } else {
    throw InvalidInput("render needs --input or --preset");
  }
  if (!a.pairs.empty()) {
    opt.pairs.clear();
    for (const auto& s : a.pairs) opt.pairs.push_back(parse_pair(s));
  }
  const RenderResult r = render(pts, opt);
  if (a.out.empty()) throw InvalidInput("render needs --out for the SVG");
  emit(a.out, r.svg);
  std::cout << dump(r.stats);
}

struct BenchArgs {
  int dim = 2;
  std::vector<std::size_t> sizes{64, 128, 256, 512, 1024};
  std::uint64_t seed = 0;
  bool timing = true;
  std::string out;
};

void run_bench(const BenchArgs& a) {
  using clock = std::chrono::steady_clock;
  Json rows = Json::array();
  for (std::size_t n : a.sizes) {
    const auto cells = generate_stratified(a.dim, n, a.seed, 16);
    const auto t0 = clock::now();
    const QuadTree t = QuadTree::build(cells);
    const auto t1 = clock::now();
    const SpannerGraph g = build_spanner(cells);
    const auto t2 = clock::now();
    const AvdIndex ix = build_avd(cells);
    const auto t3 = clock::now();
    const AvdStats st = avd_stats(ix);
    const double dn = static_cast<double>(n);
    Json row{{"n", n},
             {"quadtree_nodes", t.size()},
             {"spanner_size", g.vertices.size() + g.edges.size()},
             {"spanner_size_per_point", static_cast<double>(g.vertices.size() + g.edges.size()) / dn},
             {"avd_regions", st.regions},
             {"avd_regions_per_point", static_cast<double>(st.regions) / dn},
             {"avd_max_representatives", st.max_representatives}};
    if (a.timing) {
      auto ms = [](auto d) { return std::chrono::duration<double, std::milli>(d).count(); };
      row["ms"] = {{"quadtree", ms(t1 - t0)}, {"spanner", ms(t2 - t1)}, {"avd", ms(t3 - t2)}};
    }
    rows.push_back(std::move(row));
  }
  emit(a.out, dump({{"dim", a.dim}, {"seed", a.seed}, {"rows", rows}}));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Discrete hyperbolic geometry: tilings, spanners and nearest-neighbor diagrams"};
  app.require_subcommand(1);

  std::uint64_t seed = 0;
  try {
    seed = default_seed();
  } catch (const InvalidInput& e) {
    return fail("invalid_input", e.what());
  }

  GenArgs gen;
  gen.seed = seed;
  auto* g = app.add_subcommand("gen", "Generate a random point file");
  g->add_option("--dim", gen.dim, "Dimension D >= 2");
  g->add_option("--n", gen.n, "Number of points");
  g->add_option("--kind", gen.kind, "uniform (continuous), stratified or homogeneous (discrete)");
  g->add_option("--depth", gen.depth, "Level depth of the generated set");
  g->add_option("--seed", gen.seed, "Random seed (default $HYPTILE_SEED or 1)");
  g->add_option("--out", gen.out, "Output file (default stdout)");

  BuildArgs build;
  auto* b = app.add_subcommand("build", "Build a quadtree, spanner or AVD artifact");
  b->add_option("--input", build.input, "Point file")->required();
  b->add_option("--structure", build.structure, "quadtree, spanner or avd");
  b->add_option("--k", build.k, "Hop parameter of the hyperbolic spanner");
  b->add_option("--out", build.out, "Output JSON (default stdout)");
  b->add_option("--edge-list", build.edge_list, "Also write spanner edges as 'u v w' lines");

  QueryArgs q;
  auto* qc = app.add_subcommand("query", "Nearest-neighbor queries against an AVD artifact");
  qc->add_option("--index", q.index, "AVD JSON from build")->required();
  qc->add_option("--queries", q.queries, "Point file of queries");
  qc->add_option("--cell", q.cell, "One cell as JSON, e.g. {\"level\":-3,\"coords\":[2]}");
  qc->add_option("--point", q.point, "One point as JSON, e.g. {\"x\":[0.3],\"z\":0.5}");
  qc->add_option("--out", q.out, "Output JSON lines (default stdout)");

  VerifyOptions vo;
  vo.seed = seed;
  std::string vout;
  auto* v = app.add_subcommand("verify", "Run all oracle suites and print a report");
  v->add_option("--dim", vo.dim, "Dimension D >= 2");
  v->add_option("--n", vo.n, "Set size");
  v->add_option("--seed", vo.seed, "Random seed (default $HYPTILE_SEED or 1)");
  v->add_option("--pairs", vo.pairs, "Random pairs for metric and distortion checks");
  v->add_option("--queries", vo.queries, "Random queries for quadtree and AVD checks");
  v->add_option("--depth", vo.depth, "Level depth of the discrete set");
  v->add_option("--out", vout, "Report file (default stdout)");

  RenderArgs ra;
  auto* r = app.add_subcommand("render", "Draw a D=2 configuration as SVG; stats go to stdout");
  r->add_option("--input", ra.input, "Discrete point file");
  r->add_option("--preset", ra.preset, "two-paths, steiner or refinement");
  r->add_option("--what", ra.what, "tiling, path, spanner or avd");
  r->add_option("--pair", ra.pairs, "Point pair to trace or measure, 1-based, e.g. 3,6");
  r->add_flag("--unrefined", ra.unrefined, "avd: draw the tree before refinement");
  r->add_option("--width", ra.width, "Picture width in pixels");
  r->add_option("--out", ra.out, "SVG file")->required();

  BenchArgs be;
  be.seed = seed;
  bool no_timing = false;
  auto* bc = app.add_subcommand("bench", "Size and time scaling table");
  bc->add_option("--dim", be.dim, "Dimension D >= 2");
  bc->add_option("--sizes", be.sizes, "Set sizes")->delimiter(',');
  bc->add_option("--seed", be.seed, "Random seed (default $HYPTILE_SEED or 1)");
  bc->add_flag("--no-timing", no_timing, "Omit timings so the table is reproducible");
  bc->add_option("--out", be.out, "Output JSON (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return fail("usage", e.what());
  }

  try {
    if (g->parsed()) run_gen(gen);
    if (b->parsed()) run_build(build);
    if (qc->parsed()) run_query(q);
    if (r->parsed()) run_render(ra);
    if (bc->parsed()) {
      be.timing = !no_timing;
      run_bench(be);
    }
    if (v->parsed()) {
      const Json report = run_verify(vo);
      emit(vout, dump(report));
      return report["pass"].get<bool>() ? 0 : 1;
    }
  } catch (const InvalidInput& e) {
    return fail("invalid_input", e.what());
  } catch (const std::exception& e) {
    return fail("internal", e.what());
  }
  return 0;
}
