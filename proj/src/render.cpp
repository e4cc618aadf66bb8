#include "hyptile/render.hpp"

#include "hyptile/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <functional>
#include <sstream>

namespace hyptile {

namespace {

constexpr double kBand = 44;
constexpr double kMargin = 30;

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

class Canvas {
 public:
  Canvas(const std::vector<CellId>& cells, int width) : width_(width) {
    lo_ = hi_ = cells.front().level;
    xmin_ = 1e300;
    xmax_ = -1e300;
    for (const auto& c : cells) {
      lo_ = std::min(lo_, c.level);
      hi_ = std::max(hi_, c.level);
      const double w = std::ldexp(1.0, c.level), x = to_double(c.coords[0]) * w;
      xmin_ = std::min(xmin_, x);
      xmax_ = std::max(xmax_, x + w);
    }
    // Snap the horizontal range to the cells of the top band.
    const double w = std::ldexp(1.0, hi_);
    xmin_ = std::floor(xmin_ / w) * w;
    xmax_ = std::ceil(xmax_ / w) * w;
    --lo_;
  }

  double px(double x) const { return kMargin + (x - xmin_) / (xmax_ - xmin_) * (width_ - 2 * kMargin); }
  double band_top(int level) const { return kMargin + (hi_ - level) * kBand; }
  double cy(const CellId& c) const { return band_top(c.level) + kBand / 2; }
  double cx(const CellId& c) const { return px((to_double(c.coords[0]) + 0.5) * std::ldexp(1.0, c.level)); }
  double picture_height() const { return band_top(lo_ - 1) + kMargin; }

  void tiling(std::ostringstream& out) const {
    out << "<g stroke=\"#c8c8c8\" stroke-width=\"0.6\" fill=\"none\">\n";
    for (int lev = hi_; lev >= lo_; --lev) {
      const double y0 = band_top(lev), y1 = y0 + kBand, w = std::ldexp(1.0, lev);
      out << "<line x1=\"" << num(px(xmin_)) << "\" y1=\"" << num(y1) << "\" x2=\"" << num(px(xmax_)) << "\" y2=\""
          << num(y1) << "\"/>\n";
      if (px(xmin_ + w) - px(xmin_) < 3) continue;
      for (double x = xmin_; x <= xmax_ + w / 2; x += w)
        out << "<line x1=\"" << num(px(x)) << "\" y1=\"" << num(y0) << "\" x2=\"" << num(px(x)) << "\" y2=\"" << num(y1)
            << "\"/>\n";
    }
    out << "</g>\n";
  }

  void rect(std::ostringstream& out, const CellId& c, const std::string& style) const {
    const double w = std::ldexp(1.0, c.level), x = to_double(c.coords[0]) * w;
    out << "<rect x=\"" << num(px(x)) << "\" y=\"" << num(band_top(c.level)) << "\" width=\"" << num(px(x + w) - px(x))
        << "\" height=\"" << num(kBand) << "\" " << style << "/>\n";
  }

  void line(std::ostringstream& out, const CellId& a, const CellId& b, const std::string& style) const {
    out << "<line x1=\"" << num(cx(a)) << "\" y1=\"" << num(cy(a)) << "\" x2=\"" << num(cx(b)) << "\" y2=\"" << num(cy(b))
        << "\" " << style << "/>\n";
  }

  void dot(std::ostringstream& out, const CellId& c, bool filled, const std::string& label) const {
    out << "<circle cx=\"" << num(cx(c)) << "\" cy=\"" << num(cy(c)) << "\" r=\"4\" stroke=\"#000\" fill=\""
        << (filled ? "#000" : "#fff") << "\"/>\n";
    if (!label.empty())
      out << "<text x=\"" << num(cx(c) + 6) << "\" y=\"" << num(cy(c) - 6) << "\" font-size=\"11\">" << label << "</text>\n";
  }

 private:
  int width_;
  int lo_, hi_;
  double xmin_, xmax_;
};

std::string pair_name(std::size_t i, std::size_t j) { return "p" + std::to_string(i + 1) + ",p" + std::to_string(j + 1); }

std::vector<CellId> chain(const CellId& from, const CellId& to) {
  std::vector<CellId> out{from};
  while (out.back().level < to.level) out.push_back(parent(out.back()));
  return out;
}

}  // namespace

RenderResult render(const std::vector<CellId>& points, const RenderOptions& opt) {
  if (points.empty()) throw InvalidInput("render: empty point set");
  for (const auto& p : points)
    if (p.dim() != 2) throw InvalidInput("render: only D = 2 can be drawn");
  for (const auto& [i, j] : opt.pairs)
    if (i >= points.size() || j >= points.size()) throw InvalidInput("render: pair index out of range");
  if (opt.width < 100) throw InvalidInput("render: width must be at least 100");

  RenderResult res;
  Json& stats = res.stats;
  stats["what"] = opt.what;
  stats["inputs"] = points.size();
  std::vector<CellId> extent = points;
  std::ostringstream body;
  std::function<void(const Canvas&)> draw;

  if (opt.what == "tiling") {
    draw = [&](const Canvas&) {};
  } else if (opt.what == "path") {
    Json paths = Json::array();
    std::vector<D2Path> traced;
    for (const auto& [i, j] : opt.pairs) {
      const D2Path p = d2_path(points[i], points[j]);
      traced.push_back(p);
      extent.push_back(p.apex_p);
      extent.push_back(p.apex_q);
      paths.push_back({{"pair", pair_name(i, j)}, {"d1", d1(points[i], points[j])}, {"d2", p.length},
                       {"has_bridge", p.has_bridge}, {"level", p.level}});
    }
    stats["paths"] = paths;
    draw = [&, traced](const Canvas& cv) {
      for (const auto& p : traced) {
        std::vector<CellId> up = chain(p.start, p.apex_p), down = chain(p.end, p.apex_q);
        std::reverse(down.begin(), down.end());
        up.insert(up.end(), down.begin(), down.end());
        for (std::size_t k = 1; k < up.size(); ++k)
          if (up[k] != up[k - 1]) cv.line(body, up[k - 1], up[k], "stroke=\"#c0392b\" stroke-width=\"2\"");
      }
    };
  } else if (opt.what == "spanner") {
    const SpannerGraph g = build_spanner(points);
    for (const auto& v : g.vertices) extent.push_back(*v.cell);
    std::size_t bridges = 0;
    for (const auto& e : g.edges) bridges += e.kind == EdgeKind::Bridge ? 1 : 0;
    stats["vertices"] = g.vertices.size();
    stats["steiner"] = g.steiner_count();
    stats["edges"] = g.edges.size();
    stats["bridges"] = bridges;
    Json dist = Json::object();
    for (const auto& [i, j] : opt.pairs) {
      const double ds = dijkstra(g, g.input_vertex[i])[static_cast<std::size_t>(g.input_vertex[j])];
      dist[pair_name(i, j)] = {{"d_S", ds}, {"d1", d1(points[i], points[j])}, {"d2", d2(points[i], points[j])}};
    }
    stats["distances"] = dist;
    std::map<CellId, std::string> names(opt.labels.begin(), opt.labels.end());
    Json steiner = Json::array();
    std::size_t next = 1;
    std::vector<std::string> label(g.vertices.size());
    for (std::size_t i = 0; i < points.size(); ++i)
      if (label[static_cast<std::size_t>(g.input_vertex[i])].empty()) label[static_cast<std::size_t>(g.input_vertex[i])] = "p" + std::to_string(i + 1);
    for (std::size_t v = 0; v < g.vertices.size(); ++v) {
      if (g.vertices[v].role != VertexRole::Steiner) continue;
      auto it = names.find(*g.vertices[v].cell);
      label[v] = it != names.end() ? it->second : "s" + std::to_string(next++);
      steiner.push_back({{"label", label[v]}, {"cell", to_json(*g.vertices[v].cell)}});
    }
    stats["steiner_vertices"] = steiner;
    draw = [&, g, label](const Canvas& cv) {
      for (const auto& e : g.edges) {
        const std::string style = e.kind == EdgeKind::Bridge ? "stroke=\"#2471a3\" stroke-width=\"2\"" : "stroke=\"#000\" stroke-width=\"1.4\"";
        cv.line(body, *g.vertices[static_cast<std::size_t>(e.u)].cell, *g.vertices[static_cast<std::size_t>(e.v)].cell, style);
      }
      for (std::size_t v = 0; v < g.vertices.size(); ++v)
        cv.dot(body, *g.vertices[v].cell, g.vertices[v].role == VertexRole::Input, label[v]);
    };
  } else if (opt.what == "avd") {
    QuadTree t;
    if (opt.refined) {
      const AvdIndex ix = build_avd(points);
      const AvdStats st = avd_stats(ix);
      stats["max_representatives"] = st.max_representatives;
      stats["base_nodes"] = st.base_nodes;
      t = ix.tree;
    } else {
      t = QuadTree::build(points);
    }
    std::map<std::string, std::size_t> kinds;
    for (const auto& n : t.nodes()) {
      ++kinds[to_string(n.kind)];
      extent.push_back(n.cell);
    }
    stats["regions"] = t.size();
    stats["regions_by_kind"] = kinds;
    stats["refined"] = opt.refined;
    draw = [&, t](const Canvas& cv) {
      for (const auto& n : t.nodes()) {
        if (n.kind == NodeKind::Ordinary) continue;
        const std::string fill = n.kind == NodeKind::Leaf ? (n.highest ? "#f9e79f" : "#eaf2f8") : "#d5f5e3";
        cv.rect(body, n.cell, "fill=\"" + fill + "\" stroke=\"#555\" stroke-width=\"0.8\"");
      }
      for (const auto& n : t.nodes())
        if (n.kind == NodeKind::Compressed) cv.rect(body, t.node(n.children[0]).cell, "fill=\"none\" stroke=\"#1e8449\" stroke-width=\"1.2\"");
      for (std::size_t i = 0; i < points.size(); ++i) cv.dot(body, points[i], true, "p" + std::to_string(i + 1));
    };
  } else {
    throw InvalidInput("render: unknown drawing " + opt.what + " (tiling, path, spanner, avd)");
  }

  const Canvas cv(extent, opt.width);
  if (opt.what == "tiling" || opt.what == "path") cv.tiling(body);
  draw(cv);
  if (opt.what == "tiling" || opt.what == "path")
    for (std::size_t i = 0; i < points.size(); ++i) cv.dot(body, points[i], true, "p" + std::to_string(i + 1));

  std::vector<std::string> lines;
  std::istringstream ss(stats.dump(1));
  for (std::string l; std::getline(ss, l);) lines.push_back(l);
  const double top = cv.picture_height();
  const double height = top + 14.0 * static_cast<double>(lines.size()) + kMargin;
  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << opt.width << "\" height=\"" << num(height)
      << "\" font-family=\"monospace\">\n<rect width=\"100%\" height=\"100%\" fill=\"#fff\"/>\n"
      << body.str() << "<g font-size=\"11\" fill=\"#333\">\n";
  for (std::size_t k = 0; k < lines.size(); ++k) {
    std::string l = lines[k];
    for (std::size_t p = 0; (p = l.find_first_of("<>&", p)) != std::string::npos; ++p)
      l.replace(p, 1, l[p] == '<' ? "&lt;" : l[p] == '>' ? "&gt;" : "&amp;");
    out << "<text x=\"" << num(kMargin) << "\" y=\"" << num(top + 14.0 * static_cast<double>(k + 1)) << "\" xml:space=\"preserve\">"
        << l << "</text>\n";
  }
  out << "</g>\n</svg>\n";
  res.svg = out.str();
  return res;
}

}  // namespace hyptile
