#include "hyptile/hyperbolic.hpp"

#include "hyptile/metrics.hpp"
#include "hyptile/random.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace hyptile {

double hyperbolic_distance(const HPoint& p, const HPoint& q) {
  if (p.x.size() != q.x.size()) throw InvalidInput("hyperbolic_distance: dimension mismatch");
  if (!(p.z > 0) || !(q.z > 0)) throw InvalidInput("hyperbolic_distance: z must be positive");
  double sq = (p.z - q.z) * (p.z - q.z);
  for (std::size_t j = 0; j < p.x.size(); ++j) sq += (p.x[j] - q.x[j]) * (p.x[j] - q.x[j]);
  if (sq == 0.0) return 0.0;
  return 2.0 * std::asinh(0.5 * std::sqrt(sq) / (std::sqrt(p.z) * std::sqrt(q.z)));
}

CellId embed(const HPoint& p) { return cell_of(p); }

HPoint NormalizeTransform::apply(const HPoint& p) const {
  if (p.x.size() != shift.size()) throw InvalidInput("normalize: dimension mismatch");
  HPoint r;
  r.x.resize(p.x.size());
  for (std::size_t j = 0; j < p.x.size(); ++j) r.x[j] = scale * p.x[j] + shift[j];
  r.z = scale * p.z;
  return r;
}

NormalizedSet normalize(const std::vector<HPoint>& points) {
  if (points.empty()) throw InvalidInput("normalize: empty point set");
  const std::size_t n = points[0].x.size();
  if (n == 0) throw InvalidInput("normalize: need at least one horizontal coordinate");
  std::vector<double> lo(n, std::numeric_limits<double>::infinity());
  std::vector<double> hi(n, -std::numeric_limits<double>::infinity());
  double zmax = 0;
  for (const auto& p : points) {
    if (p.x.size() != n) throw InvalidInput("normalize: dimension mismatch");
    if (!(p.z > 0) || !std::isfinite(p.z)) throw InvalidInput("normalize: z must be positive and finite");
    for (std::size_t j = 0; j < n; ++j) {
      if (!std::isfinite(p.x[j])) throw InvalidInput("normalize: non-finite coordinate");
      lo[j] = std::min(lo[j], p.x[j]);
      hi[j] = std::max(hi[j], p.x[j]);
    }
    zmax = std::max(zmax, p.z);
  }
  double diam = 0;
  for (std::size_t j = 0; j < n; ++j) diam = std::max(diam, hi[j] - lo[j]);
  const double eps = 1e-300;
  NormalizedSet out;
  out.transform.scale = std::min({1.0, 1.9 / zmax, 0.25 / std::max(diam, eps)});
  out.transform.shift.resize(n);
  for (std::size_t j = 0; j < n; ++j) out.transform.shift[j] = 0.25 - out.transform.scale * lo[j];
  out.points.reserve(points.size());
  for (const auto& p : points) {
    HPoint t = out.transform.apply(p);
    // Rounding can push a coordinate a few ulps past the box.
    for (auto& v : t.x) v = std::clamp(v, 0.25, 0.5);
    out.points.push_back(std::move(t));
  }
  return out;
}

namespace bounds {
namespace {
const double kLn2 = std::log(2.0);
}
double embed_radius(int dim) { return 2.0 * std::asinh(std::sqrt(static_cast<double>(dim)) / 4.0); }
double centers_low(int) { return -7 * kLn2; }
double centers_high(int dim) { return std::log(dim) + 2 + 6 * kLn2; }
double d1_low(int dim) { return -(2 * std::log(dim) + 7 * kLn2); }
double d1_high(int dim) { return 3 * std::log(dim) + 2 + 6 * kLn2; }
double d2_low(int dim) { return d1_low(dim) - 2 * kLn2; }
double d2_high(int dim) { return d1_high(dim); }
double avd_window(int dim) { return 2 * d1_high(dim) + 2 * kLn2 + 2 * std::log(dim); }
double spanner_window(int dim, int k) { return (2 * k + 3) * (d1_high(dim) + 2 * kLn2); }
}  // namespace bounds

DistortionReport distortion_report(const std::vector<HPoint>& points, std::size_t samples, std::uint64_t seed) {
  if (points.size() < 2) throw InvalidInput("distortion_report: need at least two points");
  const int dim = points[0].dim();
  const double ln2 = std::log(2.0);
  std::vector<CellId> cells;
  cells.reserve(points.size());
  for (const auto& p : points) cells.push_back(embed(p));

  DistortionReport rep;
  rep.d1_min = rep.d2_min = std::numeric_limits<double>::infinity();
  rep.d1_max = rep.d2_max = -std::numeric_limits<double>::infinity();
  double s1 = 0, s2 = 0;
  auto visit = [&](std::size_t a, std::size_t b) {
    const double dh = hyperbolic_distance(points[a], points[b]);
    const double e1 = dh - ln2 * static_cast<double>(d1(cells[a], cells[b]));
    const double e2 = dh - ln2 * static_cast<double>(d2(cells[a], cells[b]));
    rep.d1_min = std::min(rep.d1_min, e1);
    rep.d1_max = std::max(rep.d1_max, e1);
    rep.d2_min = std::min(rep.d2_min, e2);
    rep.d2_max = std::max(rep.d2_max, e2);
    s1 += e1;
    s2 += e2;
    const bool bad1 = e1 < bounds::d1_low(dim) - bounds::kSlack || e1 > bounds::d1_high(dim) + bounds::kSlack;
    const bool bad2 = e2 < bounds::d2_low(dim) - bounds::kSlack || e2 > bounds::d2_high(dim) + bounds::kSlack;
    if (bad1 || bad2) ++rep.violations;
    ++rep.samples;
  };

  const std::size_t n = points.size();
  if (samples >= n * (n - 1) / 2) {
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = a + 1; b < n; ++b) visit(a, b);
  } else {
    Rng rng(seed);
    for (std::size_t s = 0; s < samples; ++s) {
      const auto a = static_cast<std::size_t>(uniform_int(rng, 0, static_cast<std::int64_t>(n) - 1));
      auto b = static_cast<std::size_t>(uniform_int(rng, 0, static_cast<std::int64_t>(n) - 2));
      if (b >= a) ++b;
      visit(a, b);
    }
  }
  rep.d1_mean = s1 / static_cast<double>(rep.samples);
  rep.d2_mean = s2 / static_cast<double>(rep.samples);
  return rep;
}

}  // namespace hyptile
