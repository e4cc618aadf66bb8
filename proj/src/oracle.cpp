#include "hyptile/oracle.hpp"

#include "hyptile/hyperbolic.hpp"
#include "hyptile/metrics.hpp"

#include <algorithm>
#include <deque>
#include <unordered_map>

namespace hyptile {

bool CellGraphWindow::contains(const CellId& c) const {
  if (c.level < level_min || c.level > level_max) return false;
  const auto& box = boxes[static_cast<std::size_t>(c.level - level_min)];
  if (box.size() != c.coords.size()) return false;
  for (std::size_t j = 0; j < box.size(); ++j)
    if (c.coords[j] < box[j].first || c.coords[j] > box[j].second) return false;
  return true;
}

CellGraphWindow window_for(const CellId& p, const CellId& q, int slack, int extra_levels) {
  if (p.coords.size() != q.coords.size()) throw InvalidInput("window_for: dimension mismatch");
  CellGraphWindow w;
  w.level_min = std::min(p.level, q.level);
  w.level_max = std::max(bridge_level(p, q), std::max(p.level, q.level)) + extra_levels;
  for (int lev = w.level_min; lev <= w.level_max; ++lev) {
    std::vector<std::pair<BigInt, BigInt>> box;
    std::vector<const CellId*> chain;
    if (lev >= p.level) chain.push_back(&p);
    if (lev >= q.level) chain.push_back(&q);
    for (std::size_t j = 0; j < p.coords.size(); ++j) {
      BigInt lo, hi;
      bool first = true;
      for (const CellId* c : chain) {
        const BigInt k = floor_shift(c->coords[j], lev - c->level);
        if (first || k < lo) lo = k;
        if (first || k > hi) hi = k;
        first = false;
      }
      box.emplace_back(lo - slack, hi + slack);
    }
    w.boxes.push_back(std::move(box));
  }
  return w;
}

long d1_bfs(const CellId& p, const CellId& q, const CellGraphWindow& w) {
  if (!w.contains(p) || !w.contains(q)) throw InvalidInput("d1_bfs: endpoint outside window");
  if (p == q) return 0;
  std::unordered_map<CellId, long, CellHash> dist;
  std::deque<CellId> queue;
  dist.emplace(p, 0);
  queue.push_back(p);
  while (!queue.empty()) {
    CellId c = std::move(queue.front());
    queue.pop_front();
    const long dc = dist.at(c);
    std::vector<CellId> next = horizontal_neighbors(c);
    next.push_back(parent(c));
    for (auto& ch : children(c)) next.push_back(std::move(ch));
    for (auto& n : next) {
      if (!w.contains(n) || dist.count(n)) continue;
      if (n == q) return dc + 1;
      dist.emplace(n, dc + 1);
      queue.push_back(std::move(n));
    }
  }
  throw InvalidInput("d1_bfs: endpoints not connected inside window");
}

std::size_t nn_bruteforce(const std::vector<CellId>& points, const CellId& q, Metric metric) {
  if (points.empty()) throw InvalidInput("nn_bruteforce: empty point set");
  if (metric == Metric::DH) {
    std::vector<HPoint> hp;
    hp.reserve(points.size());
    for (const auto& c : points) hp.push_back(center(c));
    return nn_bruteforce(hp, center(q));
  }
  std::size_t best = 0;
  long best_d = 0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    const long d = metric == Metric::D1 ? d1(points[i], q) : d2(points[i], q);
    if (i == 0 || d < best_d) {
      best = i;
      best_d = d;
    }
  }
  return best;
}

std::size_t nn_bruteforce(const std::vector<HPoint>& points, const HPoint& q) {
  if (points.empty()) throw InvalidInput("nn_bruteforce: empty point set");
  std::size_t best = 0;
  double best_d = 0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    const double d = hyperbolic_distance(points[i], q);
    if (i == 0 || d < best_d) {
      best = i;
      best_d = d;
    }
  }
  return best;
}

CellQueryAnswer cell_query_scan(const std::vector<CellId>& stored, const CellId& box) {
  CellQueryAnswer ans;
  for (std::size_t i = 0; i < stored.size(); ++i) {
    const CellId& s = stored[i];
    if (xbox_contains(box, s) && (!ans.largest_contained || s.level > stored[*ans.largest_contained].level))
      ans.largest_contained = i;
    if (xbox_contains(s, box) && (!ans.smallest_containing || s.level < stored[*ans.smallest_containing].level))
      ans.smallest_containing = i;
  }
  return ans;
}

}  // namespace hyptile
