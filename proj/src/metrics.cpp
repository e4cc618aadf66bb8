#include "hyptile/metrics.hpp"

#include <algorithm>

namespace hyptile {

namespace {

void require_same_dim(const CellId& p, const CellId& q, const char* what) {
  if (p.coords.size() != q.coords.size() || p.coords.empty())
    throw InvalidInput(std::string(what) + ": dimension mismatch");
}

// Smallest s with |floor(a/2^s) - floor(b/2^s)| <= bound. The difference of
// the halved values never exceeds the previous one once it is <= bound, so the
// set of valid shifts is upward closed.
int axis_shift(const BigInt& a, const BigInt& b, int bound) {
  BigInt diff = abs_value(a - b);
  if (diff <= bound) return 0;
  int s = std::max(0, msb(diff) - 3);
  for (;; ++s) {
    const BigInt d = abs_value(floor_shift(a, s) - floor_shift(b, s));
    if (d <= bound) return s;
  }
}

}  // namespace

BigInt lambda(const CellId& p, const CellId& q) {
  require_same_dim(p, q, "lambda");
  if (p.level != q.level) throw InvalidInput("lambda: cells must share a level");
  BigInt best = 0;
  for (std::size_t j = 0; j < p.coords.size(); ++j) best = std::max(best, abs_value(p.coords[j] - q.coords[j]));
  return best;
}

int min_shift_within(const CellId& a, const CellId& b, int bound) {
  require_same_dim(a, b, "min_shift_within");
  if (a.level != b.level) throw InvalidInput("min_shift_within: cells must share a level");
  int s = 0;
  for (std::size_t j = 0; j < a.coords.size(); ++j) s = std::max(s, axis_shift(a.coords[j], b.coords[j], bound));
  return s;
}

long d1(const CellId& p, const CellId& q) {
  require_same_dim(p, q, "d1");
  const CellId& lo = p.level <= q.level ? p : q;
  const CellId& hi = p.level <= q.level ? q : p;
  const CellId r = ancestor_at(lo, hi.level);
  const long vertical = static_cast<long>(hi.level) - lo.level;
  // Same-level recurrence: d1 = lambda when lambda <= 4, else 2 + d1(parents).
  const int m = min_shift_within(r, hi, 4);
  const BigInt lam = lambda(ancestor_at(r, r.level + m), ancestor_at(hi, hi.level + m));
  return vertical + 2L * m + lam.convert_to<long>();
}

D2Path d2_path(const CellId& p, const CellId& q) {
  require_same_dim(p, q, "d2_path");
  D2Path path;
  path.start = p;
  path.end = q;
  const bool p_low = p.level <= q.level;
  const CellId& lo = p_low ? p : q;
  const CellId& hi = p_low ? q : p;
  const CellId r = ancestor_at(lo, hi.level);
  if (r == hi) {
    path.apex_p = hi;
    path.apex_q = hi;
    path.has_bridge = false;
    path.length = static_cast<long>(hi.level) - lo.level;
    path.level = hi.level;
    return path;
  }
  const int m = min_shift_within(r, hi, 1);
  const int top = hi.level + m;
  path.apex_p = ancestor_at(p, top);
  path.apex_q = ancestor_at(q, top);
  path.has_bridge = true;
  path.length = (static_cast<long>(top) - lo.level) + (static_cast<long>(top) - hi.level) + 1;
  path.level = top;
  return path;
}

long d2(const CellId& p, const CellId& q) { return d2_path(p, q).length; }

int bridge_level(const CellId& p, const CellId& q) { return d2_path(p, q).level; }

int bridge_level_estimate(const CellId& p, const CellId& q) {
  require_same_dim(p, q, "bridge_level_estimate");
  if (is_ancestor_or_self(p, q) || is_ancestor_or_self(q, p))
    throw InvalidInput("bridge_level_estimate: cells are equal or ancestor-related");
  // Centers are (2k+1) 2^(i-1); express both in units of 2^(m-1), m the lower level.
  const int m = std::min(p.level, q.level);
  BigInt best = 0;
  for (std::size_t j = 0; j < p.coords.size(); ++j) {
    const BigInt xp = (2 * p.coords[j] + 1) << (p.level - m);
    const BigInt xq = (2 * q.coords[j] + 1) << (q.level - m);
    best = std::max(best, abs_value(xp - xq));
  }
  return msb(best) + m - 1;
}

}  // namespace hyptile
