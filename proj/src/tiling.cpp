#include "hyptile/tiling.hpp"

#include <boost/container_hash/hash.hpp>

#include <cmath>
#include <sstream>

namespace hyptile {

bool operator<(const CellId& a, const CellId& b) {
  if (a.level != b.level) return a.level < b.level;
  return a.coords < b.coords;
}

std::size_t CellHash::operator()(const CellId& c) const {
  std::size_t seed = std::hash<int>{}(c.level);
  for (const auto& k : c.coords) boost::hash_combine(seed, boost::hash<BigInt>{}(k));
  return seed;
}

CellId make_cell(int level, std::initializer_list<long long> coords) {
  std::vector<BigInt> k;
  for (long long v : coords) k.emplace_back(v);
  if (k.empty()) throw InvalidInput("make_cell: need at least one coordinate");
  return {level, std::move(k)};
}

CellId root_cell(int dim) {
  if (dim < 2) throw InvalidInput("root_cell: dimension must be >= 2");
  return {0, std::vector<BigInt>(static_cast<std::size_t>(dim - 1), BigInt(0))};
}

CellId parent(const CellId& c) { return ancestor_at(c, c.level + 1); }

CellId ancestor_at(const CellId& c, int level) {
  if (level < c.level) throw InvalidInput("ancestor_at: target level below cell");
  const int s = level - c.level;
  CellId r{level, {}};
  r.coords.reserve(c.coords.size());
  for (const auto& k : c.coords) r.coords.push_back(floor_shift(k, s));
  return r;
}

bool is_ancestor_or_self(const CellId& a, const CellId& d) {
  if (a.coords.size() != d.coords.size() || a.level < d.level) return false;
  const int s = a.level - d.level;
  for (std::size_t j = 0; j < a.coords.size(); ++j)
    if (floor_shift(d.coords[j], s) != a.coords[j]) return false;
  return true;
}

CellId child(const CellId& c, int index) {
  const std::size_t n = c.coords.size();
  CellId r{c.level - 1, {}};
  r.coords.reserve(n);
  for (std::size_t j = 0; j < n; ++j) {
    const int bit = (index >> (n - 1 - j)) & 1;
    r.coords.push_back((c.coords[j] << 1) + bit);
  }
  return r;
}

std::vector<CellId> children(const CellId& c) {
  const int count = 1 << c.coords.size();
  std::vector<CellId> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) out.push_back(child(c, i));
  return out;
}

int child_index(const CellId& c) {
  const std::size_t n = c.coords.size();
  int idx = 0;
  for (std::size_t j = 0; j < n; ++j) {
    const BigInt p = floor_shift(c.coords[j], 1);
    idx = (idx << 1) | (c.coords[j] != (p << 1) ? 1 : 0);
  }
  return idx;
}

std::vector<CellId> horizontal_neighbors(const CellId& c) {
  const std::size_t n = c.coords.size();
  std::size_t total = 1;
  for (std::size_t j = 0; j < n; ++j) total *= 3;
  std::vector<CellId> out;
  out.reserve(total - 1);
  for (std::size_t code = 0; code < total; ++code) {
    std::size_t t = code;
    std::vector<int> off(n);
    for (std::size_t j = n; j-- > 0;) {
      off[j] = static_cast<int>(t % 3) - 1;
      t /= 3;
    }
    bool zero = true;
    for (int o : off) zero = zero && o == 0;
    if (zero) continue;
    CellId r{c.level, c.coords};
    for (std::size_t j = 0; j < n; ++j) r.coords[j] += off[j];
    out.push_back(std::move(r));
  }
  return out;
}

bool are_horizontal_neighbors(const CellId& a, const CellId& b) {
  if (a.level != b.level || a.coords.size() != b.coords.size() || a == b) return false;
  for (std::size_t j = 0; j < a.coords.size(); ++j) {
    const BigInt d = a.coords[j] - b.coords[j];
    if (d > 1 || d < -1) return false;
  }
  return true;
}

CellId apply_move(const CellId& c, const MoveKind& m) {
  switch (m.type) {
    case MoveKind::Type::Up:
      return parent(c);
    case MoveKind::Type::Down:
      if (m.child_index < 0 || m.child_index >= (1 << c.coords.size()))
        throw InvalidInput("apply_move: child index out of range");
      return child(c, m.child_index);
    case MoveKind::Type::Horizontal: {
      if (m.offset.size() != c.coords.size()) throw InvalidInput("apply_move: offset dimension mismatch");
      bool zero = true;
      CellId r = c;
      for (std::size_t j = 0; j < m.offset.size(); ++j) {
        if (m.offset[j] < -1 || m.offset[j] > 1) throw InvalidInput("apply_move: offset entry out of range");
        zero = zero && m.offset[j] == 0;
        r.coords[j] += m.offset[j];
      }
      if (zero) throw InvalidInput("apply_move: zero horizontal offset");
      return r;
    }
  }
  throw InvalidInput("apply_move: unknown move");
}

HPoint center(const CellId& c) {
  HPoint p;
  p.x.reserve(c.coords.size());
  for (const auto& k : c.coords) p.x.push_back(std::ldexp(to_double(k) + 0.5, c.level));
  p.z = std::ldexp(3.0, c.level - 1);
  return p;
}

CellId cell_of(const HPoint& p) {
  if (!(p.z > 0) || !std::isfinite(p.z)) throw InvalidInput("cell_of: z must be positive and finite");
  if (p.x.empty()) throw InvalidInput("cell_of: need at least one horizontal coordinate");
  int e = 0;
  std::frexp(p.z, &e);  // z in [2^(e-1), 2^e)
  CellId c{e - 1, {}};
  c.coords.reserve(p.x.size());
  for (double v : p.x) c.coords.push_back(floor_scaled(v, c.level));
  return c;
}

bool xbox_contains(const CellId& outer, const CellId& inner) {
  return is_ancestor_or_self(outer, inner);
}

bool xbox_contains_point(const CellId& c, const std::vector<double>& x) {
  if (x.size() != c.coords.size()) return false;
  for (std::size_t j = 0; j < x.size(); ++j)
    if (floor_scaled(x[j], c.level) != c.coords[j]) return false;
  return true;
}

std::string to_string(const CellId& c) {
  std::ostringstream os;
  os << "(" << c.level << ",[";
  for (std::size_t j = 0; j < c.coords.size(); ++j) os << (j ? "," : "") << c.coords[j];
  os << "])";
  return os.str();
}

}  // namespace hyptile
