#pragma once

#include "hyptile/integer.hpp"

#include <cstddef>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace hyptile {

class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Cell of the binary tiling: prod_j [k_j 2^i, (k_j+1) 2^i] x [2^i, 2^(i+1)].
struct CellId {
  int level = 0;
  std::vector<BigInt> coords;

  CellId() = default;
  CellId(int lev, std::vector<BigInt> k) : level(lev), coords(std::move(k)) {}

  int dim() const { return static_cast<int>(coords.size()) + 1; }

  friend bool operator==(const CellId& a, const CellId& b) {
    return a.level == b.level && a.coords == b.coords;
  }
  friend bool operator!=(const CellId& a, const CellId& b) { return !(a == b); }
  /// Level first, then coordinates lexicographically.
  friend bool operator<(const CellId& a, const CellId& b);
};

struct CellHash {
  std::size_t operator()(const CellId& c) const;
};

struct HPoint {
  std::vector<double> x;
  double z = 1.0;

  int dim() const { return static_cast<int>(x.size()) + 1; }
  friend bool operator==(const HPoint& a, const HPoint& b) { return a.z == b.z && a.x == b.x; }
};

struct MoveKind {
  enum class Type { Up, Down, Horizontal };
  Type type = Type::Up;
  int child_index = 0;      // Down only
  std::vector<int> offset;  // Horizontal only, entries in {-1,0,1}, not all zero
};

CellId make_cell(int level, std::initializer_list<long long> coords);
CellId root_cell(int dim);

CellId parent(const CellId& c);
/// Ancestor-or-self of c at level `level` >= c.level.
CellId ancestor_at(const CellId& c, int level);
/// True if a is an ancestor of d or equal to it.
bool is_ancestor_or_self(const CellId& a, const CellId& d);

/// The 2^(D-1) children, ordered lexicographically by offset (first axis most significant).
std::vector<CellId> children(const CellId& c);
/// Child with the given offset index in the order of children().
CellId child(const CellId& c, int index);
/// Index of c among the children of its parent.
int child_index(const CellId& c);

/// The 3^(D-1)-1 horizontal neighbors, diagonals included, ordered by offset.
std::vector<CellId> horizontal_neighbors(const CellId& c);
bool are_horizontal_neighbors(const CellId& a, const CellId& b);

CellId apply_move(const CellId& c, const MoveKind& m);

HPoint center(const CellId& c);

/// Cell containing p with half-open boxes [k 2^i, (k+1) 2^i) and z in [2^i, 2^(i+1)).
CellId cell_of(const HPoint& p);

/// Whether the x-box of `inner` lies inside the x-box of `outer` (levels ignored).
bool xbox_contains(const CellId& outer, const CellId& inner);
/// Whether x lies in the half-open x-box of c.
bool xbox_contains_point(const CellId& c, const std::vector<double>& x);

std::string to_string(const CellId& c);

}  // namespace hyptile
