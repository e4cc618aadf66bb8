#pragma once

#include "hyptile/tiling.hpp"

namespace hyptile {

/// The canonical d2-path: up-run from start, optional bridge, down-run to end.
struct D2Path {
  CellId start;
  CellId end;
  CellId apex_p;  // ancestor-or-self of start
  CellId apex_q;  // ancestor-or-self of end
  bool has_bridge = false;
  long length = 0;
  int level = 0;  // lev(p,q): bridge level, or the level of the ancestor endpoint
};

/// max_j |k_j(p) - k_j(q)|; requires equal levels.
BigInt lambda(const CellId& p, const CellId& q);

long d1(const CellId& p, const CellId& q);
D2Path d2_path(const CellId& p, const CellId& q);
long d2(const CellId& p, const CellId& q);
/// lev(p,q) as recorded by d2_path.
int bridge_level(const CellId& p, const CellId& q);

/// floor(log2 ||x(p) - x(q)||_inf) over cell centers, in exact arithmetic.
int bridge_level_estimate(const CellId& p, const CellId& q);

/// Smallest s >= 0 such that the ancestors s levels up of two same-level
/// cells differ by at most `bound` on every axis.
int min_shift_within(const CellId& a, const CellId& b, int bound);

}  // namespace hyptile
