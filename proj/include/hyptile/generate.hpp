#pragma once

#include "hyptile/tiling.hpp"

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace hyptile {

/// x uniform in [0,1)^(D-1), log2 z uniform in [-depth, 0).
std::vector<HPoint> generate_uniform(int dim, std::size_t n, std::uint64_t seed, int depth = 8);

/// Level uniform in [-depth, -2], coordinates uniform among the cells of
/// that level inside [1/4,1/2)^(D-1).
std::vector<CellId> generate_stratified(int dim, std::size_t n, std::uint64_t seed, int depth = 10);

/// Uniform over all cells inside [1/4,1/2)^(D-1) at levels [-depth, -2], so
/// level -L is drawn with weight 2^((D-1)L). Equal hyperbolic volume per cell
/// makes the local density the same at every scale.
std::vector<CellId> generate_homogeneous(int dim, std::size_t n, std::uint64_t seed, int depth = 32);

struct Preset {
  std::string name;
  std::vector<CellId> points;
  std::vector<std::pair<CellId, std::string>> labels;  // extra vertex labels
  std::vector<std::pair<std::size_t, std::size_t>> pairs;  // point pairs to report
};

/// "two-paths": a pair with d1 = 5 and d2 = 6.
/// "steiner": six points whose spanner has Steiner vertices v1..v6.
/// "refinement": a small set for the refinement picture.
Preset preset(const std::string& name);
std::vector<std::string> preset_names();

}  // namespace hyptile
