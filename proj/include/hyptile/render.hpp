#pragma once

#include "hyptile/io.hpp"

#include <string>
#include <utility>
#include <vector>

namespace hyptile {

struct RenderOptions {
  std::string what = "spanner";  // tiling | path | spanner | avd
  bool refined = true;           // avd: draw T' rather than T
  std::vector<std::pair<std::size_t, std::size_t>> pairs;  // 0-based point pairs to trace or measure
  std::vector<std::pair<CellId, std::string>> labels;      // names for Steiner vertices
  int width = 800;
};

struct RenderResult {
  std::string svg;
  Json stats;
};

/// D=2 drawing with one horizontal band per level; the stats also appear
/// as a text block under the picture.
RenderResult render(const std::vector<CellId>& points, const RenderOptions& opt);

}  // namespace hyptile
