#include "hyptile/generate.hpp"

#include "hyptile/random.hpp"

#include <cmath>

namespace hyptile {

std::vector<HPoint> generate_uniform(int dim, std::size_t n, std::uint64_t seed, int depth) {
  if (dim < 2) throw InvalidInput("generate: dim must be >= 2");
  if (n == 0) throw InvalidInput("generate: n must be positive");
  if (depth < 0 || depth > 1000) throw InvalidInput("generate: depth must be in [0, 1000]");
  Rng rng(seed);
  std::vector<HPoint> out(n);
  for (auto& p : out) {
    for (int j = 0; j < dim - 1; ++j) p.x.push_back(uniform01(rng));
    p.z = std::exp2(-depth * uniform01(rng));
  }
  return out;
}

std::vector<CellId> generate_stratified(int dim, std::size_t n, std::uint64_t seed, int depth) {
  if (dim < 2) throw InvalidInput("generate: dim must be >= 2");
  if (n == 0) throw InvalidInput("generate: n must be positive");
  if (depth < 2 || depth > 60) throw InvalidInput("generate: depth must be in [2, 60]");
  Rng rng(seed);
  std::vector<CellId> out(n);
  for (auto& c : out) {
    c.level = static_cast<int>(uniform_int(rng, -depth, -2));
    const std::int64_t w = std::int64_t{1} << (-c.level - 2);
    for (int j = 0; j < dim - 1; ++j) c.coords.emplace_back(w + uniform_int(rng, 0, w - 1));
  }
  return out;
}

std::vector<CellId> generate_homogeneous(int dim, std::size_t n, std::uint64_t seed, int depth) {
  if (dim < 2) throw InvalidInput("generate: dim must be >= 2");
  if (n == 0) throw InvalidInput("generate: n must be positive");
  if (depth < 2 || depth > 60) throw InvalidInput("generate: depth must be in [2, 60]");
  Rng rng(seed);
  const double up = std::ldexp(1.0, -(dim - 1));
  std::vector<CellId> out(n);
  for (auto& c : out) {
    int L;
    do {
      L = depth;
      while (L >= 2 && uniform01(rng) < up) --L;
    } while (L < 2);
    c.level = -L;
    const std::int64_t w = std::int64_t{1} << (L - 2);
    for (int j = 0; j < dim - 1; ++j) c.coords.emplace_back(w + uniform_int(rng, 0, w - 1));
  }
  return out;
}

std::vector<std::string> preset_names() { return {"two-paths", "steiner", "refinement"}; }

Preset preset(const std::string& name) {
  Preset p;
  p.name = name;
  if (name == "two-paths") {
    p.points = {make_cell(0, {0}), make_cell(1, {4})};
    p.pairs = {{0, 1}};
  } else if (name == "steiner") {
    p.points = {make_cell(-5, {28}), make_cell(-5, {10}), make_cell(-3, {3}),
                make_cell(-3, {0}),  make_cell(-4, {13}), make_cell(-4, {14})};
    p.labels = {{make_cell(-1, {1}), "v1"}, {make_cell(-2, {0}), "v2"}, {make_cell(-3, {2}), "v3"},
                {make_cell(-1, {0}), "v4"}, {make_cell(-2, {1}), "v5"}, {make_cell(-2, {3}), "v6"}};
    p.pairs = {{0, 1}, {1, 2}, {2, 5}, {2, 4}};
  } else if (name == "refinement") {
    p.points = {make_cell(-3, {2}), make_cell(-9, {190}), make_cell(-9, {200}), make_cell(-6, {30})};
  } else {
    throw InvalidInput("unknown preset " + name);
  }
  return p;
}

}  // namespace hyptile
