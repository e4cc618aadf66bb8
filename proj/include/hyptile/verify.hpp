#pragma once

#include "hyptile/io.hpp"

#include <cstdint>

namespace hyptile {

struct VerifyOptions {
  int dim = 2;
  std::size_t n = 64;
  std::uint64_t seed = 1;
  std::size_t pairs = 2000;    // random pairs for the metric and distortion suites
  std::size_t queries = 2000;  // random queries for the quadtree and AVD suites
  int depth = 10;              // level range of the generated discrete set
};

/// Runs every oracle suite on sets generated from the seed. The report has
/// one object per module with its violation count and measured constants,
/// and "pass" when all violation counts are zero. No timings, so equal
/// options give byte-identical dumps.
Json run_verify(const VerifyOptions& opt);

}  // namespace hyptile
