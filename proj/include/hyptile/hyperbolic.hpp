#pragma once

#include "hyptile/tiling.hpp"

#include <cstdint>
#include <vector>

namespace hyptile {

double hyperbolic_distance(const HPoint& p, const HPoint& q);

CellId embed(const HPoint& p);

/// x -> scale * x + shift, z -> scale * z. An isometry of the halfspace.
struct NormalizeTransform {
  double scale = 1.0;
  std::vector<double> shift;

  HPoint apply(const HPoint& p) const;
};

struct NormalizedSet {
  NormalizeTransform transform;
  std::vector<HPoint> points;
};

/// Maps the set so that x lies in [1/4,1/2]^(D-1) and z < 2.
NormalizedSet normalize(const std::vector<HPoint>& points);

namespace bounds {
constexpr double kSlack = 1e-9;
/// d_H(p, center(cell_of(p))) <= 2 arsinh(sqrt(D)/4).
double embed_radius(int dim);
/// Window for d_H - ln2 d1 between cell centers: (-7 ln2, ln D + 2 + 6 ln2].
double centers_low(int dim);
double centers_high(int dim);
/// Window for d_H(p,q) - ln2 d1(b(p),b(q)) on arbitrary points.
double d1_low(int dim);
double d1_high(int dim);
/// Same with d2; the lower end moves down by 2 ln2.
double d2_low(int dim);
double d2_high(int dim);
/// Additive window for hyperbolic AVD answers.
double avd_window(int dim);
/// Additive window for (2k+3)-hop paths in the hyperbolic spanner.
double spanner_window(int dim, int k);
}  // namespace bounds

struct DistortionReport {
  std::size_t samples = 0;
  double d1_min = 0, d1_max = 0, d1_mean = 0;  // of d_H - ln2 d1
  double d2_min = 0, d2_max = 0, d2_mean = 0;  // of d_H - ln2 d2
  std::size_t violations = 0;
};

/// Samples `samples` pairs with a generator seeded by `seed`. Every pair is
/// used when samples >= n(n-1)/2.
DistortionReport distortion_report(const std::vector<HPoint>& points, std::size_t samples,
                                   std::uint64_t seed = 1);

}  // namespace hyptile
