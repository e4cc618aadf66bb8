#pragma once

#include "hyptile/avd.hpp"
#include "hyptile/spanner.hpp"

#include <nlohmann/json.hpp>

#include <iosfwd>
#include <string>
#include <vector>

namespace hyptile {

using Json = nlohmann::json;  // object keys are kept sorted

enum class PointKind { Continuous, Discrete };

const char* to_string(PointKind k);

/// Contents of a JSON-lines point file.
struct PointSet {
  int dim = 2;
  PointKind kind = PointKind::Discrete;
  std::vector<HPoint> continuous;
  std::vector<CellId> discrete;

  std::size_t size() const { return kind == PointKind::Continuous ? continuous.size() : discrete.size(); }
};

/// Header {"dim": D, "kind": ...} then one point per line. Blank lines are skipped.
PointSet read_point_set(std::istream& in);
void write_point_set(std::ostream& out, const PointSet& s);
PointSet load_point_set(const std::string& path);
void save_point_set(const std::string& path, const PointSet& s);

/// Integers that fit in 64 bits are JSON numbers, larger ones decimal strings.
Json to_json(const BigInt& v);
BigInt bigint_from_json(const Json& j);
Json to_json(const CellId& c);
CellId cell_from_json(const Json& j);
Json to_json(const HPoint& p);
HPoint point_from_json(const Json& j);
Json to_json(const NormalizeTransform& t);
NormalizeTransform transform_from_json(const Json& j);

Json to_json(const QuadTree& t);
QuadTree quadtree_from_json(const Json& j);
Json to_json(const SpannerGraph& g);
SpannerGraph spanner_from_json(const Json& j);
Json to_json(const HyperbolicSpanner& s);
HyperbolicSpanner hyperbolic_spanner_from_json(const Json& j);
Json to_json(const AvdIndex& ix);
AvdIndex avd_from_json(const Json& j);

/// Lines "u v w", one per edge.
void write_edge_list(std::ostream& out, const SpannerGraph& g);

/// Two-space indented dump with a trailing newline.
std::string dump(const Json& j);
Json load_json(const std::string& path);

}  // namespace hyptile
