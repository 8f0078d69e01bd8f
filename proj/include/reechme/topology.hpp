#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "reechme/energy_model.hpp"
#include "reechme/errors.hpp"
#include "reechme/rng.hpp"

namespace reechme {

struct Point {
  Meters x = 0.0;
  Meters y = 0.0;

  friend bool operator==(const Point&, const Point&) = default;
};

inline Meters distance(Point a, Point b) noexcept { return std::hypot(a.x - b.x, a.y - b.y); }

struct FieldSpec {
  Meters width = 100.0;
  Meters height = 100.0;
  Point sink{50.0, 50.0};

  bool contains(Point p) const noexcept {
    return p.x >= 0.0 && p.x <= width && p.y >= 0.0 && p.y <= height;
  }

  void validate() const {
    if (!(std::isfinite(width) && width > 0.0)) throw ConfigError("field_width", "must be finite and > 0");
    if (!(std::isfinite(height) && height > 0.0)) throw ConfigError("field_height", "must be finite and > 0");
    if (!(sink.x >= 0.0 && sink.x <= width)) throw ConfigError("sink_x", "sink must lie inside the field");
    if (!(sink.y >= 0.0 && sink.y <= height)) throw ConfigError("sink_y", "sink must lie inside the field");
  }
};

enum class RegionId : std::uint8_t { R1 = 1, R2, R3, R4, R5, R6, R7, R8, R9 };

inline constexpr std::size_t kRegionCount = 9;

inline constexpr int region_number(RegionId id) noexcept { return static_cast<int>(id); }
inline constexpr std::size_t region_index(RegionId id) noexcept { return static_cast<std::size_t>(id) - 1; }
inline std::string to_string(RegionId id) { return "R" + std::to_string(region_number(id)); }

enum class RoutingMode : std::uint8_t { direct, clustered };

/// Half-open interval [lo, hi), closed at hi when hi is the field edge.
struct Span {
  Meters lo = 0.0;
  Meters hi = 0.0;
  bool closed_hi = false;

  bool contains(Meters v) const noexcept { return v >= lo && (v < hi || (closed_hi && v == hi)); }
  Meters length() const noexcept { return hi - lo; }

  /// Map u in [0, 1) into the span. Rounding can land lo + u*len on hi,
  /// which an open span excludes, so that case is pulled back by one ulp.
  Meters sample(double u) const noexcept {
    Meters v = lo + u * length();
    if (v >= hi && !closed_hi) v = std::nextafter(hi, lo);
    return v;
  }
};

struct Region {
  RegionId id = RegionId::R1;
  Span x;
  Span y;
  std::uint32_t quota = 0;
  RoutingMode routing = RoutingMode::clustered;

  bool contains(Point p) const noexcept { return x.contains(p.x) && y.contains(p.y); }
  double area() const noexcept { return x.length() * y.length(); }
};

using RegionQuotas = std::array<std::uint32_t, kRegionCount>;

inline constexpr RegionQuotas kDefaultQuotas{20, 10, 10, 10, 10, 10, 10, 10, 10};

/// The nine-region partition, indexed R1..R9.
struct RegionMap {
  FieldSpec field;
  std::array<Region, kRegionCount> regions;

  const Region& operator[](RegionId id) const { return regions[region_index(id)]; }
  auto begin() const { return regions.begin(); }
  auto end() const { return regions.end(); }

  std::uint32_t node_count() const {
    return std::accumulate(regions.begin(), regions.end(), std::uint32_t{0},
                           [](std::uint32_t acc, const Region& r) { return acc + r.quota; });
  }
};

/// Partition the field into the inner square R1 and the eight outer regions.
/// Boundaries are fractions of the field size, so non-default fields scale.
inline RegionMap build_regions(const FieldSpec& field, const RegionQuotas& quotas = kDefaultQuotas) {
  field.validate();
  struct Fractions {
    double x0, x1, y0, y1;
  };
  // R3 spans x in [0, 0.5) so the top band has no gap at (25-50, 75-100).
  static constexpr std::array<Fractions, kRegionCount> kLayout{{
      {0.25, 0.75, 0.25, 0.75},  // R1
      {0.50, 1.00, 0.75, 1.00},  // R2
      {0.00, 0.50, 0.75, 1.00},  // R3
      {0.00, 0.25, 0.50, 0.75},  // R4
      {0.00, 0.25, 0.25, 0.50},  // R5
      {0.00, 0.50, 0.00, 0.25},  // R6
      {0.50, 1.00, 0.00, 0.25},  // R7
      {0.75, 1.00, 0.25, 0.50},  // R8
      {0.75, 1.00, 0.50, 0.75},  // R9
  }};

  RegionMap map{field, {}};
  for (std::size_t i = 0; i < kRegionCount; ++i) {
    const auto& f = kLayout[i];
    Region& r = map.regions[i];
    r.id = static_cast<RegionId>(i + 1);
    r.x = Span{f.x0 * field.width, f.x1 * field.width, f.x1 == 1.0};
    r.y = Span{f.y0 * field.height, f.y1 * field.height, f.y1 == 1.0};
    r.quota = quotas[i];
    r.routing = i == 0 ? RoutingMode::direct : RoutingMode::clustered;
  }
  return map;
}

/// Region containing `p`. R1 is tested first; half-open spans make the
/// answer unique for every point of the field.
inline RegionId locate_region(const RegionMap& map, Point p) {
  if (!map.field.contains(p)) {
    throw OutOfFieldError("point (" + std::to_string(p.x) + ", " + std::to_string(p.y) + ") is outside the field");
  }
  for (const Region& r : map) {
    if (r.contains(p)) return r.id;
  }
  throw OutOfFieldError("point is not covered by any region");
}

using NodeId = std::uint32_t;

enum class NodeRole : std::uint8_t { normal, cluster_head, direct };

struct NodeState {
  NodeId id = 0;
  Point position;
  RegionId region = RegionId::R1;
  Joules residual_energy = 0.0;
  NodeRole role = NodeRole::normal;

  bool alive() const noexcept { return residual_energy > 0.0; }
};

/// Scatter each region's quota uniformly over its rectangle. Ids run
/// region-major (R1 first); each node consumes one draw for x then one for y.
template <UniformSource G>
std::vector<NodeState> deploy_nodes(const RegionMap& map, Joules initial_energy, G& rng) {
  std::vector<NodeState> nodes;
  nodes.reserve(map.node_count());
  for (const Region& r : map) {
    for (std::uint32_t k = 0; k < r.quota; ++k) {
      NodeState n;
      n.id = static_cast<NodeId>(nodes.size());
      n.position.x = r.x.sample(rng.uniform());
      n.position.y = r.y.sample(rng.uniform());
      n.region = r.id;
      n.residual_energy = initial_energy;
      n.role = r.routing == RoutingMode::direct ? NodeRole::direct : NodeRole::normal;
      nodes.push_back(n);
    }
  }
  return nodes;
}

}  // namespace reechme
