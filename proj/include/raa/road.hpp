#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "raa/geo.hpp"

namespace raa {

enum class SpotKind { Parallel, Angled30, Angled45, Angled60, Perpendicular };

enum class ShapeClass { Straight, Curve };

/// Distance between adjacent spots: 6 m for parallel, 3 m for angled and
/// perpendicular layouts.
double spot_spacing(SpotKind kind) noexcept;

std::string_view to_string(SpotKind kind) noexcept;
std::string_view to_string(ShapeClass shape) noexcept;
std::optional<SpotKind> parse_spot_kind(std::string_view s) noexcept;
std::optional<ShapeClass> parse_shape_class(std::string_view s) noexcept;

/// No spot may lie closer than this (in arclength) to an intersection.
inline constexpr double kIntersectionClearance = 50.0;

struct RoadSegment {
  std::string id;
  std::vector<GeoPoint> polyline;
  /// One flag per polyline vertex.
  std::vector<bool> intersection;
  SpotKind spot_kind = SpotKind::Parallel;
  ShapeClass shape = ShapeClass::Straight;

  double spacing() const noexcept { return spot_spacing(spot_kind); }
};

/// Checks vertex count, flag count, coordinate validity and Δd > 0.
/// Throws InvalidArgument.
void validate(const RoadSegment& segment);

/// Frame centred on the polyline centroid; all math for a segment runs here.
LocalFrame segment_frame(const RoadSegment& segment);

/// Total length of the polyline projected into the segment frame.
double segment_arclength(const RoadSegment& segment);

struct CandidateSet {
  std::string segment_id;
  std::vector<LocalPoint> points;
  /// Meters from the segment start, one per point.
  std::vector<double> arclengths;
  /// Index of the first candidate of every contiguous run. Runs are split by
  /// interior intersections; a segment without interior intersections has
  /// the single run {0}.
  std::vector<std::size_t> run_starts;
  double spacing = 0.0;
  LocalFrame frame;

  std::size_t size() const noexcept { return points.size(); }
};

/// Places candidates along the polyline at exact multiples of the spot
/// spacing. Each admissible arclength interval (outside every 50 m
/// intersection window) starts its own grid at its lower end.
/// Throws EmptyCandidates when no interval can host a candidate.
CandidateSet sample_candidates(const RoadSegment& segment);

/// Point at arclength s along a polyline given in local coordinates.
LocalPoint point_at_arclength(const std::vector<LocalPoint>& polyline, double s);

}  // namespace raa
