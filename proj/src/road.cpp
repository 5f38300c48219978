#include "raa/road.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "raa/errors.hpp"

namespace raa {

double spot_spacing(SpotKind kind) noexcept { return kind == SpotKind::Parallel ? 6.0 : 3.0; }

std::string_view to_string(SpotKind kind) noexcept {
  switch (kind) {
    case SpotKind::Parallel: return "parallel";
    case SpotKind::Angled30: return "angled30";
    case SpotKind::Angled45: return "angled45";
    case SpotKind::Angled60: return "angled60";
    case SpotKind::Perpendicular: return "perpendicular";
  }
  return "parallel";
}

std::string_view to_string(ShapeClass shape) noexcept {
  return shape == ShapeClass::Straight ? "straight" : "curve";
}

std::optional<SpotKind> parse_spot_kind(std::string_view s) noexcept {
  for (auto k : {SpotKind::Parallel, SpotKind::Angled30, SpotKind::Angled45, SpotKind::Angled60,
                 SpotKind::Perpendicular}) {
    if (to_string(k) == s) return k;
  }
  return std::nullopt;
}

std::optional<ShapeClass> parse_shape_class(std::string_view s) noexcept {
  if (s == "straight") return ShapeClass::Straight;
  if (s == "curve") return ShapeClass::Curve;
  return std::nullopt;
}

void validate(const RoadSegment& segment) {
  const auto& pl = segment.polyline;
  if (pl.size() < 2) {
    throw InvalidArgument("segment '" + segment.id + "' needs at least 2 polyline points");
  }
  if (segment.intersection.size() != pl.size()) {
    throw InvalidArgument("segment '" + segment.id + "' has " +
                          std::to_string(segment.intersection.size()) +
                          " intersection flags for " + std::to_string(pl.size()) + " points");
  }
  for (const auto& p : pl) validate(p);
  for (std::size_t i = 0; i + 1 < pl.size(); ++i) {
    if (pl[i] == pl[i + 1]) {
      throw InvalidArgument("segment '" + segment.id + "' repeats point " + std::to_string(i));
    }
  }
}

LocalFrame segment_frame(const RoadSegment& segment) { return LocalFrame(centroid(segment.polyline)); }

namespace {

std::vector<double> cumulative_arclength(const std::vector<LocalPoint>& pts) {
  std::vector<double> s(pts.size(), 0.0);
  for (std::size_t i = 1; i < pts.size(); ++i) s[i] = s[i - 1] + distance(pts[i - 1], pts[i]);
  return s;
}

// Arclengths within a micrometer compare as equal.
constexpr double kEndSlack = 1e-6;

bool clear_of(double s, const std::vector<double>& nodes) {
  return std::all_of(nodes.begin(), nodes.end(), [s](double n) {
    return std::abs(s - n) + kEndSlack >= kIntersectionClearance;
  });
}

}  // namespace

double segment_arclength(const RoadSegment& segment) {
  if (segment.polyline.empty()) return 0.0;
  const auto frame = segment_frame(segment);
  return cumulative_arclength(frame.to_local(segment.polyline)).back();
}

LocalPoint point_at_arclength(const std::vector<LocalPoint>& polyline, double s) {
  if (polyline.empty()) throw InvalidArgument("empty polyline");
  double walked = 0.0;
  for (std::size_t i = 0; i + 1 < polyline.size(); ++i) {
    const auto& a = polyline[i];
    const auto& b = polyline[i + 1];
    const double len = distance(a, b);
    if (len > 0.0 && s <= walked + len) {
      const double t = std::clamp((s - walked) / len, 0.0, 1.0);
      return {a.x + t * (b.x - a.x), a.y + t * (b.y - a.y)};
    }
    walked += len;
  }
  return polyline.back();
}

CandidateSet sample_candidates(const RoadSegment& segment) {
  validate(segment);
  const auto frame = segment_frame(segment);
  const auto local = frame.to_local(segment.polyline);
  const auto cum = cumulative_arclength(local);
  const double total = cum.back();
  const double spacing = segment.spacing();

  std::vector<double> nodes;
  for (std::size_t i = 0; i < local.size(); ++i) {
    if (segment.intersection[i]) nodes.push_back(cum[i]);
  }
  std::sort(nodes.begin(), nodes.end());

  // Admissible closed intervals between the open exclusion windows.
  std::vector<std::pair<double, double>> intervals;
  double lo = 0.0;
  for (double n : nodes) {
    const double hi = std::min(n - kIntersectionClearance, total);
    if (hi + kEndSlack >= lo) intervals.emplace_back(lo, std::max(lo, hi));
    lo = std::max(lo, n + kIntersectionClearance);
  }
  if (lo <= total + kEndSlack) intervals.emplace_back(lo, std::max(lo, total));

  double usable = 0.0;
  for (const auto& [a, b] : intervals) usable += b - a;
  if (intervals.empty() || usable + kEndSlack < spacing) throw EmptyCandidates(segment.id, usable);

  CandidateSet out{segment.id, {}, {}, {}, spacing, frame};
  for (const auto& [a, b] : intervals) {
    const std::size_t first = out.points.size();
    for (std::size_t k = 0;; ++k) {
      const double s = a + static_cast<double>(k) * spacing;
      if (s > b + kEndSlack || !clear_of(s, nodes)) break;
      out.arclengths.push_back(s);
      out.points.push_back(point_at_arclength(local, s));
    }
    if (out.points.size() > first) out.run_starts.push_back(first);
  }
  if (out.points.empty()) throw EmptyCandidates(segment.id, usable);
  return out;
}

}  // namespace raa
