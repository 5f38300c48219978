#include "raa/geo.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "raa/errors.hpp"

namespace raa {

namespace {

constexpr double deg2rad(double d) { return d * std::numbers::pi / 180.0; }

}  // namespace

void validate(const GeoPoint& p) {
  if (!std::isfinite(p.lat) || !std::isfinite(p.lon) || p.lat < -90.0 || p.lat > 90.0 ||
      p.lon < -180.0 || p.lon > 180.0) {
    throw InvalidArgument("invalid GeoPoint (" + std::to_string(p.lat) + ", " +
                          std::to_string(p.lon) + ")");
  }
}

double distance(const LocalPoint& a, const LocalPoint& b) { return std::hypot(a.x - b.x, a.y - b.y); }

double haversine_distance(const GeoPoint& a, const GeoPoint& b) {
  const double dlat = deg2rad(b.lat - a.lat);
  const double dlon = deg2rad(b.lon - a.lon);
  const double s = std::sin(dlat / 2.0);
  const double t = std::sin(dlon / 2.0);
  const double h = s * s + std::cos(deg2rad(a.lat)) * std::cos(deg2rad(b.lat)) * t * t;
  return 2.0 * kEarthRadiusMeters * std::asin(std::min(1.0, std::sqrt(h)));
}

LocalFrame::LocalFrame(const GeoPoint& origin) : origin_(origin) {
  validate(origin);
  if (std::abs(origin.lat) >= kMaxFrameLatitudeDeg) {
    throw InvalidArgument("local frame degenerate at latitude " + std::to_string(origin.lat));
  }
  meters_per_deg_lat_ = std::numbers::pi * kEarthRadiusMeters / 180.0;
  meters_per_deg_lon_ = meters_per_deg_lat_ * std::cos(deg2rad(origin.lat));
}

LocalPoint LocalFrame::to_local(const GeoPoint& p) const {
  validate(p);
  const LocalPoint q{(p.lon - origin_.lon) * meters_per_deg_lon_,
                     (p.lat - origin_.lat) * meters_per_deg_lat_};
  if (std::hypot(q.x, q.y) > kMaxFrameDistanceMeters) {
    throw OutOfRange("point (" + std::to_string(p.lat) + ", " + std::to_string(p.lon) +
                     ") is farther than 10 km from the frame origin");
  }
  return q;
}

GeoPoint LocalFrame::to_geo(const LocalPoint& q) const {
  return {origin_.lat + q.y / meters_per_deg_lat_, origin_.lon + q.x / meters_per_deg_lon_};
}

std::vector<LocalPoint> LocalFrame::to_local(const std::vector<GeoPoint>& pts) const {
  std::vector<LocalPoint> out;
  out.reserve(pts.size());
  for (const auto& p : pts) out.push_back(to_local(p));
  return out;
}

std::vector<GeoPoint> LocalFrame::to_geo(const std::vector<LocalPoint>& pts) const {
  std::vector<GeoPoint> out;
  out.reserve(pts.size());
  for (const auto& q : pts) out.push_back(to_geo(q));
  return out;
}

GeoPoint centroid(const std::vector<GeoPoint>& pts) {
  if (pts.empty()) throw InvalidArgument("centroid of an empty point list");
  double lat = 0.0;
  double lon = 0.0;
  for (const auto& p : pts) {
    lat += p.lat;
    lon += p.lon;
  }
  const auto n = static_cast<double>(pts.size());
  return {lat / n, lon / n};
}

}  // namespace raa
