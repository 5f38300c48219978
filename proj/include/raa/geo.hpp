#pragma once

#include <vector>

namespace raa {

/// WGS-84 coordinate in degrees.
struct GeoPoint {
  double lat = 0.0;
  double lon = 0.0;

  friend bool operator==(const GeoPoint&, const GeoPoint&) = default;
};

/// Coordinate in meters east (x) and north (y) of a frame origin.
struct LocalPoint {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const LocalPoint&, const LocalPoint&) = default;
};

inline constexpr double kEarthRadiusMeters = 6378137.0;
inline constexpr double kMaxFrameLatitudeDeg = 89.0;
inline constexpr double kMaxFrameDistanceMeters = 10000.0;

/// Throws InvalidArgument unless lat is in [-90, 90] and lon in [-180, 180].
void validate(const GeoPoint& p);

double distance(const LocalPoint& a, const LocalPoint& b);

/// Great-circle distance on the sphere of radius kEarthRadiusMeters.
double haversine_distance(const GeoPoint& a, const GeoPoint& b);

/// Local equirectangular frame about an origin. Accurate to well below a
/// centimeter at road-segment scale, which is all the solver needs.
class LocalFrame {
 public:
  /// Throws InvalidArgument for invalid points or |origin.lat| >= 89 degrees.
  explicit LocalFrame(const GeoPoint& origin);

  const GeoPoint& origin() const noexcept { return origin_; }
  double meters_per_deg_lat() const noexcept { return meters_per_deg_lat_; }
  double meters_per_deg_lon() const noexcept { return meters_per_deg_lon_; }

  /// Throws OutOfRange when p is more than 10 km from the origin.
  LocalPoint to_local(const GeoPoint& p) const;
  GeoPoint to_geo(const LocalPoint& q) const;

  std::vector<LocalPoint> to_local(const std::vector<GeoPoint>& pts) const;
  std::vector<GeoPoint> to_geo(const std::vector<LocalPoint>& pts) const;

 private:
  GeoPoint origin_;
  double meters_per_deg_lat_;
  double meters_per_deg_lon_;
};

inline LocalFrame make_frame(const GeoPoint& origin) { return LocalFrame(origin); }

/// Arithmetic mean of the coordinates; throws InvalidArgument on empty input.
GeoPoint centroid(const std::vector<GeoPoint>& pts);

}  // namespace raa
