#pragma once

#include <cstddef>
#include <vector>

#include <Eigen/Core>

#include "raa/geo.hpp"

namespace raa {

using Jacobian = Eigen::Matrix<double, Eigen::Dynamic, 3>;

/// Rotation by theta about the origin followed by translation (s_x, s_y).
struct RigidTransform2D {
  double theta = 0.0;
  double s_x = 0.0;
  double s_y = 0.0;

  static RigidTransform2D identity() { return {}; }

  /// Builds a transform with theta wrapped into (-pi, pi].
  static RigidTransform2D make(double theta, double s_x, double s_y);

  RigidTransform2D inverse() const;
  /// 3x3 homogeneous form; never stored, only handed out for inspection.
  Eigen::Matrix3d homogeneous() const;
};

struct TransformIncrement {
  double d_theta = 0.0;
  double d_sx = 0.0;
  double d_sy = 0.0;

  Eigen::Vector3d vector() const { return {d_theta, d_sx, d_sy}; }
  static TransformIncrement from(const Eigen::Vector3d& v) { return {v(0), v(1), v(2)}; }
};

/// Point coordinates stacked into one column, interleaved x1, y1, x2, y2, ...
class StackedCoords {
 public:
  StackedCoords() = default;
  explicit StackedCoords(Eigen::VectorXd values);
  explicit StackedCoords(const std::vector<LocalPoint>& pts);

  std::size_t m() const noexcept { return static_cast<std::size_t>(values_.size() / 2); }
  const Eigen::VectorXd& values() const noexcept { return values_; }
  LocalPoint point(std::size_t i) const;
  std::vector<LocalPoint> points() const;

 private:
  Eigen::VectorXd values_;
};

StackedCoords warp(const RigidTransform2D& t, const StackedCoords& pts);

/// Applies `outer` after `base`: warp(result, p) == increment(warp(base, p)).
RigidTransform2D compose(const TransformIncrement& outer, const RigidTransform2D& base);

/// d warp(t, p) / d(theta, s_x, s_y), one row pair per point.
Jacobian jacobian(const RigidTransform2D& t, const StackedCoords& pts);

}  // namespace raa
