#include "raa/transform.hpp"

#include <cmath>
#include <numbers>
#include <utility>

#include "raa/errors.hpp"

namespace raa {

namespace {

double wrap_angle(double a) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  a = std::remainder(a, two_pi);
  if (a <= -std::numbers::pi) a += two_pi;
  return a;
}

}  // namespace

RigidTransform2D RigidTransform2D::make(double theta, double s_x, double s_y) {
  return {wrap_angle(theta), s_x, s_y};
}

RigidTransform2D RigidTransform2D::inverse() const {
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  // R(-theta) * (-s)
  return make(-theta, -(c * s_x + s * s_y), -(-s * s_x + c * s_y));
}

Eigen::Matrix3d RigidTransform2D::homogeneous() const {
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  Eigen::Matrix3d h;
  h << c, -s, s_x, s, c, s_y, 0.0, 0.0, 1.0;
  return h;
}

StackedCoords::StackedCoords(Eigen::VectorXd values) : values_(std::move(values)) {
  if (values_.size() % 2 != 0) throw InvalidArgument("stacked coordinates need even length");
}

StackedCoords::StackedCoords(const std::vector<LocalPoint>& pts)
    : values_(2 * static_cast<Eigen::Index>(pts.size())) {
  for (std::size_t i = 0; i < pts.size(); ++i) {
    values_(2 * i) = pts[i].x;
    values_(2 * i + 1) = pts[i].y;
  }
}

LocalPoint StackedCoords::point(std::size_t i) const { return {values_(2 * i), values_(2 * i + 1)}; }

std::vector<LocalPoint> StackedCoords::points() const {
  std::vector<LocalPoint> out(m());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = point(i);
  return out;
}

StackedCoords warp(const RigidTransform2D& t, const StackedCoords& pts) {
  const double c = std::cos(t.theta);
  const double s = std::sin(t.theta);
  const auto& v = pts.values();
  Eigen::VectorXd out(v.size());
  for (Eigen::Index i = 0; i + 1 < v.size(); i += 2) {
    const double x = v(i);
    const double y = v(i + 1);
    out(i) = x * c - y * s + t.s_x;
    out(i + 1) = x * s + y * c + t.s_y;
  }
  return StackedCoords(std::move(out));
}

RigidTransform2D compose(const TransformIncrement& outer, const RigidTransform2D& base) {
  const double c = std::cos(outer.d_theta);
  const double s = std::sin(outer.d_theta);
  return RigidTransform2D::make(base.theta + outer.d_theta,
                                c * base.s_x - s * base.s_y + outer.d_sx,
                                s * base.s_x + c * base.s_y + outer.d_sy);
}

Jacobian jacobian(const RigidTransform2D& t, const StackedCoords& pts) {
  const double c = std::cos(t.theta);
  const double s = std::sin(t.theta);
  const auto& v = pts.values();
  Jacobian j = Jacobian::Zero(v.size(), 3);
  for (Eigen::Index i = 0; i + 1 < v.size(); i += 2) {
    const double x = v(i);
    const double y = v(i + 1);
    j(i, 0) = -x * s - y * c;
    j(i + 1, 0) = x * c - y * s;
    j(i, 1) = 1.0;
    j(i + 1, 2) = 1.0;
  }
  return j;
}

}  // namespace raa
