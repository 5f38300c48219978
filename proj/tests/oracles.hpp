#pragma once

// Brute-force reference implementations used to check the library.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "raa/geo.hpp"

namespace oracle {

inline double haversine(double lat1, double lon1, double lat2, double lon2) {
  constexpr double r = 6378137.0;
  const double d2r = std::acos(-1.0) / 180.0;
  const double dlat = (lat2 - lat1) * d2r;
  const double dlon = (lon2 - lon1) * d2r;
  const double a = std::sin(dlat / 2) * std::sin(dlat / 2) +
                   std::cos(lat1 * d2r) * std::cos(lat2 * d2r) * std::sin(dlon / 2) *
                       std::sin(dlon / 2);
  return 2 * r * std::asin(std::sqrt(a));
}

/// Minimum total cost over every permutation, and the lexicographically
/// smallest permutation attaining it (exact comparison of sums computed in a
/// fixed order).
struct PermutationOptimum {
  double cost = std::numeric_limits<double>::infinity();
  std::vector<std::size_t> perm;
};

inline PermutationOptimum best_permutation(const Eigen::MatrixXd& c) {
  const auto n = static_cast<std::size_t>(c.rows());
  std::vector<std::size_t> p(n);
  std::iota(p.begin(), p.end(), 0);
  PermutationOptimum best;
  do {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += c(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(p[i]));
    if (s < best.cost) {
      best.cost = s;
      best.perm = p;
    }
  } while (std::next_permutation(p.begin(), p.end()));
  return best;
}

/// Exact transport cost between uniform measures by enumerating every basic
/// feasible solution of the transportation polytope.
inline double transport_by_vertices(const std::vector<raa::LocalPoint>& a,
                                    const std::vector<raa::LocalPoint>& b) {
  const std::size_t m = a.size();
  const std::size_t k = b.size();
  const std::size_t cells = m * k;
  const std::size_t basis = m + k - 1;
  Eigen::MatrixXd eq = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(m + k),
                                             static_cast<Eigen::Index>(cells));
  Eigen::VectorXd rhs(static_cast<Eigen::Index>(m + k));
  for (std::size_t i = 0; i < m; ++i) rhs(static_cast<Eigen::Index>(i)) = 1.0 / static_cast<double>(m);
  for (std::size_t j = 0; j < k; ++j) rhs(static_cast<Eigen::Index>(m + j)) = 1.0 / static_cast<double>(k);
  std::vector<double> cost(cells);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      const std::size_t cell = i * k + j;
      eq(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(cell)) = 1.0;
      eq(static_cast<Eigen::Index>(m + j), static_cast<Eigen::Index>(cell)) = 1.0;
      cost[cell] = std::hypot(a[i].x - b[j].x, a[i].y - b[j].y);
    }
  }

  double best = std::numeric_limits<double>::infinity();
  std::vector<bool> pick(cells, false);
  std::fill(pick.end() - static_cast<std::ptrdiff_t>(basis), pick.end(), true);
  do {
    std::vector<std::size_t> cols;
    for (std::size_t c = 0; c < cells; ++c) {
      if (pick[c]) cols.push_back(c);
    }
    Eigen::MatrixXd sub(eq.rows(), static_cast<Eigen::Index>(cols.size()));
    for (std::size_t c = 0; c < cols.size(); ++c) {
      sub.col(static_cast<Eigen::Index>(c)) = eq.col(static_cast<Eigen::Index>(cols[c]));
    }
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(sub);
    if (qr.rank() != static_cast<Eigen::Index>(cols.size())) continue;
    const Eigen::VectorXd x = qr.solve(rhs);
    if ((sub * x - rhs).norm() > 1e-12 || x.minCoeff() < -1e-12) continue;
    double total = 0.0;
    for (std::size_t c = 0; c < cols.size(); ++c) total += x(static_cast<Eigen::Index>(c)) * cost[cols[c]];
    best = std::min(best, total);
  } while (std::next_permutation(pick.begin(), pick.end()));
  return best;
}

/// Candidate arclengths by scanning integer arclengths: every maximal run of
/// admissible integers starts a grid at its first member. Valid when the
/// polyline length and every flagged arclength are integers.
inline std::vector<double> integer_walk(double length, const std::vector<double>& flagged,
                                        double spacing) {
  const auto admissible = [&](double s) {
    for (double x : flagged) {
      if (std::abs(s - x) < 50.0) return false;
    }
    return true;
  };
  std::vector<double> out;
  const auto n = static_cast<long>(std::llround(length));
  long s = 0;
  while (s <= n) {
    if (!admissible(static_cast<double>(s))) {
      ++s;
      continue;
    }
    long end = s;
    while (end + 1 <= n && admissible(static_cast<double>(end + 1))) ++end;
    for (double p = static_cast<double>(s); p <= static_cast<double>(end) + 1e-9; p += spacing) {
      out.push_back(p);
    }
    s = end + 1;
  }
  return out;
}

}  // namespace oracle
