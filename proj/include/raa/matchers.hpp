#pragma once

#include <cstddef>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "raa/geo.hpp"
#include "raa/road.hpp"

namespace raa {

struct Assignment {
  /// (collected_index, candidate_index), sorted by collected index.
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  double total_cost = 0.0;

  std::vector<std::size_t> targets() const;
};

/// Nearest candidate per collected point; ties go to the lower index.
Assignment ed_match(const std::vector<LocalPoint>& collected,
                    const std::vector<LocalPoint>& candidates);

/// Symmetric chamfer distance: sum of nearest-neighbour distances both ways.
double cd_distance(const std::vector<LocalPoint>& a, const std::vector<LocalPoint>& b);

/// Optimal bijection for a square cost matrix (shortest augmenting path,
/// O(n^3)). Among optimal assignments the lexicographically smallest pair list
/// is returned.
Assignment hungarian_assign(const Eigen::MatrixXd& cost);

/// Pairwise Euclidean distances, rows = a, columns = b.
Eigen::MatrixXd distance_matrix(const std::vector<LocalPoint>& a,
                                const std::vector<LocalPoint>& b);

struct TransportPlan {
  /// coupling(i, j): mass moved from collected i to candidate j.
  Eigen::MatrixXd coupling;
  double cost = 0.0;
};

/// Exact discrete optimal transport between uniform measures on `collected`
/// (weights 1/M) and `candidates` (weights 1/K) under Euclidean cost.
TransportPlan optimal_transport(const std::vector<LocalPoint>& collected,
                                const std::vector<LocalPoint>& candidates);

/// Wasserstein matching against the full candidate set. Each collected point
/// maps to the candidate receiving its largest mass share (ties to the lower
/// index); the second member is the transport cost in meters.
std::pair<Assignment, double> wd_match(const std::vector<LocalPoint>& collected,
                                       const std::vector<LocalPoint>& candidates);

enum class Method { Raa, Ed, Cd, Ha, Wd };

std::string_view to_string(Method m) noexcept;
std::optional<Method> parse_method(std::string_view s) noexcept;

struct BaselineResult {
  std::vector<LocalPoint> points;
  /// Chosen window for the windowed protocols (CD, HA).
  std::optional<std::size_t> window_start;
  double score = 0.0;
};

/// Snaps collected points onto candidates. ED and WD match against the full
/// candidate set; CD and HA slide a window of M consecutive candidates and keep
/// the lowest chamfer distance (CD) or assignment cost (HA), ties to the
/// smaller start. Throws InvalidArgument for Method::Raa.
BaselineResult baseline_rectify(const std::vector<LocalPoint>& collected,
                                const CandidateSet& candidates, Method method);

}  // namespace raa
