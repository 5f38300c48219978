#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "raa/geo.hpp"

namespace raa {

inline constexpr double kDefaultRecallTolerance = 0.5;

using PointLists = std::vector<std::vector<LocalPoint>>;

/// Pooled mean deviation in meters: the sum of all index-aligned point
/// distances divided by the total point count. Throws ShapeMismatch when the
/// list shapes differ.
double acd(const PointLists& pred, const PointLists& truth);

/// Mean over segments of the share of points within `tau` meters of their
/// ground truth. Segments weigh equally regardless of size.
double ar(const PointLists& pred, const PointLists& truth, double tau = kDefaultRecallTolerance);

enum class Direction { HigherBetter, LowerBetter };

/// Higher-better metrics: |noisy - clean| / clean. Lower-better metrics:
/// sqrt(|noisy - clean|) * clean. Reports in percent multiply the
/// higher-better value by 100.
/// Throws InvalidArgument when clean is zero for a higher-better metric.
double robustness_index(double r_noisy, double r_clean, Direction direction);

struct SegmentScore {
  std::string segment_id;
  double acd = 0.0;
  double ar = 0.0;
  std::size_t m = 0;
};

struct EvalReport {
  double acd = 0.0;
  double ar = 0.0;
  std::vector<SegmentScore> per_segment;
  std::size_t n_segments = 0;
};

/// Scores every segment and pools the results; `ids` names the segments in
/// the order of `pred` and `truth`.
EvalReport evaluate(const std::vector<std::string>& ids, const PointLists& pred,
                    const PointLists& truth, double tau = kDefaultRecallTolerance);

}  // namespace raa
