#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "raa/geo.hpp"
#include "raa/matchers.hpp"
#include "raa/rank1_solver.hpp"
#include "raa/road.hpp"

namespace raa {

/// Collected spot coordinates for one segment, with optional ground truth.
struct CollectedSet {
  std::string segment_id;
  std::vector<GeoPoint> points;
  std::optional<std::vector<GeoPoint>> ground_truth;
};

struct RectifiedSet {
  std::string segment_id;
  std::vector<GeoPoint> points;
  /// First candidate of the chosen window; empty for the global matchers.
  std::optional<std::size_t> window_start;
  double loss = 0.0;
  Method method = Method::Raa;
  /// The collected points were already within the threshold and returned as is.
  bool flagged_correct = false;
  /// Alignment loss of every window, indexed by start (RAA only).
  std::vector<double> window_losses;
};

inline constexpr double kDefaultThreshold = 10.0;

/// Brute-force window search: align the collected points with every run of M
/// consecutive candidates and keep the window with the lowest alignment loss.
/// Each window is solved in coordinates centred on its candidates' centroid.
/// Windows whose solve diverges score +inf. Throws InsufficientCandidates when
/// the segment has fewer candidates than collected points.
RectifiedSet raa_rectify(const CollectedSet& collected, const RoadSegment& segment,
                         double th = kDefaultThreshold, const SolverConfig& cfg = {},
                         unsigned threads = 1);

/// Runs `method` on one segment. RAA goes through raa_rectify; the baselines
/// snap to candidates through baseline_rectify.
RectifiedSet rectify(const CollectedSet& collected, const RoadSegment& segment, Method method,
                     double th = kDefaultThreshold, const SolverConfig& cfg = {},
                     unsigned threads = 1);

struct TranslationalNoise {
  double dx = 0.0;
  double dy = 0.0;
};

struct RotationalNoise {
  /// Radians, counter-clockwise about the centroid of the points.
  double angle = 0.0;
};

struct RandomNoise {
  /// Displacement magnitudes are drawn from U[0, bound] meters.
  double bound = 0.0;
  /// Share of points displaced.
  double fraction = 1.0;
};

using NoiseComponent = std::variant<TranslationalNoise, RotationalNoise, RandomNoise>;

/// One component is a plain noise model; several are applied in order (mixed).
struct NoiseSpec {
  std::vector<NoiseComponent> components;
  std::uint64_t seed = 0;

  /// Throws InvalidArgument on a negative bound or a fraction outside [0, 1].
  void validate() const;
};

/// Corrupts `truth` in the metric frame and converts back to degrees.
/// Random noise moves round(fraction * M) points picked by the seed, each by
/// U[0, bound] meters in a direction drawn from U[0, 2 pi).
std::vector<GeoPoint> inject_noise(const std::vector<GeoPoint>& truth, const NoiseSpec& spec,
                                   const LocalFrame& frame);

enum class SynthNoise {
  None,
  /// Each segment draws translational, rotational or mixed corruption.
  Taxonomy,
  /// Every segment gets translation, rotation and outliers together.
  Mixed,
};

struct SynthOptions {
  SynthNoise noise = SynthNoise::Taxonomy;
  /// Drift magnitude in meters, applied across the road direction.
  double translation = 4.0;
  /// Rotation magnitude in radians.
  double rotation = 0.087266462599716474;
  double outlier_fraction = 0.1;
  double outlier_bound = 20.0;
  double straight_mean_spots = 39.09;
  double curve_mean_spots = 58.58;
  /// Fixed spot count M instead of a draw around the mean.
  std::optional<std::size_t> spots;
  /// Fixed candidate count K instead of a draw in [2M, 3M].
  std::optional<std::size_t> candidates;
  std::optional<SpotKind> spot_kind;
  /// Share of segments whose end vertices are intersections.
  double intersection_share = 0.5;
};

struct SyntheticSegment {
  RoadSegment segment;
  CollectedSet collected;
  /// Start of the window the ground truth was taken from.
  std::size_t truth_window = 0;
};

/// Straight and circular-arc segments with ground truth taken from a random
/// candidate window and collected points corrupted per `options`. Identical
/// seeds give identical corpora.
std::vector<SyntheticSegment> synth_corpus(std::size_t n_straight, std::size_t n_curve,
                                           std::uint64_t seed, const SynthOptions& options = {});

}  // namespace raa
