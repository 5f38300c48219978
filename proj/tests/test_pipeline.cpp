#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include <doctest.h>

#include "raa/errors.hpp"
#include "raa/pipeline.hpp"

using namespace raa;

namespace {

RoadSegment straight_road(std::size_t k, SpotKind kind = SpotKind::Parallel) {
  const double len = static_cast<double>(k - 1) * spot_spacing(kind) + 0.5 * spot_spacing(kind);
  const LocalFrame f = make_frame({39.9, 116.4});
  RoadSegment s;
  s.id = "road";
  s.polyline = f.to_geo(std::vector<LocalPoint>{{-len / 2, 0.0}, {0.0, 1.0}, {len / 2, 0.0}});
  s.intersection = {false, false, false};
  s.spot_kind = kind;
  return s;
}

// Candidate points of `window` with a transform and per-point noise applied
// in the segment frame.
CollectedSet plant(const CandidateSet& c, std::size_t start, std::size_t m, std::mt19937_64& rng,
                   double jitter, double angle = 0.0, double outlier_share = 0.0,
                   double outlier_len = 0.0) {
  std::vector<LocalPoint> pts(c.points.begin() + static_cast<std::ptrdiff_t>(start),
                              c.points.begin() + static_cast<std::ptrdiff_t>(start + m));
  LocalPoint mid{0.0, 0.0};
  for (const auto& p : pts) {
    mid.x += p.x / static_cast<double>(m);
    mid.y += p.y / static_cast<double>(m);
  }
  std::uniform_real_distribution<double> n(-jitter, jitter);
  std::uniform_real_distribution<double> dir(0.0, 2 * std::numbers::pi);
  const auto outliers = static_cast<std::size_t>(std::lround(outlier_share * static_cast<double>(m)));
  const std::size_t stride = outliers > 0 ? m / outliers : m + 1;
  for (std::size_t i = 0; i < m; ++i) {
    const double dx = pts[i].x - mid.x;
    const double dy = pts[i].y - mid.y;
    pts[i] = {mid.x + dx * std::cos(angle) - dy * std::sin(angle) + n(rng),
              mid.y + dx * std::sin(angle) + dy * std::cos(angle) + n(rng)};
    if (i % stride == 0 && i / stride < outliers) {
      const double a = dir(rng);
      pts[i].x += outlier_len * std::cos(a);
      pts[i].y += outlier_len * std::sin(a);
    }
  }
  return {c.segment_id, c.frame.to_geo(pts), std::nullopt};
}

std::vector<GeoPoint> window_geo(const CandidateSet& c, std::size_t start, std::size_t m) {
  return c.frame.to_geo(std::vector<LocalPoint>(
      c.points.begin() + static_cast<std::ptrdiff_t>(start),
      c.points.begin() + static_cast<std::ptrdiff_t>(start + m)));
}

double max_geo_gap(const std::vector<GeoPoint>& a, const std::vector<GeoPoint>& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, haversine_distance(a[i], b[i]));
  return worst;
}

}  // namespace

TEST_CASE("collected points already on the first window are returned unchanged") {
  const RoadSegment road = straight_road(30);
  const CandidateSet c = sample_candidates(road);
  const CollectedSet col{road.id, window_geo(c, 0, 12), std::nullopt};
  const RectifiedSet r = raa_rectify(col, road);
  CHECK(r.flagged_correct);
  CHECK(r.points == col.points);
  CHECK(r.window_start == std::size_t{0});
}

TEST_CASE("an exact copy of a later window is recovered") {
  const RoadSegment road = straight_road(30);
  const CandidateSet c = sample_candidates(road);
  const CollectedSet col{road.id, window_geo(c, 5, 12), std::nullopt};
  const RectifiedSet r = raa_rectify(col, road);
  CHECK_FALSE(r.flagged_correct);
  CHECK(r.window_start == std::size_t{5});
  CHECK(max_geo_gap(r.points, col.points) < 1e-6);
  CHECK(r.window_losses.size() == 30 - 12 + 1);
}

TEST_CASE("copies of window 5 with 2 m jitter are recovered") {
  const RoadSegment road = straight_road(30);
  const CandidateSet c = sample_candidates(road);
  int hits = 0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    std::mt19937_64 rng(seed);
    const RectifiedSet r = raa_rectify(plant(c, 5, 12, rng, 2.0), road, 1.0);
    hits += r.window_start == std::size_t{5} ? 1 : 0;
  }
  CHECK(hits == 20);
}

TEST_CASE("a rotated window with outliers is recovered") {
  const RoadSegment road = straight_road(40);
  const CandidateSet c = sample_candidates(road);
  int hits = 0;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    std::mt19937_64 rng(100 + seed);
    const CollectedSet col = plant(c, 11, 20, rng, 0.0, 5.0 * std::numbers::pi / 180.0, 0.1, 15.0);
    const RectifiedSet r = raa_rectify(col, road, 1.0);
    hits += r.window_start == std::size_t{11} && r.points == window_geo(c, 11, 20) ? 1 : 0;
  }
  CHECK(hits == 10);
}

TEST_CASE("the chosen window minimizes the recorded losses") {
  const RoadSegment road = straight_road(25, SpotKind::Angled45);
  const CandidateSet c = sample_candidates(road);
  std::mt19937_64 rng(7);
  const RectifiedSet r = raa_rectify(plant(c, 3, 10, rng, 1.0, 0.05), road, 1.0);
  REQUIRE(r.window_start.has_value());
  REQUIRE(r.window_losses.size() == c.size() - 10 + 1);
  const auto best = std::min_element(r.window_losses.begin(), r.window_losses.end());
  CHECK(*r.window_start == static_cast<std::size_t>(best - r.window_losses.begin()));
  CHECK(r.loss == *best);
  const auto expected = window_geo(c, *r.window_start, 10);
  CHECK(r.points == expected);
}

TEST_CASE("rectified points are candidates of the segment") {
  const RoadSegment road = straight_road(20);
  const CandidateSet c = sample_candidates(road);
  const auto all = c.frame.to_geo(c.points);
  std::mt19937_64 rng(8);
  const CollectedSet col = plant(c, 6, 8, rng, 2.0);
  for (Method m : {Method::Raa, Method::Ed, Method::Cd, Method::Ha, Method::Wd}) {
    const RectifiedSet r = rectify(col, road, m, 1.0);
    CHECK(r.method == m);
    REQUIRE(r.points.size() == 8);
    for (const auto& p : r.points) {
      const bool member = std::any_of(all.begin(), all.end(),
                                      [&](const GeoPoint& q) { return haversine_distance(p, q) < 1e-6; });
      CHECK(member);
    }
  }
}

TEST_CASE("raising the threshold never unflags a segment") {
  const RoadSegment road = straight_road(20);
  const CandidateSet c = sample_candidates(road);
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 5; ++trial) {
    const CollectedSet col = plant(c, static_cast<std::size_t>(trial), 10, rng, 1.5);
    bool seen = false;
    for (double th : {0.5, 2.0, 5.0, 10.0, 20.0, 40.0}) {
      const bool flagged = raa_rectify(col, road, th).flagged_correct;
      CHECK((!seen || flagged));
      seen = seen || flagged;
    }
  }
}

TEST_CASE("window search parallelism does not change the result") {
  const RoadSegment road = straight_road(30);
  const CandidateSet c = sample_candidates(road);
  std::mt19937_64 rng(10);
  const CollectedSet col = plant(c, 9, 12, rng, 1.0, 0.03);
  const RectifiedSet a = raa_rectify(col, road, 1.0, {}, 1);
  const RectifiedSet b = raa_rectify(col, road, 1.0, {}, 4);
  CHECK(a.window_losses == b.window_losses);
  CHECK(a.points == b.points);
}

TEST_CASE("too few candidates") {
  const RoadSegment road = straight_road(5);
  const CandidateSet c = sample_candidates(road);
  std::vector<LocalPoint> many(8, LocalPoint{0.0, 0.0});
  for (std::size_t i = 0; i < many.size(); ++i) many[i].x = static_cast<double>(i);
  const CollectedSet col{road.id, c.frame.to_geo(many), std::nullopt};
  CHECK_THROWS_AS(raa_rectify(col, road), InsufficientCandidates);
}

TEST_CASE("translational noise shifts every point exactly") {
  const LocalFrame f = make_frame({39.9, 116.4});
  const std::vector<LocalPoint> local{{0, 0}, {10, 5}, {-7, 3}};
  const auto out = inject_noise(f.to_geo(local), {{TranslationalNoise{3.0, -4.0}}, 1}, f);
  const auto back = f.to_local(out);
  for (std::size_t i = 0; i < local.size(); ++i) {
    CHECK(back[i].x == doctest::Approx(local[i].x + 3.0).epsilon(1e-9));
    CHECK(back[i].y == doctest::Approx(local[i].y - 4.0).epsilon(1e-9));
  }
}

TEST_CASE("a half turn swaps points mirrored through the centroid") {
  const LocalFrame f = make_frame({39.9, 116.4});
  const std::vector<LocalPoint> local{{-6, 2}, {0, 0}, {6, -2}};
  const auto back = f.to_local(inject_noise(f.to_geo(local), {{RotationalNoise{std::numbers::pi}}, 1}, f));
  CHECK(distance(back[0], local[2]) < 1e-6);
  CHECK(distance(back[2], local[0]) < 1e-6);
  CHECK(distance(back[1], local[1]) < 1e-6);
}

TEST_CASE("random noise magnitudes average half the bound") {
  const LocalFrame f = make_frame({39.9, 116.4});
  std::vector<LocalPoint> local;
  for (int i = 0; i < 4000; ++i) local.push_back({0.01 * i, 0.0});
  const auto truth = f.to_geo(local);
  const auto noisy = f.to_local(inject_noise(truth, {{RandomNoise{20.0, 1.0}}, 5}, f));
  double total = 0.0;
  double worst = 0.0;
  for (std::size_t i = 0; i < local.size(); ++i) {
    const double d = distance(noisy[i], local[i]);
    total += d;
    worst = std::max(worst, d);
  }
  CHECK(total / static_cast<double>(local.size()) == doctest::Approx(10.0).epsilon(0.05));
  CHECK(worst <= 20.0 + 1e-6);
}

TEST_CASE("random noise moves the requested share and is reproducible") {
  const LocalFrame f = make_frame({39.9, 116.4});
  std::vector<LocalPoint> local;
  for (int i = 0; i < 50; ++i) local.push_back({2.0 * i, 0.0});
  const auto truth = f.to_geo(local);
  const NoiseSpec spec{{RandomNoise{20.0, 0.1}}, 42};
  const auto a = inject_noise(truth, spec, f);
  const auto b = inject_noise(truth, spec, f);
  CHECK(a == b);
  const auto moved = std::count_if(a.begin(), a.end(), [&, i = std::size_t{0}](const GeoPoint& p) mutable {
    return haversine_distance(p, truth[i++]) > 1e-6;
  });
  CHECK(moved <= 5);
  CHECK(moved >= 4);
  CHECK(inject_noise(truth, {{RandomNoise{20.0, 0.1}}, 43}, f) != a);
}

TEST_CASE("noise validation") {
  const LocalFrame f = make_frame({39.9, 116.4});
  const std::vector<GeoPoint> pts{{39.9, 116.4}};
  CHECK_THROWS_AS(inject_noise(pts, {{RandomNoise{-1.0, 0.5}}, 1}, f), InvalidArgument);
  CHECK_THROWS_AS(inject_noise(pts, {{RandomNoise{1.0, 1.5}}, 1}, f), InvalidArgument);
  CHECK(inject_noise(pts, {{}, 1}, f) == pts);
}

TEST_CASE("synthetic corpus is reproducible and well formed") {
  const auto a = synth_corpus(6, 4, 77);
  const auto b = synth_corpus(6, 4, 77);
  REQUIRE(a.size() == 10);
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].segment.polyline == b[i].segment.polyline);
    CHECK(a[i].collected.points == b[i].collected.points);
    CHECK(a[i].truth_window == b[i].truth_window);

    const auto& s = a[i];
    CHECK(s.segment.shape == (i < 6 ? ShapeClass::Straight : ShapeClass::Curve));
    const CandidateSet c = sample_candidates(s.segment);
    const std::size_t m = s.collected.points.size();
    REQUIRE(s.collected.ground_truth.has_value());
    CHECK(s.collected.ground_truth->size() == m);
    CHECK(c.size() >= 2 * m);
    CHECK(c.size() <= 3 * m);
    REQUIRE(s.truth_window + m <= c.size());
    CHECK(max_geo_gap(*s.collected.ground_truth, window_geo(c, s.truth_window, m)) < 1e-6);
  }
  CHECK(synth_corpus(6, 4, 78)[0].collected.points != a[0].collected.points);
}

TEST_CASE("synthetic spot counts centre on the configured means") {
  SynthOptions o;
  o.noise = SynthNoise::None;
  const auto straight = synth_corpus(200, 0, 3, o);
  double total = 0.0;
  for (const auto& s : straight) total += static_cast<double>(s.collected.points.size());
  CHECK(std::abs(total / 200.0 - 39.09) < 0.2 * 39.09);
  for (const auto& s : straight) CHECK(s.collected.points == *s.collected.ground_truth);
}
