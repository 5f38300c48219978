#include "raa/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "raa/errors.hpp"
#include "raa/parallel.hpp"
#include "raa/random.hpp"

namespace raa {

namespace {

LocalPoint mean_point(const std::vector<LocalPoint>& pts, std::size_t first, std::size_t count) {
  LocalPoint c;
  for (std::size_t j = 0; j < count; ++j) {
    c.x += pts[first + j].x;
    c.y += pts[first + j].y;
  }
  c.x /= static_cast<double>(count);
  c.y /= static_cast<double>(count);
  return c;
}

std::vector<LocalPoint> shifted(const std::vector<LocalPoint>& pts, std::size_t first,
                                std::size_t count, const LocalPoint& origin) {
  std::vector<LocalPoint> out(count);
  for (std::size_t j = 0; j < count; ++j) {
    out[j] = {pts[first + j].x - origin.x, pts[first + j].y - origin.y};
  }
  return out;
}

std::vector<LocalPoint> slice(const std::vector<LocalPoint>& pts, std::size_t first,
                              std::size_t count) {
  return {pts.begin() + static_cast<std::ptrdiff_t>(first),
          pts.begin() + static_cast<std::ptrdiff_t>(first + count)};
}

}  // namespace

RectifiedSet raa_rectify(const CollectedSet& collected, const RoadSegment& segment, double th,
                         const SolverConfig& cfg, unsigned threads) {
  cfg.validate();
  if (!(th >= 0.0)) throw InvalidArgument("threshold must be non-negative");
  if (collected.points.empty()) throw InvalidArgument("collected set is empty");

  const CandidateSet cands = sample_candidates(segment);
  const std::vector<LocalPoint> r = cands.frame.to_local(collected.points);
  const std::size_t m = r.size();
  const std::size_t k = cands.size();
  if (k < m) throw InsufficientCandidates(k, m);

  RectifiedSet out;
  out.segment_id = collected.segment_id;
  out.method = Method::Raa;

  double d = 0.0;
  for (std::size_t j = 0; j < m; ++j) d += distance(r[j], cands.points[j]);
  d /= static_cast<double>(m);
  if (d < th) {
    out.points = collected.points;
    out.window_start = 0;
    out.flagged_correct = true;
    return out;
  }

  const std::size_t windows = k - m + 1;
  out.window_losses.assign(windows, std::numeric_limits<double>::infinity());
  parallel_for(windows, threads, [&](std::size_t i) {
    const LocalPoint c = mean_point(cands.points, i, m);
    const StackedCoords p(shifted(r, 0, m, c));
    const StackedCoords rd(shifted(cands.points, i, m, c));
    try {
      out.window_losses[i] = admm_solve(p, rd, cfg).loss;
    } catch (const NumericalFailure&) {
    } catch (const DegenerateGeometry&) {
    }
  });

  const auto best = std::min_element(out.window_losses.begin(), out.window_losses.end());
  if (!std::isfinite(*best)) {
    throw NumericalFailure("alignment failed for every window of segment '" +
                               collected.segment_id + "'",
                           cfg.max_iters);
  }
  const auto start = static_cast<std::size_t>(best - out.window_losses.begin());
  out.window_start = start;
  out.loss = *best;
  out.points = cands.frame.to_geo(slice(cands.points, start, m));
  return out;
}

RectifiedSet rectify(const CollectedSet& collected, const RoadSegment& segment, Method method,
                     double th, const SolverConfig& cfg, unsigned threads) {
  if (method == Method::Raa) return raa_rectify(collected, segment, th, cfg, threads);
  const CandidateSet cands = sample_candidates(segment);
  const BaselineResult res =
      baseline_rectify(cands.frame.to_local(collected.points), cands, method);
  RectifiedSet out;
  out.segment_id = collected.segment_id;
  out.points = cands.frame.to_geo(res.points);
  out.window_start = res.window_start;
  out.loss = res.score;
  out.method = method;
  return out;
}

void NoiseSpec::validate() const {
  for (const auto& c : components) {
    if (const auto* rn = std::get_if<RandomNoise>(&c)) {
      if (!(rn->bound >= 0.0) || !std::isfinite(rn->bound)) {
        throw InvalidArgument("random noise bound must be finite and non-negative");
      }
      if (!(rn->fraction >= 0.0 && rn->fraction <= 1.0)) {
        throw InvalidArgument("random noise fraction must lie in [0, 1]");
      }
    } else if (const auto* tn = std::get_if<TranslationalNoise>(&c)) {
      if (!std::isfinite(tn->dx) || !std::isfinite(tn->dy)) {
        throw InvalidArgument("translation must be finite");
      }
    } else if (!std::isfinite(std::get<RotationalNoise>(c).angle)) {
      throw InvalidArgument("rotation angle must be finite");
    }
  }
}

std::vector<GeoPoint> inject_noise(const std::vector<GeoPoint>& truth, const NoiseSpec& spec,
                                   const LocalFrame& frame) {
  spec.validate();
  std::vector<LocalPoint> pts = frame.to_local(truth);
  if (pts.empty()) return truth;
  Rng rng(spec.seed);

  for (const auto& component : spec.components) {
    if (const auto* t = std::get_if<TranslationalNoise>(&component)) {
      for (auto& p : pts) {
        p.x += t->dx;
        p.y += t->dy;
      }
    } else if (const auto* rot = std::get_if<RotationalNoise>(&component)) {
      const LocalPoint c = mean_point(pts, 0, pts.size());
      const double cs = std::cos(rot->angle);
      const double sn = std::sin(rot->angle);
      for (auto& p : pts) {
        const double x = p.x - c.x;
        const double y = p.y - c.y;
        p = {c.x + cs * x - sn * y, c.y + sn * x + cs * y};
      }
    } else {
      const auto& rn = std::get<RandomNoise>(component);
      const auto count = static_cast<std::size_t>(
          std::lround(rn.fraction * static_cast<double>(pts.size())));
      std::vector<std::size_t> idx(pts.size());
      for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
      for (std::size_t i = 0; i < count; ++i) {
        std::swap(idx[i], idx[i + rng.below(idx.size() - i)]);
        const double magnitude = rng.uniform(0.0, rn.bound);
        const double dir = rng.uniform(0.0, 2.0 * std::numbers::pi);
        pts[idx[i]].x += magnitude * std::cos(dir);
        pts[idx[i]].y += magnitude * std::sin(dir);
      }
    }
  }
  return frame.to_geo(pts);
}

namespace {

constexpr SpotKind kAllKinds[] = {SpotKind::Parallel, SpotKind::Angled30, SpotKind::Angled45,
                                  SpotKind::Angled60, SpotKind::Perpendicular};

RoadSegment make_segment(std::string id, ShapeClass shape, SpotKind kind, std::size_t k,
                         bool intersections, Rng& rng) {
  const double spacing = spot_spacing(kind);
  const double length = static_cast<double>(k - 1) * spacing + 0.5 * spacing +
                        (intersections ? 2.0 * kIntersectionClearance : 0.0);
  const LocalFrame gen(GeoPoint{39.9 + rng.uniform(-0.02, 0.02), 116.4 + rng.uniform(-0.02, 0.02)});
  const double heading = rng.uniform(0.0, 2.0 * std::numbers::pi);

  std::vector<LocalPoint> local;
  if (shape == ShapeClass::Straight) {
    const auto pieces = static_cast<std::size_t>(std::ceil(length / 40.0));
    for (std::size_t i = 0; i <= pieces; ++i) {
      const double s = length * static_cast<double>(i) / static_cast<double>(pieces);
      local.push_back({s * std::cos(heading), s * std::sin(heading)});
    }
  } else {
    const double radius = 0.5 * length * rng.uniform(1.0, 2.0);
    const double turn = rng.uniform() < 0.5 ? 1.0 : -1.0;
    const auto pieces = static_cast<std::size_t>(std::ceil(length / 3.0));
    const double chord = length / static_cast<double>(pieces);
    const double step = 2.0 * std::asin(chord / (2.0 * radius));
    const double a0 = heading - turn * std::numbers::pi / 2.0;
    const LocalPoint center{-radius * std::cos(a0), -radius * std::sin(a0)};
    for (std::size_t i = 0; i <= pieces; ++i) {
      const double a = a0 + turn * step * static_cast<double>(i);
      local.push_back({center.x + radius * std::cos(a), center.y + radius * std::sin(a)});
    }
  }

  RoadSegment seg;
  seg.id = std::move(id);
  seg.polyline = gen.to_geo(local);
  seg.intersection.assign(seg.polyline.size(), false);
  seg.intersection.front() = intersections;
  seg.intersection.back() = intersections;
  seg.spot_kind = kind;
  seg.shape = shape;
  return seg;
}

LocalPoint road_normal(const std::vector<LocalPoint>& pts, std::size_t first, std::size_t count) {
  const std::size_t lo = first;
  const std::size_t hi = first + count - 1;
  double tx = pts[hi].x - pts[lo].x;
  double ty = pts[hi].y - pts[lo].y;
  const double n = std::hypot(tx, ty);
  tx /= n;
  ty /= n;
  return {-ty, tx};
}

std::string segment_name(ShapeClass shape, std::size_t index) {
  std::string digits = std::to_string(index);
  digits.insert(0, digits.size() < 4 ? 4 - digits.size() : 0, '0');
  return std::string(to_string(shape)) + "-" + digits;
}

}  // namespace

std::vector<SyntheticSegment> synth_corpus(std::size_t n_straight, std::size_t n_curve,
                                           std::uint64_t seed, const SynthOptions& options) {
  Rng rng(seed);
  std::vector<SyntheticSegment> corpus;
  corpus.reserve(n_straight + n_curve);

  for (std::size_t i = 0; i < n_straight + n_curve; ++i) {
    const ShapeClass shape = i < n_straight ? ShapeClass::Straight : ShapeClass::Curve;
    const std::size_t index = i < n_straight ? i : i - n_straight;
    const SpotKind kind = options.spot_kind.value_or(kAllKinds[rng.below(5)]);

    std::size_t m = 0;
    if (options.spots) {
      m = *options.spots;
    } else {
      const double mean =
          shape == ShapeClass::Straight ? options.straight_mean_spots : options.curve_mean_spots;
      m = rng.between(static_cast<std::size_t>(std::lround(0.75 * mean)),
                      static_cast<std::size_t>(std::lround(1.25 * mean)));
    }
    m = std::max<std::size_t>(m, 2);
    const std::size_t k = options.candidates ? *options.candidates : m + rng.between(m, 2 * m);
    if (k < m) throw InvalidArgument("synthetic candidate count is below the spot count");
    const bool intersections = rng.uniform() < options.intersection_share;

    SyntheticSegment item;
    item.segment = make_segment(segment_name(shape, index), shape, kind, k, intersections, rng);
    const CandidateSet cands = sample_candidates(item.segment);
    if (cands.size() < m) throw NumericalFailure("synthetic segment sampled too few candidates", 0);

    item.truth_window = rng.below(cands.size() - m + 1);
    const std::vector<GeoPoint> truth =
        cands.frame.to_geo(slice(cands.points, item.truth_window, m));

    NoiseSpec spec;
    spec.seed = rng.next();
    const LocalPoint normal = road_normal(cands.points, item.truth_window, m);
    const double side = rng.uniform() < 0.5 ? 1.0 : -1.0;
    const double spin = rng.uniform() < 0.5 ? 1.0 : -1.0;
    const TranslationalNoise drift{side * options.translation * normal.x,
                                   side * options.translation * normal.y};
    const RotationalNoise rotation{spin * options.rotation};
    const RandomNoise outliers{options.outlier_bound, options.outlier_fraction};
    const std::size_t pick = rng.below(3);
    switch (options.noise) {
      case SynthNoise::None:
        break;
      case SynthNoise::Taxonomy:
        if (pick == 0) {
          spec.components = {drift};
        } else if (pick == 1) {
          spec.components = {rotation};
        } else {
          spec.components = {drift, rotation, outliers};
        }
        break;
      case SynthNoise::Mixed:
        spec.components = {drift, rotation, outliers};
        break;
    }

    item.collected.segment_id = item.segment.id;
    item.collected.points = inject_noise(truth, spec, cands.frame);
    item.collected.ground_truth = truth;
    corpus.push_back(std::move(item));
  }
  return corpus;
}

}  // namespace raa
