// Acceptance report: one PASS/FAIL line per criterion, exit status 1 when any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "oracles.hpp"
#include "raa/cli.hpp"
#include "raa/matchers.hpp"
#include "raa/metrics.hpp"
#include "raa/pipeline.hpp"
#include "raa/rank1_solver.hpp"
#include "raa/road.hpp"
#include "raa/transform.hpp"

using namespace raa;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string num(double v, int digits = 4) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

// ---------------------------------------------------------------------------
// Shared geometry helpers

std::vector<LocalPoint> centred_line(int m, double step, double bend = 0.0) {
  std::vector<LocalPoint> pts;
  for (int i = 0; i < m; ++i) {
    const double x = step * i - 0.5 * step * (m - 1);
    pts.push_back({x, bend * x * x / 100.0});
  }
  return pts;
}

// Householder QR reduces the block to a 2 x 2 triangle R; then
// s1^2 + s2^2 = |R|_F^2 and s1 * s2 = |det R|.
std::pair<double, double> singular_values_2col(const BlockMatrix& b) {
  const Eigen::HouseholderQR<Eigen::MatrixXd> qr{Eigen::MatrixXd(b)};
  const Eigen::Matrix2d r = qr.matrixQR().topRows(2).triangularView<Eigen::Upper>();
  const double f = r.squaredNorm();
  const double det = std::abs(r(0, 0) * r(1, 1));
  const double s1 = std::sqrt(0.5 * f + std::sqrt(std::max(0.25 * f * f - det * det, 0.0)));
  return {s1, s1 > 0.0 ? det / s1 : 0.0};
}

double nuclear(const BlockMatrix& b) {
  const auto [s1, s2] = singular_values_2col(b);
  return s1 + s2;
}

// ---------------------------------------------------------------------------
// 1. Robustness index arithmetic

Outcome robustness_cells() {
  const char* methods[] = {"ED", "CD", "HA", "WD", "RAA"};
  // Clean and noisy (ACD, AR%) per class: straight, curve, all.
  const double clean[5][6] = {{8.01, 97.7, 13.23, 95.6, 9.12, 97.3},
                              {16.50, 95.4, 62.21, 86.3, 26.40, 94.0},
                              {15.71, 95.0, 50.70, 84.0, 24.26, 93.2},
                              {6.30, 97.7, 15.42, 94.9, 9.63, 97.3},
                              {3.99, 98.9, 12.62, 95.8, 6.71, 98.4}};
  const double noisy[5][6] = {{8.37, 96.6, 14.05, 94.3, 9.60, 96.3},
                              {17.6, 95.1, 80.21, 83.3, 30.90, 93.3},
                              {16.61, 94.7, 48.27, 83.5, 24.37, 92.9},
                              {8.21, 96.6, 16.30, 93.6, 9.95, 96.1},
                              {5.75, 98.7, 13.35, 95.6, 8.96, 97.9}};
  const double published_acd[5][3] = {{4.81, 11.98, 6.32},
                                      {17.31, 263.93, 56.00},
                                      {14.90, 67.18, 24.51},
                                      {8.71, 14.47, 5.45},
                                      {5.29, 10.78, 10.07}};
  const double published_ar[5][3] = {{1.13, 1.36, 1.03},
                                     {0.31, 3.48, 0.74},
                                     {0.32, 0.60, 0.32},
                                     {1.13, 1.37, 1.23},
                                     {0.20, 0.21, 0.51}};
  const char* classes[] = {"straight", "curve", "all"};
  int ok = 0;
  std::string misses;
  for (int m = 0; m < 5; ++m) {
    for (int c = 0; c < 3; ++c) {
      const double a = robustness_index(noisy[m][2 * c], clean[m][2 * c], Direction::LowerBetter);
      const double r =
          100.0 * robustness_index(noisy[m][2 * c + 1], clean[m][2 * c + 1], Direction::HigherBetter);
      const auto check = [&](double got, double want, const char* metric) {
        if (std::abs(std::round(got * 100.0) / 100.0 - want) <= 0.01 + 1e-9) {
          ++ok;
        } else {
          misses += std::string(misses.empty() ? "" : "; ") + methods[m] + " " + classes[c] + " " +
                    metric + " computed " + num(got, 5) + " vs published " + num(want, 5);
        }
      };
      check(a, published_acd[m][c], "R(ACD)");
      check(r, published_ar[m][c], "R(AR)");
    }
  }
  return {ok == 30, std::to_string(ok) + "/30 cells within 0.01" +
                        (misses.empty() ? "" : "; mismatches: " + misses)};
}

// ---------------------------------------------------------------------------
// 2. Block descent of the augmented Lagrangian

long double lagrangian_ld(const SolverState& s, double lambda) {
  using V = Eigen::Matrix<long double, Eigen::Dynamic, 1>;
  const Jacobian j1 = jacobian(s.theta1, s.P);
  const Jacobian j2 = jacobian(s.theta2, s.Rd);
  const V r1 = (warp(s.theta1, s.P).values() + j1 * s.delta1.vector()).cast<long double>() +
               s.E1.cast<long double>() - s.C.cast<long double>();
  const V r2 = (warp(s.theta2, s.Rd).values() + j2 * s.delta2.vector()).cast<long double>() +
               s.E2.cast<long double>() - s.D.cast<long double>();
  const V r3c = s.C.cast<long double>() - s.A.col(0).cast<long double>();
  const V r3d = s.D.cast<long double>() - s.A.col(1).cast<long double>();
  long double total = s.E1.cast<long double>().cwiseAbs().sum();
  total += static_cast<long double>(lambda) * static_cast<long double>(nuclear(s.A));
  total += s.Y1.cast<long double>().dot(r1) + s.Y2.cast<long double>().dot(r2);
  total += s.Y3.col(0).cast<long double>().dot(r3c) + s.Y3.col(1).cast<long double>().dot(r3d);
  const long double mu = s.mu;
  total += 0.5L * mu * (r1.squaredNorm() + r2.squaredNorm() + r3c.squaredNorm() + r3d.squaredNorm());
  return total;
}

Outcome block_descent() {
  std::mt19937_64 rng(2024);
  std::normal_distribution<double> n(0.0, 1.0);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const SolverConfig cfg;
  long checks = 0;
  long violations = 0;
  long double worst = -1e300L;
  long double worst_rel = -1e300L;
  for (int trial = 0; trial < 50; ++trial) {
    const auto rd = centred_line(10, trial % 2 == 0 ? 6.0 : 3.0, 0.3 * u(rng));
    std::vector<LocalPoint> p = rd;
    for (auto& q : p) q = {q.x + 0.5 * n(rng), q.y + 0.5 * n(rng)};
    p[trial % 10].y += 15.0 * u(rng);
    const StackedCoords P =
        warp(RigidTransform2D::make(0.1 * n(rng), 5.0 * n(rng), 5.0 * n(rng)), StackedCoords(p));
    long double before = 0.0L;
    SolveHooks hooks;
    hooks.before = [&](BlockStage b, const SolverState& s, const Linearization&) {
      if (b != BlockStage::Multipliers) before = lagrangian_ld(s, cfg.lambda);
    };
    hooks.after = [&](BlockStage b, const SolverState& s, const Linearization&) {
      if (b == BlockStage::Multipliers) return;
      const long double after = lagrangian_ld(s, cfg.lambda);
      const long double rise = after - before;
      ++checks;
      if (rise > 1e-9L) ++violations;
      worst = std::max(worst, rise);
      worst_rel = std::max(worst_rel, rise / std::max(1.0L, std::abs(before)));
    };
    admm_solve(P, StackedCoords(rd), cfg, hooks);
  }
  return {violations == 0,
          std::to_string(checks) + " primal block updates over 50 instances, " +
              std::to_string(violations) + " rises above 1e-9; largest rise " +
              num(static_cast<double>(worst), 3) + " (relative " +
              num(static_cast<double>(worst_rel), 3) + ")"};
}

// ---------------------------------------------------------------------------
// 3. Clean-data fixed point

struct FixedPointReport {
  double e1 = 0.0;
  double theta = 0.0;
  double shift = 0.0;
  double loss = 0.0;
  int iterations = 0;
  bool ok = false;
};

FixedPointReport fixed_point(const SolverConfig& cfg) {
  const StackedCoords rd(centred_line(30, 6.0));
  const SolverResult r = admm_solve(rd, rd, cfg);
  FixedPointReport f;
  f.e1 = r.state.E1.lpNorm<1>();
  f.theta = std::abs(r.state.theta1.theta);
  f.shift = std::hypot(r.state.theta1.s_x, r.state.theta1.s_y);
  f.loss = r.loss;
  f.iterations = r.iterations;
  f.ok = f.e1 < 1e-6 && f.theta < 1e-6 && f.shift < 1e-3 && f.loss < 1e-3 && r.iterations <= 300;
  return f;
}

Outcome clean_fixed_point() {
  const FixedPointReport d = fixed_point(SolverConfig{});
  SolverConfig exact;
  exact.lambda = 3.0;
  exact.mu0 = 0.1;
  exact.rho = 1.02;
  const FixedPointReport e = fixed_point(exact);
  const auto show = [](const FixedPointReport& f) {
    return "|E1|=" + num(f.e1) + " |theta|=" + num(f.theta) + " shift=" + num(f.shift) +
           " loss=" + num(f.loss) + " iters=" + std::to_string(f.iterations);
  };
  return {d.ok, "default weight 100: " + show(d) + "; weight 3 (mu0 0.1, rho 1.02): " + show(e) +
                    (e.ok ? " meets every bound" : " also misses")};
}

// ---------------------------------------------------------------------------
// 4. Mixed-error recovery

struct RecoveryStats {
  int hits = 0;
  double ar_raa = 0.0;
  double ar_ed = 0.0;
};

RecoveryStats mixed_recovery(bool along_any_direction) {
  SynthOptions o;
  o.noise = SynthNoise::None;
  o.spots = 30;
  o.candidates = 100;
  o.spot_kind = SpotKind::Parallel;
  o.intersection_share = 0.0;
  RecoveryStats st;
  for (int t = 0; t < 100; ++t) {
    const SyntheticSegment seg = synth_corpus(1, 0, 5000 + static_cast<std::uint64_t>(t), o).front();
    const CandidateSet c = sample_candidates(seg.segment);
    const auto truth = c.frame.to_local(*seg.collected.ground_truth);
    const double heading = std::atan2(c.points.back().y - c.points.front().y,
                                      c.points.back().x - c.points.front().x);
    const double drift_dir = along_any_direction
                                 ? heading + 2.0 * std::numbers::pi * std::fmod(0.6180339887 * t, 1.0)
                                 : heading + (t % 2 == 0 ? 0.5 : -0.5) * std::numbers::pi;
    const double spin = (t % 4 < 2 ? 1.0 : -1.0) * 5.0 * std::numbers::pi / 180.0;
    const NoiseSpec spec{{TranslationalNoise{4.0 * std::cos(drift_dir), 4.0 * std::sin(drift_dir)},
                          RotationalNoise{spin}, RandomNoise{20.0, 0.1}},
                         9000 + static_cast<std::uint64_t>(t)};
    CollectedSet col = seg.collected;
    col.points = inject_noise(*seg.collected.ground_truth, spec, c.frame);
    const RectifiedSet r = raa_rectify(col, seg.segment);
    const auto raa_local = c.frame.to_local(r.points);
    if (acd({raa_local}, {truth}) < 1e-6) ++st.hits;
    const BaselineResult ed = baseline_rectify(c.frame.to_local(col.points), c, Method::Ed);
    st.ar_raa += ar({raa_local}, {truth}) / 100.0;
    st.ar_ed += ar({ed.points}, {truth}) / 100.0;
  }
  return st;
}

Outcome mixed_error_recovery() {
  const RecoveryStats across = mixed_recovery(false);
  const RecoveryStats any = mixed_recovery(true);
  return {across.hits >= 95 && across.ar_raa > across.ar_ed,
          "drift across the road: " + std::to_string(across.hits) + "/100 windows exact, AR " +
              num(across.ar_raa) + " vs ED " + num(across.ar_ed) +
              "; diagnostic with drift in any direction: " + std::to_string(any.hits) +
              "/100, AR " + num(any.ar_raa) + " vs ED " + num(any.ar_ed)};
}

// ---------------------------------------------------------------------------
// 5. Lambda sensitivity

Outcome lambda_shape() {
  BenchOptions b;
  b.synth_noise = SynthNoise::Mixed;
  b.run.seed = 17;
  const BenchResult r = run_bench(b);
  std::string detail = "ACD (all) by lambda:";
  double at1 = 0.0;
  double at100 = 0.0;
  for (const BenchRow& row : r.rows) {
    if (row.section != "lambda_sweep" || row.segment_class != "all") continue;
    detail += " " + num(*row.lambda) + "->" + num(row.acd);
    if (*row.lambda == 1.0) at1 = row.acd;
    if (*row.lambda == 100.0) at100 = row.acd;
  }
  return {at1 > at100, detail};
}

// ---------------------------------------------------------------------------
// 6. Hungarian against enumeration

Outcome hungarian_oracle() {
  std::mt19937_64 rng(606);
  std::uniform_real_distribution<double> real(0.0, 50.0);
  std::uniform_int_distribution<int> small(0, 4);
  int agree = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + trial % 7;
    Eigen::MatrixXd c(n, n);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) c(i, j) = trial % 2 == 0 ? real(rng) : small(rng);
    }
    const auto best = oracle::best_permutation(c);
    const Assignment a = hungarian_assign(c);
    double sum = 0.0;
    const auto perm = a.targets();
    for (int i = 0; i < n; ++i) sum += c(i, static_cast<Eigen::Index>(perm[static_cast<std::size_t>(i)]));
    if (perm == best.perm && sum == best.cost) ++agree;
  }
  return {agree == 200, std::to_string(agree) +
                            "/200 matrices give the enumerated optimum and permutation"};
}

// ---------------------------------------------------------------------------
// 7. Jacobian

Outcome jacobian_check() {
  std::mt19937_64 rng(707);
  std::uniform_real_distribution<double> ang(-std::numbers::pi, std::numbers::pi);
  std::uniform_real_distribution<double> t(-30.0, 30.0);
  std::uniform_real_distribution<double> p(-80.0, 80.0);
  const double h = 1e-6;
  double worst = 0.0;
  for (int draw = 0; draw < 100; ++draw) {
    const RigidTransform2D tr = RigidTransform2D::make(ang(rng), t(rng), t(rng));
    std::vector<LocalPoint> pts;
    for (int i = 0; i < 8; ++i) pts.push_back({p(rng), p(rng)});
    const StackedCoords s(pts);
    const Jacobian j = jacobian(tr, s);
    Eigen::MatrixXd fd(j.rows(), 3);
    for (int k = 0; k < 3; ++k) {
      double up[3] = {tr.theta, tr.s_x, tr.s_y};
      double dn[3] = {tr.theta, tr.s_x, tr.s_y};
      up[k] += h;
      dn[k] -= h;
      fd.col(k) = (warp(RigidTransform2D{up[0], up[1], up[2]}, s).values() -
                   warp(RigidTransform2D{dn[0], dn[1], dn[2]}, s).values()) /
                  (2.0 * h);
    }
    worst = std::max(worst, (fd - Eigen::MatrixXd(j)).norm() / Eigen::MatrixXd(j).norm());
  }
  return {worst < 1e-6, "worst relative Frobenius error over 100 draws " + num(worst, 3)};
}

// ---------------------------------------------------------------------------
// 8. Singular value thresholding

Outcome svt_check() {
  std::mt19937_64 rng(808);
  std::normal_distribution<double> n(0.0, 1.0);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double worst_sv = 0.0;
  double worst_zero = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    const int rows = 4 + trial % 40;
    const Eigen::MatrixXd g = Eigen::MatrixXd::NullaryExpr(rows, 2, [&] { return n(rng); });
    const Eigen::MatrixXd left = Eigen::HouseholderQR<Eigen::MatrixXd>(g).householderQ() *
                                 Eigen::MatrixXd::Identity(rows, 2);
    const double a = u(rng) * 2.0 * std::numbers::pi;
    Eigen::Matrix2d right;
    right << std::cos(a), -std::sin(a), std::sin(a), std::cos(a);
    const double s1 = 1.0 + 20.0 * u(rng);
    const double s2 = s1 * u(rng);
    const BlockMatrix b = left * Eigen::Vector2d(s1, s2).asDiagonal() * right.transpose();
    const double thr = 1.2 * s1 * u(rng);
    const auto [o1, o2] = singular_values_2col(svt_prox(b, thr));
    worst_sv = std::max({worst_sv, std::abs(o1 - std::max(s1 - thr, 0.0)),
                         std::abs(o2 - std::max(s2 - thr, 0.0))});
    worst_zero = std::max(worst_zero, svt_prox(b, s1 * (1.0 + u(rng))).cwiseAbs().maxCoeff());
  }

  const BlockMatrix b = BlockMatrix::NullaryExpr(12, 2, [&] { return 3.0 * n(rng); });
  const double thr = 0.7 * singular_values_2col(b).second + 0.3 * singular_values_2col(b).first;
  const auto objective = [&](const BlockMatrix& x) {
    return thr * nuclear(x) + 0.5 * (x - b).squaredNorm();
  };
  const BlockMatrix x = svt_prox(b, thr);
  const double fx = objective(x);
  int lower = 0;
  for (int k = 0; k < 10000; ++k) {
    const double scale = std::pow(10.0, -4.0 + 4.0 * u(rng));
    const BlockMatrix z = BlockMatrix::NullaryExpr(12, 2, [&] { return scale * n(rng); });
    if (objective(x + z) < fx - 1e-12) ++lower;
  }
  return {worst_sv < 1e-10 && worst_zero == 0.0 && lower == 0,
          "singular value error " + num(worst_sv, 3) + ", largest entry above sigma_max " +
              num(worst_zero, 3) + ", " + std::to_string(lower) +
              "/10000 perturbations with a lower objective"};
}

// ---------------------------------------------------------------------------
// 9. Candidate sampler suite

struct SuiteCase {
  std::vector<LocalPoint> pts;
  std::vector<bool> flags;
  SpotKind kind;
};

Outcome sampler_suite() {
  const LocalFrame origin = make_frame({31.2, 121.5});
  const auto P = SpotKind::Parallel;
  const auto A = SpotKind::Angled45;
  const auto Q = SpotKind::Perpendicular;
  const std::vector<SuiteCase> suite = {
      {{{0, 0}, {120, 0}}, {true, true}, P},
      {{{0, 0}, {12, 0}}, {false, false}, P},
      {{{0, 0}, {12, 0}}, {false, false}, A},
      {{{0, 0}, {100, 0}}, {false, false}, P},
      {{{0, 0}, {100, 0}}, {true, false}, Q},
      {{{0, 0}, {100, 0}}, {false, true}, P},
      {{{0, 0}, {0, 157}}, {true, true}, A},
      {{{0, 0}, {60, 0}, {60, 80}}, {false, true, false}, P},
      {{{0, 0}, {60, 0}, {60, 80}}, {true, false, true}, Q},
      {{{0, 0}, {30, 40}, {90, 40}}, {false, false, false}, P},
      {{{0, 0}, {30, 40}, {90, 40}}, {true, false, false}, A},
      {{{0, 0}, {80, 0}, {80, 90}, {200, 90}}, {true, false, true, false}, P},
      {{{0, 0}, {150, 0}, {300, 0}}, {false, true, false}, P},
      {{{0, 0}, {150, 0}, {300, 0}}, {false, true, false}, A},
      {{{0, 0}, {110, 0}, {220, 0}}, {true, true, true}, Q},
      {{{0, 0}, {40, 0}, {40, 30}, {0, 30}}, {false, false, false, false}, A},
      {{{0, 0}, {250, 0}}, {true, true}, P},
      {{{0, 0}, {173, 0}}, {false, false}, Q},
      {{{0, 0}, {3, 4}, {6, 8}, {9, 12}}, {false, false, false, false}, P},
      {{{0, 0}, {70, 0}, {70, 70}, {140, 70}, {140, 140}}, {false, true, false, true, false}, A},
  };

  int passed = 0;
  std::string failures;
  double min_gap = 1e300;
  for (std::size_t idx = 0; idx < suite.size(); ++idx) {
    const SuiteCase& sc = suite[idx];
    double mx = 0.0;
    double my = 0.0;
    for (const auto& p : sc.pts) {
      mx += p.x / static_cast<double>(sc.pts.size());
      my += p.y / static_cast<double>(sc.pts.size());
    }
    std::vector<LocalPoint> centred;
    for (const auto& p : sc.pts) centred.push_back({p.x - mx, p.y - my});
    RoadSegment seg;
    seg.id = "suite-" + std::to_string(idx);
    seg.polyline = origin.to_geo(centred);
    seg.intersection = sc.flags;
    seg.spot_kind = sc.kind;

    std::vector<double> cum{0.0};
    for (std::size_t i = 1; i < sc.pts.size(); ++i) {
      cum.push_back(cum.back() + std::hypot(sc.pts[i].x - sc.pts[i - 1].x, sc.pts[i].y - sc.pts[i - 1].y));
    }
    std::vector<double> flagged;
    for (std::size_t i = 0; i < sc.flags.size(); ++i) {
      if (sc.flags[i]) flagged.push_back(cum[i]);
    }
    const double sp = spot_spacing(sc.kind);
    const std::vector<double> expect = oracle::integer_walk(cum.back(), flagged, sp);
    const CandidateSet c = sample_candidates(seg);

    bool ok = c.size() == expect.size();
    for (std::size_t i = 0; ok && i < expect.size(); ++i) ok = std::abs(c.arclengths[i] - expect[i]) < 1e-6;
    for (std::size_t i = 1; ok && i < c.size(); ++i) {
      const bool same_run =
          std::find(c.run_starts.begin(), c.run_starts.end(), i) == c.run_starts.end();
      if (same_run) ok = std::abs(c.arclengths[i] - c.arclengths[i - 1] - sp) < 1e-6;
    }
    for (double s : c.arclengths) {
      for (double f : flagged) {
        min_gap = std::min(min_gap, std::abs(s - f));
        if (std::abs(s - f) < 50.0 - 1e-6) ok = false;
      }
    }
    if (idx == 0) {
      ok = ok && c.size() == 4;
      for (std::size_t i = 0; ok && i < 4; ++i) {
        ok = std::abs(c.arclengths[i] - (50.0 + 6.0 * static_cast<double>(i))) < 1e-6;
      }
    }
    if (ok) {
      ++passed;
    } else {
      failures += " " + seg.id;
    }
  }
  return {passed == static_cast<int>(suite.size()),
          std::to_string(passed) + "/" + std::to_string(suite.size()) +
              " segments match the integer-walk oracle; 120 m double-intersection case gives "
              "50, 56, 62, 68; smallest candidate-to-intersection gap " +
              num(min_gap, 12) + " m" + (failures.empty() ? "" : "; failed:" + failures)};
}

// ---------------------------------------------------------------------------
// 10. Noise robustness trend

Outcome noise_trend() {
  BenchOptions b;
  b.run.seed = 23;
  const BenchResult r = run_bench(b);
  double clean_raa = 0.0;
  double noisy_raa = 0.0;
  double clean_cd = 0.0;
  double noisy_cd = 0.0;
  for (const BenchRow& row : r.rows) {
    if (row.section != "comparison" || row.segment_class != "all") continue;
    double* slot = nullptr;
    if (row.method == Method::Raa) slot = row.condition == "clean" ? &clean_raa : &noisy_raa;
    if (row.method == Method::Cd) slot = row.condition == "clean" ? &clean_cd : &noisy_cd;
    if (slot) *slot = row.ar;
  }
  const double drop_raa = clean_raa - noisy_raa;
  const double drop_cd = clean_cd - noisy_cd;
  return {drop_raa < drop_cd, "AR drop under U[0,20] noise: RAA " + num(clean_raa) + "->" +
                                  num(noisy_raa) + " (" + num(drop_raa) + "), CD " +
                                  num(clean_cd) + "->" + num(noisy_cd) + " (" + num(drop_cd) + ")"};
}

// ---------------------------------------------------------------------------
// 11. Determinism

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Outcome determinism() {
  const fs::path root = fs::temp_directory_path() / "raa_acceptance_bench";
  fs::remove_all(root);
  const std::string threads[] = {"1", "4"};
  for (int i = 0; i < 2; ++i) {
    const std::string dir = (root / std::to_string(i)).string();
    const char* argv[] = {"raa", "bench", "--seed", "31", "--out-dir", dir.c_str(), "--threads",
                          threads[i].c_str()};
    if (run_cli(8, argv) != 0) return {false, "bench exited with an error"};
  }
  const bool bench = slurp(root / "0" / "bench.csv") == slurp(root / "1" / "bench.csv");
  const bool robust = slurp(root / "0" / "robustness.csv") == slurp(root / "1" / "robustness.csv");
  const std::size_t bytes = slurp(root / "0" / "bench.csv").size();
  fs::remove_all(root);
  return {bench && robust && bytes > 0,
          std::string("bench.csv ") + (bench ? "identical" : "differs") + " (" +
              std::to_string(bytes) + " bytes), robustness.csv " +
              (robust ? "identical" : "differs") + "; runs used 1 and 4 threads"};
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {1, "robustness index cells", robustness_cells},
      {2, "ADMM block descent", block_descent},
      {3, "clean-data fixed point", clean_fixed_point},
      {4, "mixed-error recovery", mixed_error_recovery},
      {5, "lambda sensitivity", lambda_shape},
      {6, "Hungarian oracle", hungarian_oracle},
      {7, "Jacobian check", jacobian_check},
      {8, "SVT prox", svt_check},
      {9, "candidate sampler", sampler_suite},
      {10, "noise robustness trend", noise_trend},
      {11, "determinism", determinism},
  };
  int failed = 0;
  for (const Criterion& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("criterion %2d %s: %s [%.2fs] %s\n", c.id, o.pass ? "PASS" : "FAIL", c.name, secs,
                o.detail.c_str());
    std::fflush(stdout);
    if (!o.pass) ++failed;
  }
  std::printf("%d/%zu criteria pass\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
