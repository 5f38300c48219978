#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "raa/dataset.hpp"
#include "raa/matchers.hpp"
#include "raa/metrics.hpp"
#include "raa/pipeline.hpp"
#include "raa/rank1_solver.hpp"

namespace raa {

struct RunConfig {
  double lambda = 100.0;
  double th = kDefaultThreshold;
  double tau = kDefaultRecallTolerance;
  double mu0 = SolverConfig{}.mu0;
  double rho = SolverConfig{}.rho;
  int max_iters = SolverConfig{}.max_iters;
  std::optional<NoiseSpec> noise;
  Method method = Method::Raa;
  std::uint64_t seed = 0;
  unsigned threads = 1;

  SolverConfig solver() const;
  /// Canonical `key=value` listing of every field that affects results.
  std::string describe() const;
  std::string hash() const { return fnv1a_hex(describe()); }
};

/// Rectifies every collected set of the dataset, in id order.
std::map<std::string, RectifiedSet> rectify_dataset(const Dataset& dataset, const RunConfig& cfg);

/// Scores predictions against ground truth for the straight, curve and all
/// classes. Every segment with ground truth needs a prediction of equal size.
std::map<std::string, EvalReport> evaluate_by_class(
    const Dataset& dataset, const std::map<std::string, std::vector<GeoPoint>>& predictions,
    double tau);

inline const std::vector<std::string> kSegmentClasses = {"straight", "curve", "all"};

struct BenchOptions {
  RunConfig run;
  std::size_t n_straight = 40;
  std::size_t n_curve = 20;
  SynthNoise synth_noise = SynthNoise::Taxonomy;
  double noise_bound = 20.0;
  double noise_fraction = 1.0;
  std::vector<double> lambdas = {1.0, 10.0, 100.0, 1000.0, 10000.0};
};

struct BenchRow {
  std::string section;
  std::string condition;
  Method method = Method::Raa;
  std::string segment_class;
  std::optional<double> lambda;
  double acd = 0.0;
  double ar = 0.0;
  std::size_t n_segments = 0;
};

struct RobustnessRow {
  std::string metric;
  std::string segment_class;
  Method method = Method::Raa;
  double clean = 0.0;
  double noisy = 0.0;
  double index = 0.0;
};

struct BenchResult {
  std::vector<BenchRow> rows;
  std::vector<RobustnessRow> robustness;
  std::string bench_csv;
  std::string robustness_csv;
};

/// Synthesizes a corpus, runs every method on clean and randomly perturbed
/// collected points, sweeps lambda for RAA on the clean corpus, and derives
/// the robustness indices. AR is a fraction in the bench rows and a
/// percentage in the robustness rows.
BenchResult run_bench(const BenchOptions& options);

/// Command-line entry point; returns the process exit status.
int run_cli(int argc, const char* const* argv);

}  // namespace raa
