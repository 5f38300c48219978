#include "raa/metrics.hpp"

#include <cmath>

#include "raa/errors.hpp"

namespace raa {

namespace {

void check_shapes(const PointLists& pred, const PointLists& truth) {
  if (pred.size() != truth.size()) {
    throw ShapeMismatch("prediction has " + std::to_string(pred.size()) +
                        " segments, ground truth has " + std::to_string(truth.size()));
  }
  for (std::size_t i = 0; i < pred.size(); ++i) {
    if (pred[i].size() != truth[i].size()) {
      throw ShapeMismatch("segment " + std::to_string(i) + ": " +
                          std::to_string(pred[i].size()) + " predicted points vs " +
                          std::to_string(truth[i].size()) + " ground-truth points");
    }
  }
}

double deviation_sum(const std::vector<LocalPoint>& a, const std::vector<LocalPoint>& b) {
  double s = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) s += distance(a[j], b[j]);
  return s;
}

double recall(const std::vector<LocalPoint>& a, const std::vector<LocalPoint>& b, double tau) {
  if (a.empty()) return 1.0;
  std::size_t hits = 0;
  for (std::size_t j = 0; j < a.size(); ++j) {
    if (distance(a[j], b[j]) < tau) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(a.size());
}

}  // namespace

double acd(const PointLists& pred, const PointLists& truth) {
  check_shapes(pred, truth);
  double total = 0.0;
  std::size_t count = 0;
  for (std::size_t i = 0; i < pred.size(); ++i) {
    total += deviation_sum(pred[i], truth[i]);
    count += pred[i].size();
  }
  return count == 0 ? 0.0 : total / static_cast<double>(count);
}

double ar(const PointLists& pred, const PointLists& truth, double tau) {
  check_shapes(pred, truth);
  if (!(tau > 0.0)) throw InvalidArgument("tau must be positive");
  if (pred.empty()) return 1.0;
  double s = 0.0;
  for (std::size_t i = 0; i < pred.size(); ++i) s += recall(pred[i], truth[i], tau);
  return s / static_cast<double>(pred.size());
}

double robustness_index(double r_noisy, double r_clean, Direction direction) {
  const double gap = std::abs(r_noisy - r_clean);
  if (direction == Direction::LowerBetter) return std::sqrt(gap) * r_clean;
  if (r_clean == 0.0) throw InvalidArgument("clean score is zero for a higher-better metric");
  return gap / r_clean;
}

EvalReport evaluate(const std::vector<std::string>& ids, const PointLists& pred,
                    const PointLists& truth, double tau) {
  check_shapes(pred, truth);
  if (ids.size() != pred.size()) throw ShapeMismatch("segment id count differs from list count");
  EvalReport report;
  report.acd = acd(pred, truth);
  report.ar = ar(pred, truth, tau);
  report.n_segments = pred.size();
  report.per_segment.reserve(pred.size());
  for (std::size_t i = 0; i < pred.size(); ++i) {
    const std::size_t m = pred[i].size();
    report.per_segment.push_back(
        {ids[i], m == 0 ? 0.0 : deviation_sum(pred[i], truth[i]) / static_cast<double>(m),
         recall(pred[i], truth[i], tau), m});
  }
  return report;
}

}  // namespace raa
