#include "raa/matchers.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "raa/errors.hpp"

namespace raa {

std::vector<std::size_t> Assignment::targets() const {
  std::vector<std::size_t> out;
  out.reserve(pairs.size());
  for (const auto& [i, j] : pairs) out.push_back(j);
  return out;
}

namespace {

void require_nonempty(const std::vector<LocalPoint>& pts, const char* what) {
  if (pts.empty()) throw InvalidArgument(std::string(what) + " must not be empty");
}

double nearest_distance(const LocalPoint& p, const std::vector<LocalPoint>& set) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& q : set) best = std::min(best, distance(p, q));
  return best;
}

// Finds an alternating path that rematches `row` inside the tight subgraph,
// leaving fixed rows and columns untouched.
bool rematch(std::size_t row, const std::vector<std::vector<std::size_t>>& tight,
             std::vector<std::ptrdiff_t>& col_owner, std::vector<std::size_t>& row_col,
             std::vector<char>& col_fixed, std::vector<char>& visited) {
  for (std::size_t j : tight[row]) {
    if (col_fixed[j] || visited[j]) continue;
    visited[j] = 1;
    if (col_owner[j] < 0 ||
        rematch(static_cast<std::size_t>(col_owner[j]), tight, col_owner, row_col, col_fixed,
                visited)) {
      col_owner[j] = static_cast<std::ptrdiff_t>(row);
      row_col[row] = j;
      return true;
    }
  }
  return false;
}

}  // namespace

Assignment ed_match(const std::vector<LocalPoint>& collected,
                    const std::vector<LocalPoint>& candidates) {
  require_nonempty(collected, "collected set");
  require_nonempty(candidates, "candidate set");
  Assignment out;
  for (std::size_t i = 0; i < collected.size(); ++i) {
    std::size_t best = 0;
    double best_d = distance(collected[i], candidates[0]);
    for (std::size_t j = 1; j < candidates.size(); ++j) {
      const double d = distance(collected[i], candidates[j]);
      if (d < best_d) {
        best_d = d;
        best = j;
      }
    }
    out.pairs.emplace_back(i, best);
    out.total_cost += best_d;
  }
  return out;
}

double cd_distance(const std::vector<LocalPoint>& a, const std::vector<LocalPoint>& b) {
  require_nonempty(a, "first set");
  require_nonempty(b, "second set");
  double sum_ab = 0.0;
  for (const auto& p : a) sum_ab += nearest_distance(p, b);
  double sum_ba = 0.0;
  for (const auto& q : b) sum_ba += nearest_distance(q, a);
  return sum_ab + sum_ba;
}

Eigen::MatrixXd distance_matrix(const std::vector<LocalPoint>& a,
                                const std::vector<LocalPoint>& b) {
  Eigen::MatrixXd d(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) d(i, j) = distance(a[i], b[j]);
  }
  return d;
}

Assignment hungarian_assign(const Eigen::MatrixXd& cost) {
  if (cost.rows() != cost.cols()) {
    throw InvalidArgument("assignment cost must be square, got " + std::to_string(cost.rows()) +
                          "x" + std::to_string(cost.cols()));
  }
  if (!cost.allFinite() || (cost.size() > 0 && cost.minCoeff() < 0.0)) {
    throw InvalidArgument("assignment cost must be finite and non-negative");
  }
  const auto n = static_cast<std::size_t>(cost.rows());
  Assignment out;
  if (n == 0) return out;

  // Potentials and matching, 1-based with a virtual row/column 0.
  constexpr double inf = std::numeric_limits<double>::infinity();
  std::vector<double> u(n + 1, 0.0);
  std::vector<double> v(n + 1, 0.0);
  std::vector<std::size_t> owner(n + 1, 0);
  std::vector<std::size_t> way(n + 1, 0);
  for (std::size_t i = 1; i <= n; ++i) {
    owner[0] = i;
    std::size_t j0 = 0;
    std::vector<double> minv(n + 1, inf);
    std::vector<char> used(n + 1, 0);
    do {
      used[j0] = 1;
      const std::size_t i0 = owner[j0];
      double delta = inf;
      std::size_t j1 = 0;
      for (std::size_t j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double cur = cost(i0 - 1, j - 1) - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (std::size_t j = 0; j <= n; ++j) {
        if (used[j]) {
          u[owner[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (owner[j0] != 0);
    do {
      const std::size_t j1 = way[j0];
      owner[j0] = owner[j1];
      j0 = j1;
    } while (j0 != 0);
  }

  // Every optimal assignment lives on the tight edges of an optimal dual, so
  // the lexicographic minimum is found greedily inside that subgraph.
  const double tol = 1e-9 * (1.0 + cost.cwiseAbs().maxCoeff());
  std::vector<std::vector<std::size_t>> tight(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (cost(i, j) - u[i + 1] - v[j + 1] <= tol) tight[i].push_back(j);
    }
  }
  std::vector<std::ptrdiff_t> col_owner(n, -1);
  std::vector<std::size_t> row_col(n, 0);
  for (std::size_t j = 1; j <= n; ++j) {
    col_owner[j - 1] = static_cast<std::ptrdiff_t>(owner[j] - 1);
    row_col[owner[j] - 1] = j - 1;
  }
  std::vector<char> col_fixed(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j : tight[i]) {
      if (col_fixed[j]) continue;
      if (row_col[i] == j) break;
      // Try to move the current owner of j onto i's old column.
      const auto other = static_cast<std::size_t>(col_owner[j]);
      const std::size_t freed = row_col[i];
      auto trial_owner = col_owner;
      auto trial_row = row_col;
      trial_owner[freed] = -1;
      trial_owner[j] = static_cast<std::ptrdiff_t>(i);
      trial_row[i] = j;
      auto fixed = col_fixed;
      fixed[j] = 1;
      std::vector<char> visited(n, 0);
      if (rematch(other, tight, trial_owner, trial_row, fixed, visited)) {
        col_owner = std::move(trial_owner);
        row_col = std::move(trial_row);
        break;
      }
    }
    col_fixed[row_col[i]] = 1;
  }

  for (std::size_t i = 0; i < n; ++i) {
    out.pairs.emplace_back(i, row_col[i]);
    out.total_cost += cost(i, row_col[i]);
  }
  return out;
}

TransportPlan optimal_transport(const std::vector<LocalPoint>& collected,
                                const std::vector<LocalPoint>& candidates) {
  require_nonempty(collected, "collected set");
  require_nonempty(candidates, "candidate set");
  const std::size_t m = collected.size();
  const std::size_t k = candidates.size();
  const Eigen::MatrixXd cost = distance_matrix(collected, candidates);

  // Integer masses: every collected point supplies k units, every candidate
  // absorbs m units, so both marginals are uniform and the total is m * k.
  // Successive shortest paths on the bipartite residual graph with potentials.
  std::vector<long long> supply(m, static_cast<long long>(k));
  std::vector<long long> demand(k, static_cast<long long>(m));
  Eigen::Matrix<long long, Eigen::Dynamic, Eigen::Dynamic> flow =
      Eigen::Matrix<long long, Eigen::Dynamic, Eigen::Dynamic>::Zero(m, k);
  std::vector<double> pot_row(m, 0.0);
  std::vector<double> pot_col(k, 0.0);
  constexpr double inf = std::numeric_limits<double>::infinity();

  long long remaining = static_cast<long long>(m * k);
  while (remaining > 0) {
    // Dijkstra over rows and columns. A path starts at a row with supply left,
    // alternates row->col (any edge) and col->row (edges carrying flow), and
    // ends at a column with demand left.
    std::vector<double> dist_row(m, inf);
    std::vector<double> dist_col(k, inf);
    std::vector<std::ptrdiff_t> prev_row_of_col(k, -1);
    std::vector<std::ptrdiff_t> prev_col_of_row(m, -1);
    std::vector<char> done_row(m, 0);
    std::vector<char> done_col(k, 0);
    for (std::size_t i = 0; i < m; ++i) {
      if (supply[i] > 0) dist_row[i] = 0.0;
    }
    while (true) {
      double best = inf;
      std::ptrdiff_t best_node = -1;
      bool best_is_row = true;
      for (std::size_t i = 0; i < m; ++i) {
        if (!done_row[i] && dist_row[i] < best) {
          best = dist_row[i];
          best_node = static_cast<std::ptrdiff_t>(i);
          best_is_row = true;
        }
      }
      for (std::size_t j = 0; j < k; ++j) {
        if (!done_col[j] && dist_col[j] < best) {
          best = dist_col[j];
          best_node = static_cast<std::ptrdiff_t>(j);
          best_is_row = false;
        }
      }
      if (best_node < 0) break;
      if (best_is_row) {
        const auto i = static_cast<std::size_t>(best_node);
        done_row[i] = 1;
        for (std::size_t j = 0; j < k; ++j) {
          if (done_col[j]) continue;
          const double reduced = std::max(0.0, cost(i, j) + pot_row[i] - pot_col[j]);
          if (dist_row[i] + reduced < dist_col[j]) {
            dist_col[j] = dist_row[i] + reduced;
            prev_row_of_col[j] = static_cast<std::ptrdiff_t>(i);
          }
        }
      } else {
        const auto j = static_cast<std::size_t>(best_node);
        done_col[j] = 1;
        for (std::size_t i = 0; i < m; ++i) {
          if (done_row[i] || flow(i, j) == 0) continue;
          const double reduced = std::max(0.0, -cost(i, j) + pot_col[j] - pot_row[i]);
          if (dist_col[j] + reduced < dist_row[i]) {
            dist_row[i] = dist_col[j] + reduced;
            prev_col_of_row[i] = static_cast<std::ptrdiff_t>(j);
          }
        }
      }
    }

    std::ptrdiff_t sink = -1;
    for (std::size_t j = 0; j < k; ++j) {
      if (demand[j] > 0 && dist_col[j] < inf &&
          (sink < 0 || dist_col[j] < dist_col[static_cast<std::size_t>(sink)])) {
        sink = static_cast<std::ptrdiff_t>(j);
      }
    }
    if (sink < 0) throw NumericalFailure("transport solver found no augmenting path", 0);

    for (std::size_t i = 0; i < m; ++i) {
      if (dist_row[i] < inf) pot_row[i] += dist_row[i];
    }
    for (std::size_t j = 0; j < k; ++j) {
      if (dist_col[j] < inf) pot_col[j] += dist_col[j];
    }

    // Bottleneck along the path back from the sink.
    auto j = static_cast<std::size_t>(sink);
    long long push = demand[j];
    std::size_t source = 0;
    for (std::size_t col = j;;) {
      const auto row = static_cast<std::size_t>(prev_row_of_col[col]);
      if (prev_col_of_row[row] < 0) {
        source = row;
        break;
      }
      const auto back = static_cast<std::size_t>(prev_col_of_row[row]);
      push = std::min(push, flow(row, back));
      col = back;
    }
    push = std::min(push, supply[source]);

    supply[source] -= push;
    demand[j] -= push;
    for (std::size_t col = j;;) {
      const auto row = static_cast<std::size_t>(prev_row_of_col[col]);
      flow(row, col) += push;
      if (prev_col_of_row[row] < 0) break;
      const auto back = static_cast<std::size_t>(prev_col_of_row[row]);
      flow(row, back) -= push;
      col = back;
    }
    remaining -= push;
  }

  TransportPlan plan;
  const double total = static_cast<double>(m * k);
  plan.coupling = flow.cast<double>() / total;
  plan.cost = (plan.coupling.array() * cost.array()).sum();
  return plan;
}

std::pair<Assignment, double> wd_match(const std::vector<LocalPoint>& collected,
                                       const std::vector<LocalPoint>& candidates) {
  const TransportPlan plan = optimal_transport(collected, candidates);
  Assignment out;
  for (std::size_t i = 0; i < collected.size(); ++i) {
    Eigen::Index best = 0;
    for (Eigen::Index j = 1; j < plan.coupling.cols(); ++j) {
      if (plan.coupling(i, j) > plan.coupling(i, best)) best = j;
    }
    out.pairs.emplace_back(i, static_cast<std::size_t>(best));
    out.total_cost += distance(collected[i], candidates[best]);
  }
  return {out, plan.cost};
}

std::string_view to_string(Method m) noexcept {
  switch (m) {
    case Method::Raa: return "raa";
    case Method::Ed: return "ed";
    case Method::Cd: return "cd";
    case Method::Ha: return "ha";
    case Method::Wd: return "wd";
  }
  return "raa";
}

std::optional<Method> parse_method(std::string_view s) noexcept {
  for (auto m : {Method::Raa, Method::Ed, Method::Cd, Method::Ha, Method::Wd}) {
    if (to_string(m) == s) return m;
  }
  return std::nullopt;
}

BaselineResult baseline_rectify(const std::vector<LocalPoint>& collected,
                                const CandidateSet& candidates, Method method) {
  require_nonempty(collected, "collected set");
  const auto& pool = candidates.points;
  BaselineResult out;
  switch (method) {
    case Method::Raa:
      throw InvalidArgument("baseline_rectify does not run the rank-1 method");
    case Method::Ed:
    case Method::Wd: {
      const Assignment a =
          method == Method::Ed ? ed_match(collected, pool) : wd_match(collected, pool).first;
      for (std::size_t j : a.targets()) out.points.push_back(pool[j]);
      out.score = a.total_cost;
      return out;
    }
    case Method::Cd:
    case Method::Ha: break;
  }

  const std::size_t m = collected.size();
  if (pool.size() < m) throw InsufficientCandidates(pool.size(), m);
  double best = std::numeric_limits<double>::infinity();
  std::size_t best_start = 0;
  std::vector<std::size_t> best_targets;
  for (std::size_t start = 0; start + m <= pool.size(); ++start) {
    const std::vector<LocalPoint> window(pool.begin() + static_cast<std::ptrdiff_t>(start),
                                         pool.begin() + static_cast<std::ptrdiff_t>(start + m));
    double score = 0.0;
    std::vector<std::size_t> targets;
    if (method == Method::Cd) {
      score = cd_distance(collected, window);
    } else {
      const Assignment a = hungarian_assign(distance_matrix(collected, window));
      score = a.total_cost;
      targets = a.targets();
    }
    if (score < best) {
      best = score;
      best_start = start;
      best_targets = std::move(targets);
    }
  }
  out.window_start = best_start;
  out.score = best;
  for (std::size_t j = 0; j < m; ++j) {
    const std::size_t local = method == Method::Cd ? j : best_targets[j];
    out.points.push_back(pool[best_start + local]);
  }
  return out;
}

}  // namespace raa
