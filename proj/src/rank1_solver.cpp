#include "raa/rank1_solver.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Cholesky>
#include <Eigen/SVD>

#include "raa/errors.hpp"

namespace raa {

namespace {

Eigen::VectorXd soft_threshold(const Eigen::VectorXd& x, double t) {
  return x.unaryExpr([t](double v) { return std::copysign(std::max(std::abs(v) - t, 0.0), v); });
}

// Least-squares translation-structured approximation of `target`.
Eigen::VectorXd per_axis_mean(const Eigen::VectorXd& target) {
  const Eigen::Index m = target.size() / 2;
  double mx = 0.0;
  double my = 0.0;
  for (Eigen::Index i = 0; i < m; ++i) {
    mx += target(2 * i);
    my += target(2 * i + 1);
  }
  mx /= static_cast<double>(m);
  my /= static_cast<double>(m);
  Eigen::VectorXd out(target.size());
  for (Eigen::Index i = 0; i < m; ++i) {
    out(2 * i) = mx;
    out(2 * i + 1) = my;
  }
  return out;
}

Eigen::Vector3d solve_normal_equations(const Jacobian& g, const Eigen::VectorXd& rhs,
                                       const char* which) {
  const Eigen::Matrix3d normal = g.transpose() * g;
  Eigen::LDLT<Eigen::Matrix3d> ldlt(normal);
  const double scale = std::max(1.0, normal.diagonal().maxCoeff());
  if (ldlt.info() != Eigen::Success || !ldlt.isPositive() ||
      ldlt.vectorD().minCoeff() <= 1e-12 * scale) {
    throw DegenerateGeometry(std::string("singular normal matrix for ") + which +
                             " (coincident points?)");
  }
  return ldlt.solve(g.transpose() * rhs);
}

BlockMatrix stack_blocks(const Eigen::VectorXd& c, const Eigen::VectorXd& d) {
  BlockMatrix b(c.size(), 2);
  b.col(0) = c;
  b.col(1) = d;
  return b;
}

double nuclear_norm(const BlockMatrix& a) {
  Eigen::JacobiSVD<BlockMatrix> svd(a);
  return svd.singularValues().sum();
}

bool all_finite(const SolverState& s) {
  return s.C.allFinite() && s.D.allFinite() && s.A.allFinite() && s.E1.allFinite() &&
         s.E2.allFinite() && s.Y1.allFinite() && s.Y2.allFinite() && s.Y3.allFinite() &&
         std::isfinite(s.theta1.theta) && std::isfinite(s.theta1.s_x) &&
         std::isfinite(s.theta1.s_y) && std::isfinite(s.theta2.theta) &&
         std::isfinite(s.theta2.s_x) && std::isfinite(s.theta2.s_y) && std::isfinite(s.mu);
}

}  // namespace

void SolverConfig::validate() const {
  if (!(lambda > 0.0)) throw InvalidArgument("lambda must be positive");
  if (!(mu0 > 0.0)) throw InvalidArgument("mu0 must be positive");
  if (!(rho > 1.0)) throw InvalidArgument("rho must exceed 1");
  if (max_iters < 1) throw InvalidArgument("max_iters must be at least 1");
  if (!(tol_primal > 0.0) || !(tol_change > 0.0)) {
    throw InvalidArgument("tolerances must be positive");
  }
  if (!(translation_scale > 0.0)) throw InvalidArgument("translation_scale must be positive");
}

SolverState SolverState::initial(const StackedCoords& P, const StackedCoords& Rd, double mu0) {
  const Eigen::Index n = P.values().size();
  SolverState s;
  s.P = P;
  s.Rd = Rd;
  s.C = P.values();
  s.D = Rd.values();
  s.A = stack_blocks(P.values(), Rd.values());
  s.E1 = Eigen::VectorXd::Zero(n);
  s.E2 = Eigen::VectorXd::Zero(n);
  s.Y1 = Eigen::VectorXd::Zero(n);
  s.Y2 = Eigen::VectorXd::Zero(n);
  s.Y3 = BlockMatrix::Zero(n, 2);
  s.mu = mu0;
  return s;
}

Linearization Linearization::at(const SolverState& s) {
  return {jacobian(s.theta1, s.P), jacobian(s.theta2, s.Rd)};
}

BlockMatrix svt_prox(const BlockMatrix& B, double threshold) {
  if (!(threshold >= 0.0)) throw InvalidArgument("threshold must be non-negative");
  if (B.size() == 0) return B;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(Eigen::MatrixXd(B),
                                        Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Eigen::VectorXd shrunk = (svd.singularValues().array() - threshold).max(0.0).matrix();
  return svd.matrixU() * shrunk.asDiagonal() * svd.matrixV().transpose();
}

void update_low_rank_block(SolverState& s, double lambda) {
  s.A = svt_prox(stack_blocks(s.C, s.D) + s.Y3 / s.mu, lambda / s.mu);
}

void update_rectified_blocks(SolverState& s, const Linearization& lin) {
  const Eigen::VectorXd w1c = warp(s.theta1, s.P).values() + s.E1 +
                              lin.grad_p * s.delta1.vector() + s.Y1 / s.mu;
  const Eigen::VectorXd w1d = warp(s.theta2, s.Rd).values() + s.E2 +
                              lin.grad_rd * s.delta2.vector() + s.Y2 / s.mu;
  s.C = 0.5 * (w1c + s.A.col(0) - s.Y3.col(0) / s.mu);
  s.D = 0.5 * (w1d + s.A.col(1) - s.Y3.col(1) / s.mu);
}

void update_error_blocks(SolverState& s, const Linearization& lin) {
  const Eigen::VectorXd t1 = s.C - warp(s.theta1, s.P).values() -
                             lin.grad_p * s.delta1.vector() - s.Y1 / s.mu;
  const Eigen::VectorXd t2 = s.D - warp(s.theta2, s.Rd).values() -
                             lin.grad_rd * s.delta2.vector() - s.Y2 / s.mu;
  s.E1 = soft_threshold(t1, 1.0 / s.mu);
  s.E2 = per_axis_mean(t2);
}

std::pair<TransformIncrement, TransformIncrement> update_transform_increments(
    const SolverState& s, const Linearization& lin) {
  const Eigen::VectorXd r1 = s.C - (warp(s.theta1, s.P).values() + s.E1 + s.Y1 / s.mu);
  const Eigen::VectorXd r2 = s.D - (warp(s.theta2, s.Rd).values() + s.E2 + s.Y2 / s.mu);
  return {TransformIncrement::from(solve_normal_equations(lin.grad_p, r1, "collected points")),
          TransformIncrement::from(solve_normal_equations(lin.grad_rd, r2, "candidate points"))};
}

Eigen::VectorXd collected_residual(const SolverState& s, const Linearization& lin) {
  return warp(s.theta1, s.P).values() + s.E1 + lin.grad_p * s.delta1.vector() - s.C;
}

Eigen::VectorXd candidate_residual(const SolverState& s, const Linearization& lin) {
  return warp(s.theta2, s.Rd).values() + s.E2 + lin.grad_rd * s.delta2.vector() - s.D;
}

BlockMatrix stacking_residual(const SolverState& s) { return stack_blocks(s.C, s.D) - s.A; }

void update_multipliers(SolverState& s, const Linearization& lin, double rho) {
  s.Y1 += s.mu * collected_residual(s, lin);
  s.Y2 += s.mu * candidate_residual(s, lin);
  s.Y3 += s.mu * stacking_residual(s);
  s.mu *= rho;
}

double primal_residual(const SolverState& s, const Linearization& lin) {
  return std::sqrt(collected_residual(s, lin).squaredNorm() +
                   candidate_residual(s, lin).squaredNorm() +
                   stacking_residual(s).squaredNorm());
}

double augmented_lagrangian(const SolverState& s, const Linearization& lin, double lambda) {
  const Eigen::VectorXd r1 = collected_residual(s, lin);
  const Eigen::VectorXd r2 = candidate_residual(s, lin);
  const BlockMatrix r3 = stacking_residual(s);
  const double half_mu = 0.5 * s.mu;
  return s.E1.lpNorm<1>() + lambda * nuclear_norm(s.A) + s.Y1.dot(r1) + half_mu * r1.squaredNorm() +
         s.Y2.dot(r2) + half_mu * r2.squaredNorm() + (s.Y3.array() * r3.array()).sum() +
         half_mu * r3.squaredNorm();
}

double alignment_loss(const SolverState& s, double translation_scale) {
  const Eigen::Vector3d t(s.theta1.theta, s.theta1.s_x / translation_scale,
                          s.theta1.s_y / translation_scale);
  return s.E1.lpNorm<1>() + s.E2.lpNorm<1>() + t.norm();
}

SolverResult admm_solve(const StackedCoords& P, const StackedCoords& Rd, const SolverConfig& cfg,
                        const SolveHooks& hooks) {
  cfg.validate();
  if (P.m() != Rd.m()) {
    throw InvalidArgument("collected and candidate blocks differ in size (" +
                          std::to_string(P.m()) + " vs " + std::to_string(Rd.m()) + ")");
  }
  if (P.m() < 2) throw InvalidArgument("alignment needs at least 2 points");
  if (!P.values().allFinite() || !Rd.values().allFinite()) {
    throw InvalidArgument("non-finite input coordinates");
  }

  SolverResult result{SolverState::initial(P, Rd, cfg.mu0)};
  SolverState& s = result.state;
  Linearization lin = Linearization::at(s);

  auto run = [&](BlockStage stage, auto&& step) {
    if (hooks.before) hooks.before(stage, s, lin);
    step();
    if (hooks.after) hooks.after(stage, s, lin);
  };

  for (int it = 1; it <= cfg.max_iters; ++it) {
    const Eigen::VectorXd c_prev = s.C;
    const Eigen::VectorXd d_prev = s.D;

    run(BlockStage::LowRank, [&] { update_low_rank_block(s, cfg.lambda); });
    run(BlockStage::Rectified, [&] { update_rectified_blocks(s, lin); });
    run(BlockStage::Errors, [&] { update_error_blocks(s, lin); });
    run(BlockStage::Increments, [&] {
      std::tie(s.delta1, s.delta2) = update_transform_increments(s, lin);
    });

    s.theta1 = compose(s.delta1, s.theta1);
    s.theta2 = compose(s.delta2, s.theta2);
    s.delta1 = {};
    s.delta2 = {};
    lin = Linearization::at(s);
    result.primal_residual = primal_residual(s, lin);

    run(BlockStage::Multipliers, [&] { update_multipliers(s, lin, cfg.rho); });

    if (!all_finite(s) || !std::isfinite(result.primal_residual)) {
      throw NumericalFailure("solver state became non-finite", it);
    }

    result.iterations = it;
    const double scale = std::max(1.0, std::sqrt(s.C.squaredNorm() + s.D.squaredNorm()));
    const double change =
        std::sqrt((s.C - c_prev).squaredNorm() + (s.D - d_prev).squaredNorm()) / scale;
    if (result.primal_residual < cfg.tol_primal || change < cfg.tol_change) {
      result.converged = true;
      break;
    }
  }

  result.loss = alignment_loss(s, cfg.translation_scale);
  return result;
}

}  // namespace raa
