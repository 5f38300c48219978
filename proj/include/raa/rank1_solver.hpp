#pragma once

#include <functional>
#include <utility>

#include <Eigen/Core>

#include "raa/transform.hpp"

namespace raa {

using BlockMatrix = Eigen::Matrix<double, Eigen::Dynamic, 2>;

struct SolverConfig {
  /// Weight of the rank term against the sparse error term.
  double lambda = 100.0;
  /// Initial penalty parameter.
  double mu0 = 1.0;
  /// Penalty growth per iteration.
  double rho = 1.3;
  int max_iters = 300;
  /// Meters.
  double tol_primal = 1e-4;
  double tol_change = 1e-6;
  /// Meters of translation that weigh like one radian in the alignment loss.
  double translation_scale = 10.0;

  /// Throws InvalidArgument when a field is out of range.
  void validate() const;
};

/// All ADMM blocks for aligning collected points P with a candidate window Rd.
/// Column vectors have length 2M (interleaved x, y); A and Y3 are 2M x 2 with
/// the collected block in column 0 and the candidate block in column 1.
struct SolverState {
  StackedCoords P;
  StackedCoords Rd;
  Eigen::VectorXd C;
  Eigen::VectorXd D;
  BlockMatrix A;
  Eigen::VectorXd E1;
  Eigen::VectorXd E2;
  RigidTransform2D theta1;
  RigidTransform2D theta2;
  /// Pending linearized increments; zero except between the increment step
  /// and the fold into theta1/theta2.
  TransformIncrement delta1;
  TransformIncrement delta2;
  Eigen::VectorXd Y1;
  Eigen::VectorXd Y2;
  BlockMatrix Y3;
  double mu = 1.0;

  /// theta = identity, E = 0, Y = 0, A = [P Rd], C = P, D = Rd.
  static SolverState initial(const StackedCoords& P, const StackedCoords& Rd, double mu0);

  std::size_t m() const noexcept { return P.m(); }
};

/// Jacobians of the two warps at the current transforms.
struct Linearization {
  Jacobian grad_p;
  Jacobian grad_rd;

  static Linearization at(const SolverState& s);
};

struct SolverResult {
  SolverState state;
  double loss = 0.0;
  int iterations = 0;
  bool converged = false;
  double primal_residual = 0.0;
};

/// Singular value soft-thresholding: U * max(S - threshold, 0) * V^T.
BlockMatrix svt_prox(const BlockMatrix& B, double threshold);

/// A <- svt_prox([C D] + Y3 / mu, lambda / mu).
void update_low_rank_block(SolverState& s, double lambda);

/// Closed-form minimizers of the augmented Lagrangian in C and D.
void update_rectified_blocks(SolverState& s, const Linearization& lin);

/// E1 by elementwise soft-thresholding at 1/mu; E2 by per-axis mean of its
/// target so it stays a pure translation.
void update_error_blocks(SolverState& s, const Linearization& lin);

/// Least-squares increments for theta1 and theta2. Throws DegenerateGeometry
/// when a normal matrix is singular.
std::pair<TransformIncrement, TransformIncrement> update_transform_increments(
    const SolverState& s, const Linearization& lin);

/// Dual ascent on Y1, Y2, Y3 using the current constraint residuals, then
/// mu <- rho * mu. The solver calls it after folding the increments, so the
/// linearized terms vanish.
void update_multipliers(SolverState& s, const Linearization& lin, double rho);

/// Constraint residuals of the linearized problem.
Eigen::VectorXd collected_residual(const SolverState& s, const Linearization& lin);
Eigen::VectorXd candidate_residual(const SolverState& s, const Linearization& lin);
BlockMatrix stacking_residual(const SolverState& s);

/// Frobenius norm of all three constraint residuals.
double primal_residual(const SolverState& s, const Linearization& lin);

/// Augmented Lagrangian of the linearized problem at the current state.
/// E2 enters only through its constraint: the E2 subproblem the solver
/// minimizes carries no norm of its own.
double augmented_lagrangian(const SolverState& s, const Linearization& lin, double lambda);

/// |E1|_1 + |E2|_1 + |(theta, s_x / scale, s_y / scale)|_2 of theta1.
double alignment_loss(const SolverState& s, double translation_scale);

enum class BlockStage { LowRank, Rectified, Errors, Increments, Multipliers };

/// Optional callbacks into the solve loop; `before` and `after` bracket every
/// block update with the linearization that update used.
struct SolveHooks {
  std::function<void(BlockStage, const SolverState&, const Linearization&)> before;
  std::function<void(BlockStage, const SolverState&, const Linearization&)> after;
};

/// Runs the ADMM iterations until the primal residual or the relative state
/// change drops below tolerance, or max_iters is reached. Throws
/// InvalidArgument on bad input and NumericalFailure on divergence.
SolverResult admm_solve(const StackedCoords& P, const StackedCoords& Rd, const SolverConfig& cfg,
                        const SolveHooks& hooks = {});

}  // namespace raa
