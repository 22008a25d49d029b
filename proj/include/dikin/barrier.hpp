#pragma once

#include "dikin/linalg.hpp"
#include "dikin/polytope.hpp"
#include "dikin/rng.hpp"

namespace dikin {

/// Log-barrier geometry cached at one interior point x:
/// slacks s_i, scaled rows ã_i = a_i / s_i, and the Cholesky factor of
/// H(x) = Σ ã_i ã_iᵀ.
class BarrierFactor {
 public:
  const Vector& point() const noexcept { return point_; }
  const Vector& slacks() const noexcept { return slacks_; }
  /// Row i is ã_iᵀ.
  const Matrix& scaled_rows() const noexcept { return scaled_rows_; }
  const linalg::CholeskyFactor& chol() const noexcept { return chol_; }
  double log_det_hessian() const noexcept { return chol_.log_det(); }
  Eigen::Index dim() const noexcept { return point_.size(); }

  Matrix hessian() const { return chol_.reconstruct(); }

 private:
  friend BarrierFactor factor_at(const Polytope& p, const Vector& x);
  Vector point_;
  Vector slacks_;
  Matrix scaled_rows_;
  linalg::CholeskyFactor chol_;
};

/// Throws BoundaryPoint if x is not strictly interior, NotPositiveDefinite
/// if A is rank-deficient.
BarrierFactor factor_at(const Polytope& p, const Vector& x);

/// Σ a_i a_iᵀ / s_i², assembled symmetrically.
Matrix barrier_hessian(const Polytope& p, const Vector& x);

/// F(x) = -Σ log s_i.
double barrier_value(const Polytope& p, const Vector& x);
/// ∇F(x) = -Σ a_i / s_i.
Vector barrier_gradient(const Polytope& p, const Vector& x);

/// ‖v‖_x = √(vᵀ H(x) v) = ‖Lᵀ v‖.
double local_norm(const BarrierFactor& f, const Vector& v);

/// σ_i = ã_iᵀ H⁻¹ ã_i. Each lies in [0, 1] and they sum to n.
Vector leverage_scores(const BarrierFactor& f);

/// ∇(½ log det H)(x) = -Σ σ_i ã_i.
Vector grad_half_log_det(const BarrierFactor& f);

/// log g_x(z) for the proposal N(x, (r²/n) H(x)⁻¹).
double log_gaussian_density(const BarrierFactor& fx, const Vector& z, double radius);

/// z = x + (r/√n) L⁻ᵀ g for a caller-supplied standard normal vector g.
Vector proposal_from_normal(const BarrierFactor& fx, double radius, const Vector& g);
Vector sample_proposal(const BarrierFactor& fx, double radius, Rng& rng);

struct CenterOptions {
  int max_iterations = 100;
  /// Stop once the Newton decrement ‖∇F‖_{H⁻¹} falls to this value.
  double tolerance = 1e-8;
  double backtrack = 0.5;
  double armijo_slope = 0.25;
};

/// Minimizer of F by damped Newton with backtracking (interiority, then
/// Armijo). Every iterate stays interior. Throws BoundaryPoint for a bad
/// start and NoConvergence when the iteration budget runs out.
Vector analytic_center(const Polytope& p, const Vector& x0, const CenterOptions& opts = {});

/// Strictly interior point found by a barrier phase-I on
/// max δ s.t. Ax - b ≥ δ·1 (δ ≤ 1), started from the origin.
/// Throws NoConvergence if no interior point turns up (empty interior or
/// an unbounded phase-I).
Vector find_interior_point(const Polytope& p, int max_iterations = 200);

}  // namespace dikin
