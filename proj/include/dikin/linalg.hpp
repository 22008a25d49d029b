#pragma once

#include <Eigen/Core>

namespace dikin {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

namespace linalg {

enum class Side { Lower, Transposed };

/// Lower Cholesky factor M = L Lᵀ of a symmetric positive definite matrix,
/// together with log det M = 2 Σ log L_ii.
class CholeskyFactor {
 public:
  CholeskyFactor() = default;

  Eigen::Index order() const noexcept { return lower_.rows(); }
  const Matrix& lower() const noexcept { return lower_; }
  double log_det() const noexcept { return log_det_; }

  /// L Lᵀ.
  Matrix reconstruct() const;

 private:
  friend CholeskyFactor cholesky(const Matrix& m);
  Matrix lower_;
  double log_det_ = 0.0;
};

/// Unpivoted Cholesky. Throws NotPositiveDefinite (index = failing pivot) if
/// a pivot is not strictly positive; NotSymmetric for asymmetric/non-finite input.
CholeskyFactor cholesky(const Matrix& m);

/// Solves L x = y (Side::Lower) or Lᵀ x = y (Side::Transposed).
Vector tri_solve(const CholeskyFactor& f, const Vector& y, Side side);

/// Column-wise tri_solve for a block of right-hand sides.
Matrix tri_solve_block(const CholeskyFactor& f, const Matrix& y, Side side);

/// vᵀ M⁻¹ v = ‖L⁻¹ v‖².
double quad_form_inv(const CholeskyFactor& f, const Vector& v);

}  // namespace linalg
}  // namespace dikin
