#include "dikin/linalg.hpp"

#include <cmath>
#include <string>

#include "dikin/error.hpp"

namespace dikin::linalg {

namespace {

void check_order(const CholeskyFactor& f, Eigen::Index rows) {
  if (rows != f.order()) {
    throw Error(ErrorCode::DimensionMismatch,
                "expected length " + std::to_string(f.order()) + ", got " + std::to_string(rows));
  }
}

}  // namespace

Matrix CholeskyFactor::reconstruct() const { return lower_ * lower_.transpose(); }

CholeskyFactor cholesky(const Matrix& m) {
  const Eigen::Index n = m.rows();
  if (m.cols() != n || n == 0) {
    throw Error(ErrorCode::DimensionMismatch, "cholesky needs a non-empty square matrix");
  }
  if (!m.allFinite()) throw Error(ErrorCode::NotSymmetric, "matrix has non-finite entries");
  const double scale = m.cwiseAbs().maxCoeff();
  if ((m - m.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
    throw Error(ErrorCode::NotSymmetric, "matrix is not symmetric");
  }

  CholeskyFactor f;
  f.lower_ = Matrix::Zero(n, n);
  Matrix& l = f.lower_;
  double log_det = 0.0;
  for (Eigen::Index j = 0; j < n; ++j) {
    double pivot = m(j, j);
    for (Eigen::Index k = 0; k < j; ++k) pivot -= l(j, k) * l(j, k);
    if (!(pivot > 0.0)) {
      throw Error(ErrorCode::NotPositiveDefinite, "non-positive pivot at index " + std::to_string(j),
                  static_cast<long>(j));
    }
    const double d = std::sqrt(pivot);
    l(j, j) = d;
    log_det += std::log(d);
    for (Eigen::Index i = j + 1; i < n; ++i) {
      double s = m(i, j);
      for (Eigen::Index k = 0; k < j; ++k) s -= l(i, k) * l(j, k);
      l(i, j) = s / d;
    }
  }
  f.log_det_ = 2.0 * log_det;
  return f;
}

Vector tri_solve(const CholeskyFactor& f, const Vector& y, Side side) {
  check_order(f, y.size());
  const Matrix& l = f.lower();
  const Eigen::Index n = f.order();
  Vector x(n);
  if (side == Side::Lower) {
    for (Eigen::Index i = 0; i < n; ++i) {
      double s = y[i];
      for (Eigen::Index k = 0; k < i; ++k) s -= l(i, k) * x[k];
      x[i] = s / l(i, i);
    }
  } else {
    for (Eigen::Index i = n - 1; i >= 0; --i) {
      double s = y[i];
      for (Eigen::Index k = i + 1; k < n; ++k) s -= l(k, i) * x[k];
      x[i] = s / l(i, i);
    }
  }
  return x;
}

Matrix tri_solve_block(const CholeskyFactor& f, const Matrix& y, Side side) {
  check_order(f, y.rows());
  Matrix x(y.rows(), y.cols());
  for (Eigen::Index c = 0; c < y.cols(); ++c) x.col(c) = tri_solve(f, Vector(y.col(c)), side);
  return x;
}

double quad_form_inv(const CholeskyFactor& f, const Vector& v) {
  return tri_solve(f, v, Side::Lower).squaredNorm();
}

}  // namespace dikin::linalg
