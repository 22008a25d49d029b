#include "dikin/barrier.hpp"

#include <cmath>
#include <numbers>

#include "dikin/error.hpp"

namespace dikin {

namespace {

Vector interior_slacks(const Polytope& p, const Vector& x) {
  Vector s = slacks(p, x);
  if (!(s.minCoeff() > 0.0)) throw Error(ErrorCode::BoundaryPoint, "point is not strictly interior");
  return s;
}

Matrix symmetric_gram(const Matrix& rows) {
  Matrix h = rows.transpose() * rows;
  return 0.5 * (h + h.transpose());
}

}  // namespace

BarrierFactor factor_at(const Polytope& p, const Vector& x) {
  BarrierFactor f;
  f.slacks_ = interior_slacks(p, x);
  f.point_ = x;
  f.scaled_rows_ = p.A().array().colwise() / f.slacks_.array();
  f.chol_ = linalg::cholesky(symmetric_gram(f.scaled_rows_));
  return f;
}

Matrix barrier_hessian(const Polytope& p, const Vector& x) {
  const Vector s = interior_slacks(p, x);
  return symmetric_gram(p.A().array().colwise() / s.array());
}

double barrier_value(const Polytope& p, const Vector& x) {
  return -interior_slacks(p, x).array().log().sum();
}

Vector barrier_gradient(const Polytope& p, const Vector& x) {
  const Vector s = interior_slacks(p, x);
  return -(p.A().transpose() * s.cwiseInverse());
}

double local_norm(const BarrierFactor& f, const Vector& v) {
  if (v.size() != f.dim()) throw Error(ErrorCode::DimensionMismatch, "vector length does not match dimension");
  return (f.chol().lower().transpose() * v).norm();
}

Vector leverage_scores(const BarrierFactor& f) {
  // Column i of W = L⁻¹ Ãᵀ has squared norm ã_iᵀ H⁻¹ ã_i.
  const Matrix w = linalg::tri_solve_block(f.chol(), Matrix(f.scaled_rows().transpose()), linalg::Side::Lower);
  return w.colwise().squaredNorm().transpose();
}

Vector grad_half_log_det(const BarrierFactor& f) {
  return -(f.scaled_rows().transpose() * leverage_scores(f));
}

double log_gaussian_density(const BarrierFactor& fx, const Vector& z, double radius) {
  if (!(radius > 0.0)) throw Error(ErrorCode::OutOfRange, "radius must be positive");
  const double n = static_cast<double>(fx.dim());
  const double dist = local_norm(fx, z - fx.point());
  return 0.5 * fx.log_det_hessian() + 0.5 * n * std::log(n / (2.0 * std::numbers::pi * radius * radius)) -
         n / (2.0 * radius * radius) * dist * dist;
}

Vector proposal_from_normal(const BarrierFactor& fx, double radius, const Vector& g) {
  const double scale = radius / std::sqrt(static_cast<double>(fx.dim()));
  return fx.point() + scale * linalg::tri_solve(fx.chol(), g, linalg::Side::Transposed);
}

Vector sample_proposal(const BarrierFactor& fx, double radius, Rng& rng) {
  if (!(radius > 0.0)) throw Error(ErrorCode::OutOfRange, "radius must be positive");
  return proposal_from_normal(fx, radius, rng.normal_vector(fx.dim()));
}

Vector analytic_center(const Polytope& p, const Vector& x0, const CenterOptions& opts) {
  if (!(opts.tolerance > 0.0)) throw Error(ErrorCode::OutOfRange, "tolerance must be positive");
  Vector x = x0;
  double value = barrier_value(p, x);
  for (int iter = 0; iter < opts.max_iterations; ++iter) {
    const Vector grad = barrier_gradient(p, x);
    const auto chol = linalg::cholesky(barrier_hessian(p, x));
    const Vector step =
        -linalg::tri_solve(chol, linalg::tri_solve(chol, grad, linalg::Side::Lower), linalg::Side::Transposed);
    const double decrement = std::sqrt(std::max(0.0, -grad.dot(step)));
    if (decrement <= opts.tolerance) return x;

    double t = 1.0;
    while (!contains_interior(p, x + t * step)) t *= opts.backtrack;
    double next = barrier_value(p, x + t * step);
    for (int k = 0; k < 60 && next > value + opts.armijo_slope * t * grad.dot(step); ++k) {
      t *= opts.backtrack;
      next = barrier_value(p, x + t * step);
    }
    x += t * step;
    value = next;
  }
  throw Error(ErrorCode::NoConvergence,
              "analytic center did not converge in " + std::to_string(opts.max_iterations) + " iterations",
              opts.max_iterations);
}

Vector find_interior_point(const Polytope& p, int max_iterations) {
  const Eigen::Index n = p.dim();
  const Eigen::Index m = p.rows();
  // Variables y = (x, δ); phase-I barrier
  //   φ_τ(y) = -τ δ + ½ μ ‖x‖² - Σ log(s_i(x) - δ) - log(1 - δ).
  // The proximal term keeps a minimizer when the polytope is unbounded.
  constexpr double mu = 1e-6;
  Matrix rows(m, n + 1);
  rows.leftCols(n) = p.A();
  rows.col(n).setConstant(-1.0);

  Vector y = Vector::Zero(n + 1);
  y[n] = (-p.b()).minCoeff() - 1.0;

  auto margins = [&](const Vector& v) -> Vector { return rows * v - p.b(); };
  auto feasible = [&](const Vector& v) { return v[n] < 1.0 && margins(v).minCoeff() > 0.0; };
  auto objective = [&](const Vector& v, double tau) {
    return -tau * v[n] + 0.5 * mu * v.head(n).squaredNorm() - margins(v).array().log().sum() - std::log(1.0 - v[n]);
  };

  double tau = 1.0;
  int iterations = 0;
  while (iterations < max_iterations) {
    if (y[n] > 0.0 && contains_interior(p, Vector(y.head(n)))) return y.head(n);
    const Vector u = margins(y);
    const Matrix scaled = rows.array().colwise() / u.array();
    Vector grad = -(scaled.transpose() * Vector::Ones(m));
    grad.head(n) += mu * y.head(n);
    grad[n] += -tau + 1.0 / (1.0 - y[n]);
    Matrix hess = symmetric_gram(scaled);
    hess.topLeftCorner(n, n).diagonal().array() += mu;
    hess(n, n) += 1.0 / ((1.0 - y[n]) * (1.0 - y[n]));

    const auto chol = linalg::cholesky(hess);
    const Vector step =
        -linalg::tri_solve(chol, linalg::tri_solve(chol, grad, linalg::Side::Lower), linalg::Side::Transposed);
    const double decrement = std::sqrt(std::max(0.0, -grad.dot(step)));
    ++iterations;
    if (decrement < 1e-3) {
      tau *= 10.0;
      continue;
    }
    double t = 1.0;
    while (!feasible(y + t * step)) t *= 0.5;
    const double value = objective(y, tau);
    for (int k = 0; k < 60 && objective(y + t * step, tau) > value + 0.25 * t * grad.dot(step); ++k) t *= 0.5;
    y += t * step;
  }
  throw Error(ErrorCode::NoConvergence, "no strictly interior point found", max_iterations);
}

}  // namespace dikin
