// Test-only reference computations, kept independent of the library paths
// they check.
#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <vector>

#include <Eigen/Core>

namespace oracle {

/// Cyclic Jacobi eigenvalues of a small symmetric matrix, sorted ascending.
inline std::vector<double> jacobi_eigenvalues(Eigen::MatrixXd a, int sweeps = 100) {
  const Eigen::Index n = a.rows();
  for (int s = 0; s < sweeps; ++s) {
    double off = 0.0;
    for (Eigen::Index p = 0; p < n; ++p)
      for (Eigen::Index q = p + 1; q < n; ++q) off += a(p, q) * a(p, q);
    if (off < 1e-30) break;
    for (Eigen::Index p = 0; p < n; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        if (a(p, q) == 0.0) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * a(p, q));
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double sn = t * c;
        for (Eigen::Index k = 0; k < n; ++k) {
          const double akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - sn * akq;
          a(k, q) = sn * akp + c * akq;
        }
        for (Eigen::Index k = 0; k < n; ++k) {
          const double apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk - sn * aqk;
          a(q, k) = sn * apk + c * aqk;
        }
      }
    }
  }
  std::vector<double> ev(n);
  for (Eigen::Index i = 0; i < n; ++i) ev[i] = a(i, i);
  std::sort(ev.begin(), ev.end());
  return ev;
}

/// Generalized eigenvalues of (A, B): roots of the characteristic polynomial
/// of A·B⁻¹, with B⁻¹ from Gauss-Jordan elimination. n ≤ 3 only.
inline std::vector<double> generalized_eigenvalues(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  const Eigen::Index n = a.rows();
  // Gauss-Jordan inverse of b.
  Eigen::MatrixXd aug(n, 2 * n);
  aug << b, Eigen::MatrixXd::Identity(n, n);
  for (Eigen::Index c = 0; c < n; ++c) {
    Eigen::Index piv = c;
    for (Eigen::Index r = c + 1; r < n; ++r)
      if (std::abs(aug(r, c)) > std::abs(aug(piv, c))) piv = r;
    aug.row(c).swap(aug.row(piv));
    aug.row(c) /= aug(c, c);
    for (Eigen::Index r = 0; r < n; ++r)
      if (r != c) aug.row(r) -= aug(r, c) * aug.row(c);
  }
  const Eigen::MatrixXd binv = aug.rightCols(n);
  const Eigen::MatrixXd m = a * binv;
  std::vector<double> roots;
  if (n == 1) {
    roots = {m(0, 0)};
  } else if (n == 2) {
    const double tr = m.trace(), det = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
    const double disc = std::sqrt(std::max(0.0, tr * tr / 4.0 - det));
    roots = {tr / 2.0 - disc, tr / 2.0 + disc};
  } else {
    // n = 3: trigonometric solution of the (real-rooted) characteristic cubic.
    const double c2 = -m.trace();
    const double c1 = 0.5 * (m.trace() * m.trace() - (m * m).trace());
    const double c0 = -(m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) -
                        m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0)) +
                        m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0)));
    const double p = c1 - c2 * c2 / 3.0;
    const double q = 2.0 * c2 * c2 * c2 / 27.0 - c2 * c1 / 3.0 + c0;
    const double r = std::sqrt(std::max(0.0, -p / 3.0));
    const double arg = r > 0 ? std::clamp(-q / (2.0 * r * r * r), -1.0, 1.0) : 0.0;
    const double phi = std::acos(arg) / 3.0;
    for (int k = 0; k < 3; ++k) roots.push_back(2.0 * r * std::cos(phi - 2.0 * std::numbers::pi * k / 3.0) - c2 / 3.0);
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

/// Central finite-difference gradient.
inline Eigen::VectorXd fd_gradient(const std::function<double(const Eigen::VectorXd&)>& f, const Eigen::VectorXd& x,
                                   double h = 1e-6) {
  Eigen::VectorXd g(x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    Eigen::VectorXd xp = x, xm = x;
    xp[i] += h;
    xm[i] -= h;
    g[i] = (f(xp) - f(xm)) / (2.0 * h);
  }
  return g;
}

/// Composite Simpson rule on [a, b] with `intervals` (even) subintervals.
inline double simpson(const std::function<double(double)>& f, double a, double b, int intervals = 20000) {
  const double h = (b - a) / intervals;
  double s = f(a) + f(b);
  for (int i = 1; i < intervals; ++i) s += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
  return s * h / 3.0;
}

inline double normal_pdf(double z, double mean, double sd) {
  const double u = (z - mean) / sd;
  return std::exp(-0.5 * u * u) / (sd * std::sqrt(2.0 * std::numbers::pi));
}

}  // namespace oracle
