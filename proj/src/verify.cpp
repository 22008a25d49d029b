#include "dikin/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <future>
#include <limits>
#include <numbers>

#include <Eigen/Eigenvalues>

#include "dikin/error.hpp"
#include "dikin/metrics.hpp"
#include "dikin/walk.hpp"

namespace dikin::verify {

namespace {

constexpr double kE = std::numbers::e;

// Welford accumulator; sequential, so results are reproducible bit-for-bit.
struct RunningMean {
  std::uint64_t count = 0;
  double mean = 0.0;
  double m2 = 0.0;

  void add(double v) {
    ++count;
    const double delta = v - mean;
    mean += delta / static_cast<double>(count);
    m2 += delta * (v - mean);
  }
  double standard_error() const {
    if (count < 2) return 0.0;
    return std::sqrt(m2 / static_cast<double>(count - 1) / static_cast<double>(count));
  }
};

double proportion_se(double p, std::uint64_t n) {
  return n == 0 ? 0.0 : std::sqrt(std::max(0.0, p * (1.0 - p)) / static_cast<double>(n));
}

void check_epsilon(double epsilon) {
  if (!(epsilon > 0.0 && epsilon <= 0.5)) throw Error(ErrorCode::OutOfRange, "epsilon must lie in (0, 1/2]");
}

void check_isotropic(const Matrix& b) {
  const Matrix gram = b.transpose() * b;
  const double dev = (gram - Matrix::Identity(b.cols(), b.cols())).cwiseAbs().maxCoeff();
  if (dev > 1e-8) throw Error(ErrorCode::NotIsotropic, "rows of B must satisfy sum b_i b_iᵀ = I");
}

bool is_orthonormal_basis(const Matrix& b) {
  if (b.rows() != b.cols()) return false;
  return ((b * b.transpose()) - Matrix::Identity(b.rows(), b.rows())).cwiseAbs().maxCoeff() <= 1e-8;
}

Matrix inverse_from(const linalg::CholeskyFactor& f) {
  const Matrix id = Matrix::Identity(f.order(), f.order());
  return linalg::tri_solve_block(f, linalg::tri_solve_block(f, id, linalg::Side::Lower), linalg::Side::Transposed);
}

}  // namespace

double VerifyReport::detail(const std::string& key) const {
  for (const auto& [k, v] : details) {
    if (k == key) return v;
  }
  return std::numeric_limits<double>::quiet_NaN();
}

std::string format_report(const VerifyReport& r) {
  char buf[256];
  std::snprintf(buf, sizeof buf, "%-30s empirical=%-14.8g %-2s bound=%-14.8g N=%-8llu %s", r.check_name.c_str(),
                r.empirical, r.relation.c_str(), r.bound, static_cast<unsigned long long>(r.samples),
                r.passed ? "PASS" : "FAIL");
  return buf;
}

double kl_gaussians(const GaussianPair& pair) {
  const Eigen::Index n = pair.mu1.size();
  if (pair.mu2.size() != n || pair.sigma1.rows() != n || pair.sigma2.rows() != n) {
    throw Error(ErrorCode::DimensionMismatch, "Gaussian pair has inconsistent dimensions");
  }
  const auto c1 = linalg::cholesky(pair.sigma1);
  const auto c2 = linalg::cholesky(pair.sigma2);
  // tr(Σ₁⁻¹Σ₂) = ‖L₁⁻¹ L₂‖_F²
  const double trace = linalg::tri_solve_block(c1, c2.lower(), linalg::Side::Lower).squaredNorm();
  const double mahalanobis = linalg::quad_form_inv(c1, pair.mu1 - pair.mu2);
  const double kl = 0.5 * (trace - static_cast<double>(n) + c1.log_det() - c2.log_det() + mahalanobis);
  return std::max(0.0, kl);
}

GaussianPair proposal_pair(const BarrierFactor& fx, const BarrierFactor& fy, double radius) {
  const double scale = radius * radius / static_cast<double>(fx.dim());
  return {fx.point(), fy.point(), scale * inverse_from(fx.chol()), scale * inverse_from(fy.chol())};
}

double rejection_radius_cap(double epsilon) {
  check_epsilon(epsilon);
  return epsilon / 100.0 * std::pow(std::log(50.0 / epsilon), -1.5);
}

double logdet_radius_cap(double epsilon) {
  check_epsilon(epsilon);
  return epsilon / std::sqrt(2.0 * std::log(1.0 / epsilon));
}

double localnorm_radius_cap(double epsilon) {
  check_epsilon(epsilon);
  return epsilon / 20.0 * std::pow(std::log(11.0 / epsilon), -1.5);
}

VerifyReport estimate_tv_proposals(const Polytope& p, const Vector& x, const Vector& y, double radius,
                                   std::uint64_t samples, std::uint64_t seed) {
  const BarrierFactor fx = factor_at(p, x);
  const BarrierFactor fy = factor_at(p, y);
  const double n = static_cast<double>(p.dim());
  const double c = std::sqrt(n) * local_norm(fx, y - x);
  if (!(radius > 0.0 && radius <= 1.0)) throw Error(ErrorCode::PreconditionViolated, "radius must lie in (0, 1]");
  if (c > std::min(radius, 1.0 / 3.0) * (1.0 + 1e-12)) {
    throw Error(ErrorCode::PreconditionViolated, "points too far apart: c = " + std::to_string(c));
  }

  Rng rng(seed);
  RunningMean tv;
  for (std::uint64_t k = 0; k < samples; ++k) {
    const Vector z = sample_proposal(fx, radius, rng);
    const double log_ratio = log_gaussian_density(fy, z, radius) - log_gaussian_density(fx, z, radius);
    tv.add(std::max(0.0, 1.0 - std::exp(log_ratio)));
  }
  const double kl = kl_gaussians(proposal_pair(fx, fy, radius));
  const double pinsker = std::sqrt(2.0 * kl);
  const double se = tv.standard_error();

  VerifyReport r;
  r.check_name = "proposal_tv";
  r.empirical = tv.mean;
  r.bound = 3.0 * c;
  r.samples = samples;
  r.seed = seed;
  r.standard_error = se;
  r.passed = tv.mean <= r.bound + 3.0 * se;
  r.details = {{"c", c}, {"kl", kl}, {"pinsker_bound", pinsker},
               {"pinsker_passed", tv.mean <= pinsker + 3.0 * se ? 1.0 : 0.0}};
  return r;
}

VerifyReport estimate_rejection(const Polytope& p, const Vector& x, double radius, double epsilon,
                                std::uint64_t samples, std::uint64_t seed) {
  check_epsilon(epsilon);
  const BarrierFactor fx = factor_at(p, x);
  Rng rng(seed);
  RunningMean rejected;
  std::uint64_t outside = 0;
  for (std::uint64_t k = 0; k < samples; ++k) {
    const Vector z = sample_proposal(fx, radius, rng);
    if (!contains_interior(p, z)) {
      ++outside;
      rejected.add(1.0);
      continue;
    }
    const double lar = log_accept_ratio(fx, factor_at(p, z), radius);
    rejected.add(1.0 - std::exp(std::min(0.0, lar)));
  }
  VerifyReport r;
  r.check_name = "rejection_mass";
  r.empirical = rejected.mean;
  r.bound = epsilon;
  r.samples = samples;
  r.seed = seed;
  r.standard_error = rejected.standard_error();
  r.passed = r.empirical <= r.bound + 3.0 * r.standard_error;
  r.details = {{"radius", radius},
               {"in_regime", radius <= rejection_radius_cap(epsilon) * (1.0 + 1e-12) ? 1.0 : 0.0},
               {"outside", static_cast<double>(outside)}};
  return r;
}

VerifyReport check_hessian_sandwich(const Polytope& p, const Vector& x, const Vector& y) {
  const BarrierFactor fx = factor_at(p, x);
  const BarrierFactor fy = factor_at(p, y);
  const double n = static_cast<double>(p.dim());
  const double shift = local_norm(fx, y - x);  // c/√n
  if (!(shift < 1.0)) throw Error(ErrorCode::PreconditionViolated, "need ‖x−y‖_x < 1 for a positive lower bound");

  // Whitened L_y⁻¹ H(x) L_y⁻ᵀ shares its spectrum with H(x) H(y)⁻¹.
  const Matrix half = linalg::tri_solve_block(fy.chol(), fx.hessian(), linalg::Side::Lower);
  Matrix whitened = linalg::tri_solve_block(fy.chol(), Matrix(half.transpose()), linalg::Side::Lower);
  whitened = 0.5 * (whitened + whitened.transpose()).eval();
  const Eigen::SelfAdjointEigenSolver<Matrix> eig(whitened, Eigen::EigenvaluesOnly);
  const double lo = eig.eigenvalues().minCoeff();
  const double hi = eig.eigenvalues().maxCoeff();
  const double lower = (1.0 - shift) * (1.0 - shift);
  const double upper = (1.0 + shift) * (1.0 + shift);

  VerifyReport r;
  r.check_name = "hessian_sandwich";
  r.relation = "in";
  r.empirical = hi;
  r.bound = upper;
  r.samples = 1;
  r.passed = lo >= lower - 1e-9 && hi <= upper + 1e-9;
  r.details = {{"lambda_min", lo}, {"lambda_max", hi}, {"lower_bound", lower}, {"upper_bound", upper},
               {"c", std::sqrt(n) * shift}};
  return r;
}

VerifyReport logdet_change_check(const Polytope& p, const Vector& x, double radius, double epsilon,
                                 std::uint64_t samples, std::uint64_t seed) {
  check_epsilon(epsilon);
  if (!(radius > 0.0) || radius > logdet_radius_cap(epsilon) * (1.0 + 1e-12)) {
    throw Error(ErrorCode::OutOfRange, "radius exceeds ε/√(2 log 1/ε)");
  }
  const BarrierFactor fx = factor_at(p, x);
  Rng rng(seed);
  std::uint64_t hits = 0, outside = 0;
  for (std::uint64_t k = 0; k < samples; ++k) {
    const Vector z = sample_proposal(fx, radius, rng);
    if (!contains_interior(p, z)) {
      ++outside;
      continue;
    }
    if (factor_at(p, z).log_det_hessian() - fx.log_det_hessian() >= -2.0 * epsilon) ++hits;
  }
  VerifyReport r;
  r.check_name = "logdet_change";
  r.relation = ">=";
  r.empirical = samples ? static_cast<double>(hits) / static_cast<double>(samples) : 0.0;
  r.bound = 1.0 - epsilon;
  r.samples = samples;
  r.seed = seed;
  r.standard_error = proportion_se(r.empirical, samples);
  r.passed = r.empirical >= r.bound - 3.0 * r.standard_error;
  r.details = {{"radius", radius}, {"outside", static_cast<double>(outside)}};
  return r;
}

double local_norm_change(const BarrierFactor& fx, const BarrierFactor& fz) {
  const Vector d = fz.point() - fx.point();
  const double at_z = local_norm(fz, d);
  const double at_x = local_norm(fx, d);
  return at_z * at_z - at_x * at_x;
}

VerifyReport localnorm_change_check(const Polytope& p, const Vector& x, double radius, double epsilon,
                                    std::uint64_t samples, std::uint64_t seed) {
  check_epsilon(epsilon);
  if (!(radius > 0.0) || radius > localnorm_radius_cap(epsilon) * (1.0 + 1e-12)) {
    throw Error(ErrorCode::OutOfRange, "radius exceeds (ε/20)(log 11/ε)^{-3/2}");
  }
  const BarrierFactor fx = factor_at(p, x);
  const double threshold = 2.0 * epsilon * radius * radius / static_cast<double>(p.dim());
  Rng rng(seed);
  std::uint64_t hits = 0, outside = 0;
  for (std::uint64_t k = 0; k < samples; ++k) {
    const Vector z = sample_proposal(fx, radius, rng);
    if (!contains_interior(p, z)) {
      ++outside;
      continue;
    }
    if (local_norm_change(fx, factor_at(p, z)) <= threshold) ++hits;
  }
  VerifyReport r;
  r.check_name = "localnorm_change";
  r.relation = ">=";
  r.empirical = samples ? static_cast<double>(hits) / static_cast<double>(samples) : 0.0;
  r.bound = 1.0 - epsilon;
  r.samples = samples;
  r.seed = seed;
  r.standard_error = proportion_se(r.empirical, samples);
  r.passed = r.empirical >= r.bound - 3.0 * r.standard_error;
  r.details = {{"radius", radius}, {"threshold", threshold}, {"outside", static_cast<double>(outside)}};
  return r;
}

RadiusConditions radius_conditions(double epsilon) {
  check_epsilon(epsilon);
  const double log_term = std::log(2.0 / epsilon);
  RadiusConditions rc{};
  rc.lambda1 = std::pow(std::max(2.0 * kE, 2.0 * kE / 3.0 * log_term), 1.5);
  rc.lambda2 = std::pow(std::max(2.0 * kE, 2.0 * kE / 4.0 * log_term), 2.0);
  rc.r_max = std::min({1.0, epsilon / (2.0 * std::sqrt(15.0) * rc.lambda1),
                       std::sqrt(epsilon) / std::sqrt(8.0 * rc.lambda2 * std::sqrt(105.0))});
  rc.r_cap = localnorm_radius_cap(epsilon);
  rc.holds = rc.r_cap <= rc.r_max;
  return rc;
}

double isserlis_mixed_third(const Vector& b1, const Vector& b2) {
  const double ip = b1.dot(b2);
  return 9.0 * b1.squaredNorm() * b2.squaredNorm() * ip + 6.0 * ip * ip * ip;
}

double isserlis_mixed_fourth(const Vector& b1, const Vector& b2) {
  const double s1 = b1.squaredNorm();
  const double s2 = b2.squaredNorm();
  const double ip2 = b1.dot(b2) * b1.dot(b2);
  return 9.0 * s1 * s1 * s2 * s2 + 72.0 * s1 * s2 * ip2 + 24.0 * ip2 * ip2;
}

VerifyReport isserlis_check(const Vector& b1, const Vector& b2, std::uint64_t samples, std::uint64_t seed) {
  if (b1.size() != b2.size()) throw Error(ErrorCode::DimensionMismatch, "vectors differ in length");
  Rng rng(seed);
  RunningMean acc;
  for (std::uint64_t k = 0; k < samples; ++k) {
    const Vector g = rng.normal_vector(b1.size());
    const double u = b1.dot(g);
    const double v = b2.dot(g);
    acc.add(u * u * u * v * v * v);
  }
  VerifyReport r;
  r.check_name = "isserlis";
  r.relation = "~=";
  r.empirical = acc.mean;
  r.bound = isserlis_mixed_third(b1, b2);
  r.samples = samples;
  r.seed = seed;
  r.standard_error = acc.standard_error();
  r.passed = std::abs(r.empirical - r.bound) <= 3.0 * r.standard_error;
  return r;
}

double exact_cubic_second_moment(const Matrix& b) {
  double total = 0.0;
  for (Eigen::Index i = 0; i < b.rows(); ++i) {
    for (Eigen::Index j = 0; j < b.rows(); ++j) total += isserlis_mixed_third(b.row(i).transpose(), b.row(j).transpose());
  }
  return total;
}

double exact_quartic_second_moment(const Matrix& b) {
  double total = 0.0;
  for (Eigen::Index i = 0; i < b.rows(); ++i) {
    for (Eigen::Index j = 0; j < b.rows(); ++j) total += isserlis_mixed_fourth(b.row(i).transpose(), b.row(j).transpose());
  }
  return total;
}

std::pair<VerifyReport, VerifyReport> gaussian_poly_moments(const Matrix& b, std::uint64_t samples,
                                                            std::uint64_t seed) {
  check_isotropic(b);
  const double n = static_cast<double>(b.cols());
  Rng rng(seed);
  RunningMean cubic, quartic;
  for (std::uint64_t k = 0; k < samples; ++k) {
    const Vector proj = b * rng.normal_vector(b.cols());
    const double p1 = proj.array().cube().sum();
    const double p2 = proj.array().square().square().sum();
    cubic.add(p1 * p1);
    quartic.add(p2 * p2);
  }
  auto make = [&](const char* name, const RunningMean& acc, double bound, double exact) {
    VerifyReport r;
    r.check_name = name;
    r.empirical = acc.mean;
    r.bound = bound;
    r.samples = samples;
    r.seed = seed;
    r.standard_error = acc.standard_error();
    r.passed = acc.mean <= bound + 3.0 * r.standard_error;
    r.details = {{"exact", exact}};
    return r;
  };
  return {make("poly_moment_cubic", cubic, 15.0 * n, exact_cubic_second_moment(b)),
          make("poly_moment_quartic", quartic, 105.0 * n * n, exact_quartic_second_moment(b))};
}

VerifyReport concentration_tail(const Matrix& b, int degree, double t, std::uint64_t samples,
                                std::uint64_t seed) {
  if (degree != 3 && degree != 4) throw Error(ErrorCode::OutOfRange, "degree must be 3 or 4");
  const double q = degree;
  const double threshold = std::pow(2.0 * kE, q / 2.0);
  if (!(t >= threshold * (1.0 - 1e-12))) {
    throw Error(ErrorCode::OutOfRange, "t must be at least (2e)^{q/2} = " + std::to_string(threshold));
  }
  check_isotropic(b);
  const double n = static_cast<double>(b.cols());

  Rng rng(seed);
  std::vector<double> values;
  values.reserve(samples);
  double sum_sq = 0.0;
  for (std::uint64_t k = 0; k < samples; ++k) {
    const Vector proj = b * rng.normal_vector(b.cols());
    const double v = degree == 3 ? proj.array().cube().sum() : proj.array().square().square().sum();
    values.push_back(v);
    sum_sq += v * v;
  }
  const bool exact = is_orthonormal_basis(b);
  double second_moment = sum_sq / static_cast<double>(std::max<std::uint64_t>(samples, 1));
  if (exact) second_moment = degree == 3 ? 15.0 * n : 105.0 * n + 9.0 * n * (n - 1.0);
  const double cut = t * std::sqrt(second_moment);
  const auto tail = std::count_if(values.begin(), values.end(), [&](double v) { return std::abs(v) >= cut; });

  VerifyReport r;
  r.check_name = degree == 3 ? "poly_tail_q3" : "poly_tail_q4";
  r.empirical = samples ? static_cast<double>(tail) / static_cast<double>(samples) : 0.0;
  r.bound = std::exp(-(q / (2.0 * kE)) * std::pow(t, 2.0 / q));
  r.samples = samples;
  r.seed = seed;
  r.standard_error = proportion_se(r.empirical, samples);
  r.passed = r.empirical <= r.bound + 3.0 * r.standard_error;
  r.details = {{"t", t}, {"second_moment", second_moment}, {"exact_second_moment", exact ? 1.0 : 0.0}};
  return r;
}

}  // namespace dikin::verify
