#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dikin/barrier.hpp"
#include "dikin/polytope.hpp"

namespace dikin::verify {

/// Outcome of one numerical check: `empirical` compared to `bound` via
/// `relation` ("<=", ">=", "~=" for agreement within 3 standard errors,
/// "in" for a two-sided interval whose other end sits in `details`).
struct VerifyReport {
  std::string check_name;
  double empirical = 0.0;
  double bound = 0.0;
  std::uint64_t samples = 0;
  bool passed = false;
  std::uint64_t seed = 0;
  std::string relation = "<=";
  double standard_error = 0.0;
  std::vector<std::pair<std::string, double>> details;

  /// Named detail value; NaN if absent.
  double detail(const std::string& key) const;
};

/// One-line rendering: name, empirical, bound, N, PASS/FAIL.
std::string format_report(const VerifyReport& r);

struct GaussianPair {
  Vector mu1, mu2;
  Matrix sigma1, sigma2;
};

/// D_KL(G₂ ‖ G₁) for G_k = N(mu_k, sigma_k):
/// ½(tr(Σ₁⁻¹Σ₂) − n + log det Σ₁/det Σ₂ + (μ₁−μ₂)ᵀΣ₁⁻¹(μ₁−μ₂)).
double kl_gaussians(const GaussianPair& pair);

/// (g_x, g_y) as a pair: mu1 = x, sigma1 = (r²/n)H(x)⁻¹, and likewise for y.
GaussianPair proposal_pair(const BarrierFactor& fx, const BarrierFactor& fy, double radius);

// Radius caps under which the corresponding statements apply.
double rejection_radius_cap(double epsilon);  // (ε/100)(log 50/ε)^{-3/2}
double logdet_radius_cap(double epsilon);     // ε / √(2 log 1/ε)
double localnorm_radius_cap(double epsilon);  // (ε/20)(log 11/ε)^{-3/2}

/// Monte-Carlo statistical distance ∫(g_x − g_y)₊ = E_{z~g_x} max(0, 1 − g_y(z)/g_x(z)),
/// bound 3c with c = √n‖x−y‖_x. Details carry the closed-form KL divergence and
/// the Pinsker bound √(2 KL). PreconditionViolated unless c ≤ min{r, 1/3}, r ≤ 1.
VerifyReport estimate_tv_proposals(const Polytope& p, const Vector& x, const Vector& y, double radius,
                                   std::uint64_t samples, std::uint64_t seed);

/// 1 − E_{z~g_x} min{1, g_z(x)/g_x(z)} with out-of-body proposals counted
/// as full rejections; bound ε. Runs at any radius; detail "in_regime" says
/// whether r is under rejection_radius_cap(ε).
VerifyReport estimate_rejection(const Polytope& p, const Vector& x, double radius, double epsilon,
                                std::uint64_t samples, std::uint64_t seed);

/// Extreme generalized eigenvalues of (H(x), H(y)) against
/// [(1 − c/√n)², (1 + c/√n)²], c = √n‖x−y‖_x.
VerifyReport check_hessian_sandwich(const Polytope& p, const Vector& x, const Vector& y);

/// Fraction of proposals with log det H(z) − log det H(x) ≥ −2ε; bound 1 − ε.
VerifyReport logdet_change_check(const Polytope& p, const Vector& x, double radius, double epsilon,
                                 std::uint64_t samples, std::uint64_t seed);

/// ‖z−x‖_z² − ‖z−x‖_x² for an interior z.
double local_norm_change(const BarrierFactor& fx, const BarrierFactor& fz);

/// Fraction of proposals with ‖z−x‖_z² − ‖z−x‖_x² ≤ 2εr²/n; bound 1 − ε.
/// Out-of-body proposals count as failures and are reported in details.
VerifyReport localnorm_change_check(const Polytope& p, const Vector& x, double radius, double epsilon,
                                    std::uint64_t samples, std::uint64_t seed);

struct RadiusConditions {
  double lambda1;
  double lambda2;
  /// min{1, ε/(2√15 λ₁), √ε/√(8 λ₂ √105)}
  double r_max;
  /// localnorm_radius_cap(ε)
  double r_cap;
  /// r_cap ≤ r_max
  bool holds;
};
RadiusConditions radius_conditions(double epsilon);

/// E(b₁ᵀg)³(b₂ᵀg)³ = 9‖b₁‖²‖b₂‖²(b₁ᵀb₂) + 6(b₁ᵀb₂)³.
double isserlis_mixed_third(const Vector& b1, const Vector& b2);
/// E(b₁ᵀg)⁴(b₂ᵀg)⁴ = 9‖b₁‖⁴‖b₂‖⁴ + 72‖b₁‖²‖b₂‖²(b₁ᵀb₂)² + 24(b₁ᵀb₂)⁴.
double isserlis_mixed_fourth(const Vector& b1, const Vector& b2);

/// Monte-Carlo estimate of E(b₁ᵀg)³(b₂ᵀg)³ against the closed form (3 SE).
VerifyReport isserlis_check(const Vector& b1, const Vector& b2, std::uint64_t samples, std::uint64_t seed);

/// Exact E(Σ(b_iᵀg)³)² and E(Σ(b_iᵀg)⁴)² summed pairwise from the mixed moments.
double exact_cubic_second_moment(const Matrix& b);
double exact_quartic_second_moment(const Matrix& b);

/// Empirical E P₁² and E P₂² for P₁ = Σ(b_iᵀg)³, P₂ = Σ(b_iᵀg)⁴ against 15n
/// and 105n². NotIsotropic unless ‖BᵀB − I‖ ≤ 1e-8.
std::pair<VerifyReport, VerifyReport> gaussian_poly_moments(const Matrix& b, std::uint64_t samples,
                                                            std::uint64_t seed);

/// Pr[|P(g)| ≥ t·(E P²)^{1/2}] for P = P₁ (q = 3) or P₂ (q = 4) against
/// exp(−(q/2e) t^{2/q}). E P² is exact for an orthonormal square B and
/// estimated from the same draws otherwise. OutOfRange for t < (2e)^{q/2}.
VerifyReport concentration_tail(const Matrix& b, int degree, double t, std::uint64_t samples,
                                std::uint64_t seed);

struct SuiteOptions {
  std::uint64_t seed = 1;
  /// Overrides every Monte-Carlo sample count when set.
  std::optional<std::uint64_t> samples;
  double epsilon = 0.5;
  /// Family names to run; empty means all.
  std::vector<std::string> checks;
};

/// Family names accepted by SuiteOptions::checks, in run order.
const std::vector<std::string>& suite_check_names();

/// Runs the selected families concurrently; each family draws from its own
/// stream seeded by (seed, family name), so results do not depend on
/// scheduling. Reports come back in suite order.
std::vector<VerifyReport> run_suite(const SuiteOptions& opts);

}  // namespace dikin::verify
