// Default verification suite behind `dikin verify`.

#include <algorithm>
#include <cmath>
#include <functional>
#include <future>
#include <map>
#include <numbers>

#include "dikin/error.hpp"
#include "dikin/metrics.hpp"
#include "dikin/verify.hpp"
#include "dikin/walk.hpp"

namespace dikin::verify {

namespace {

// Seeds of the random polytopes used by the sweeps; each generates a bounded body.
constexpr std::uint64_t kRandom12x3Seed = 3;
constexpr std::uint64_t kRandom16x3Seed = 5;

constexpr int kCheckPoints = 10;

using Family = std::function<std::vector<VerifyReport>(const SuiteOptions&, std::uint64_t)>;

std::uint64_t mc(const SuiteOptions& opts, std::uint64_t fallback) { return opts.samples.value_or(fallback); }

struct Body {
  Polytope polytope;
  Vector anchor;
};

Body body(const GeneratorSpec& spec) { return {generate(spec), reference_point(spec)}; }

Vector unit_direction(Rng& rng, Eigen::Index n) {
  Vector d;
  do {
    d = rng.normal_vector(n);
  } while (d.norm() == 0.0);
  return d / d.norm();
}

VerifyReport count_report(std::string name, std::uint64_t violations, std::uint64_t trials, std::uint64_t seed) {
  VerifyReport r;
  r.check_name = std::move(name);
  r.empirical = static_cast<double>(violations);
  r.bound = 0.0;
  r.samples = trials;
  r.seed = seed;
  r.passed = violations == 0;
  return r;
}

std::vector<VerifyReport> kernel_symmetry(const SuiteOptions&, std::uint64_t seed) {
  const std::vector<Body> bodies = {body(CubeSpec{2}), body(SimplexSpec{3}), body(RandomSpec{12, 3, kRandom12x3Seed})};
  constexpr double radius = 0.5;
  constexpr int pairs = 1000;
  Rng rng(seed);
  double worst = 0.0;
  for (int k = 0; k < pairs; ++k) {
    const Body& b = bodies[k % bodies.size()];
    const Vector x = hit_and_run_point(b.polytope, b.anchor, rng);
    const BarrierFactor fx = factor_at(b.polytope, x);
    Vector z;
    do {
      z = sample_proposal(fx, radius, rng);
    } while (!contains_interior(b.polytope, z));
    const BarrierFactor fz = factor_at(b.polytope, z);
    worst = std::max(worst, std::abs(log_accept_ratio(fx, fz, radius) + log_accept_ratio(fz, fx, radius)));
  }
  VerifyReport r;
  r.check_name = "kernel_symmetry";
  r.empirical = worst;
  r.bound = 1e-9;
  r.samples = pairs;
  r.seed = seed;
  r.passed = worst <= 1e-9;
  return {r};
}

std::vector<VerifyReport> leverage(const SuiteOptions&, std::uint64_t seed) {
  const std::vector<Body> bodies = {body(CubeSpec{3}), body(SimplexSpec{4}), body(RandomSpec{12, 3, kRandom12x3Seed}),
                                    body(RandomSpec{16, 3, kRandom16x3Seed})};
  constexpr int points = 100;
  Rng rng(seed);
  double worst_sum = 0.0, min_score = 1.0, max_score = 0.0, worst_va = -1e300;
  for (int k = 0; k < points; ++k) {
    const Body& b = bodies[k % bodies.size()];
    const BarrierFactor f = factor_at(b.polytope, hit_and_run_point(b.polytope, b.anchor, rng));
    const Vector scores = leverage_scores(f);
    const double n = static_cast<double>(b.polytope.dim());
    worst_sum = std::max(worst_sum, std::abs(scores.sum() - n));
    min_score = std::min(min_score, scores.minCoeff());
    max_score = std::max(max_score, scores.maxCoeff());
    worst_va = std::max(worst_va, linalg::quad_form_inv(f.chol(), grad_half_log_det(f)) - n);
  }
  VerifyReport lev;
  lev.check_name = "leverage";
  lev.empirical = worst_sum;
  lev.bound = 1e-8;
  lev.samples = points;
  lev.seed = seed;
  lev.passed = worst_sum <= 1e-8 && min_score >= -1e-12 && max_score <= 1.0 + 1e-12;
  lev.details = {{"min_score", min_score}, {"max_score", max_score}};

  VerifyReport va;
  va.check_name = "volumetric_gradient";
  va.empirical = worst_va;
  va.bound = 1e-8;
  va.samples = points;
  va.seed = seed;
  va.passed = worst_va <= 1e-8;
  return {lev, va};
}

std::vector<VerifyReport> sigma_local(const SuiteOptions&, std::uint64_t seed) {
  const Body b = body(RandomSpec{16, 3, kRandom16x3Seed});
  constexpr int pairs = 1000;
  Rng rng(seed);
  std::uint64_t violations = 0;
  double min_ratio = 1e300;
  for (int k = 0; k < pairs; ++k) {
    const Vector x = hit_and_run_point(b.polytope, b.anchor, rng);
    const Vector y = hit_and_run_point(b.polytope, x, rng, 1);
    const SigmaLocalCheck c = check_sigma_local(b.polytope, x, y);
    if (!c.ok) ++violations;
    min_ratio = std::min(min_ratio, c.sigma * std::sqrt(static_cast<double>(b.polytope.rows())) / c.local);
  }
  VerifyReport r = count_report("sigma_local", violations, pairs, seed);
  r.details = {{"min_sigma_sqrt_m_over_local", min_ratio}};
  return {r};
}

std::vector<VerifyReport> hessian_sandwich(const SuiteOptions&, std::uint64_t seed) {
  const Body b = body(RandomSpec{12, 3, kRandom12x3Seed});
  constexpr int pairs = 200;
  const double n = static_cast<double>(b.polytope.dim());
  Rng rng(seed);
  std::uint64_t violations = 0;
  for (int k = 0; k < pairs; ++k) {
    const Vector x = hit_and_run_point(b.polytope, b.anchor, rng);
    const BarrierFactor fx = factor_at(b.polytope, x);
    // ‖y − x‖_x = c/√n with c uniform in (0, 1/3].
    const double c = (1.0 - rng.uniform()) / 3.0;
    const Vector step = linalg::tri_solve(fx.chol(), unit_direction(rng, b.polytope.dim()), linalg::Side::Transposed);
    const Vector y = x + (c / std::sqrt(n)) * step;
    if (!check_hessian_sandwich(b.polytope, x, y).passed) ++violations;
  }
  return {count_report("hessian_sandwich", violations, pairs, seed)};
}

// cube(2) centre and a neighbour along axis 1 at ‖x − y‖_x = c/√n, c = 0.1.
std::pair<Vector, Vector> proposal_tv_pair() {
  const Vector x = Vector::Constant(2, 0.5);
  Vector y = x;
  y[0] += 0.1 / std::sqrt(2.0) / std::sqrt(8.0);
  return {x, y};
}

std::vector<VerifyReport> proposal_tv(const SuiteOptions& opts, std::uint64_t seed) {
  const auto [x, y] = proposal_tv_pair();
  return {estimate_tv_proposals(generate(CubeSpec{2}), x, y, 0.2, mc(opts, 100000), seed)};
}

std::vector<VerifyReport> pinsker(const SuiteOptions& opts, std::uint64_t seed) {
  const auto [x, y] = proposal_tv_pair();
  VerifyReport r = estimate_tv_proposals(generate(CubeSpec{2}), x, y, 0.2, mc(opts, 100000), seed);
  r.check_name = "pinsker";
  r.bound = r.detail("pinsker_bound");
  r.passed = r.detail("pinsker_passed") == 1.0;
  return {r};
}

std::vector<VerifyReport> rejection_mass(const SuiteOptions& opts, std::uint64_t seed) {
  const double r = rejection_radius_cap(opts.epsilon);
  return {estimate_rejection(generate(CubeSpec{2}), Vector::Constant(2, 0.5), r, opts.epsilon, mc(opts, 10000), seed)};
}

// Analytic centre of cube(2) plus hit-and-run points.
std::vector<std::pair<std::string, Vector>> check_points(std::uint64_t seed) {
  const Polytope cube = generate(CubeSpec{2});
  std::vector<std::pair<std::string, Vector>> pts = {{"center", Vector::Constant(2, 0.5)}};
  Rng rng(seed);
  for (int k = 1; k <= kCheckPoints; ++k) {
    pts.emplace_back("p" + std::to_string(k), hit_and_run_point(cube, pts.front().second, rng));
  }
  return pts;
}

template <typename Check>
std::vector<VerifyReport> per_point(const std::string& family, std::uint64_t seed, Check&& check) {
  std::vector<VerifyReport> out;
  const auto points = check_points(mix64(seed));
  for (std::size_t k = 0; k < points.size(); ++k) {
    VerifyReport r = check(points[k].second, mix64(seed + k + 1));
    r.check_name = family + "[" + points[k].first + "]";
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<VerifyReport> logdet_change(const SuiteOptions& opts, std::uint64_t seed) {
  const Polytope cube = generate(CubeSpec{2});
  const double r = std::min(0.4, logdet_radius_cap(opts.epsilon));
  return per_point("logdet_change", seed, [&](const Vector& x, std::uint64_t s) {
    return logdet_change_check(cube, x, r, opts.epsilon, mc(opts, 10000), s);
  });
}

std::vector<VerifyReport> localnorm_change(const SuiteOptions& opts, std::uint64_t seed) {
  const Polytope cube = generate(CubeSpec{2});
  const double r = localnorm_radius_cap(opts.epsilon);
  return per_point("localnorm_change", seed, [&](const Vector& x, std::uint64_t s) {
    return localnorm_change_check(cube, x, r, opts.epsilon, mc(opts, 100000), s);
  });
}

std::vector<VerifyReport> radius_check(const SuiteOptions& opts, std::uint64_t) {
  const RadiusConditions rc = radius_conditions(opts.epsilon);
  VerifyReport r;
  r.check_name = "radius_conditions";
  r.empirical = rc.r_cap;
  r.bound = rc.r_max;
  r.samples = 1;
  r.passed = rc.holds;
  r.details = {{"lambda1", rc.lambda1}, {"lambda2", rc.lambda2}};
  return {r};
}

std::vector<VerifyReport> poly_moments(const SuiteOptions& opts, std::uint64_t seed) {
  auto [cubic, quartic] = gaussian_poly_moments(Matrix::Identity(3, 3), mc(opts, 1000000), seed);
  return {cubic, quartic};
}

std::vector<VerifyReport> isserlis(const SuiteOptions& opts, std::uint64_t seed) {
  Vector b1(3), b2(3);
  b1 << 1.0, 0.0, 0.0;
  b2 << 0.5, std::sqrt(0.75), 0.0;
  return {isserlis_check(b1, b2, mc(opts, 1000000), seed)};
}

std::vector<VerifyReport> poly_tail(const SuiteOptions& opts, std::uint64_t seed) {
  const Matrix b = Matrix::Identity(3, 3);
  const double two_e = 2.0 * std::numbers::e;
  return {concentration_tail(b, 3, std::pow(two_e, 1.5), mc(opts, 1000000), seed),
          concentration_tail(b, 4, two_e * two_e, mc(opts, 1000000), mix64(seed))};
}

const std::map<std::string, Family>& families() {
  static const std::map<std::string, Family> table = {
      {"kernel_symmetry", kernel_symmetry}, {"leverage", leverage},
      {"sigma_local", sigma_local},               {"hessian_sandwich", hessian_sandwich},
      {"proposal_tv", proposal_tv},             {"pinsker", pinsker},
      {"rejection_mass", rejection_mass}, {"logdet_change", logdet_change},
      {"localnorm_change", localnorm_change}, {"radius_conditions", radius_check},
      {"poly_moments", poly_moments},                 {"isserlis", isserlis},
      {"poly_tail", poly_tail},
  };
  return table;
}

}  // namespace

const std::vector<std::string>& suite_check_names() {
  static const std::vector<std::string> names = {
      "kernel_symmetry", "leverage",        "sigma_local",          "hessian_sandwich", "proposal_tv",
      "pinsker",         "rejection_mass", "logdet_change",     "localnorm_change",  "radius_conditions",
      "poly_moments",         "isserlis",        "poly_tail",
  };
  return names;
}

std::vector<VerifyReport> run_suite(const SuiteOptions& opts) {
  if (!(opts.epsilon > 0.0 && opts.epsilon <= 0.5)) throw Error(ErrorCode::OutOfRange, "epsilon must lie in (0, 1/2]");
  for (const auto& name : opts.checks) {
    if (!families().contains(name)) throw Error(ErrorCode::InvalidSpec, "unknown check '" + name + "'");
  }
  std::vector<std::string> selected;
  for (const auto& name : suite_check_names()) {
    if (opts.checks.empty() || std::ranges::find(opts.checks, name) != opts.checks.end()) selected.push_back(name);
  }

  std::vector<std::future<std::vector<VerifyReport>>> pending;
  pending.reserve(selected.size());
  for (const auto& name : selected) {
    const std::uint64_t seed = mix64(opts.seed ^ fnv1a(name));
    pending.push_back(std::async(std::launch::async, families().at(name), std::cref(opts), seed));
  }
  std::vector<VerifyReport> out;
  for (auto& f : pending) {
    for (auto& r : f.get()) out.push_back(std::move(r));
  }
  return out;
}

}  // namespace dikin::verify
