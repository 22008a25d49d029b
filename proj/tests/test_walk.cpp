#include <cmath>

#include "doctest.h"
#include "dikin/error.hpp"
#include "dikin/walk.hpp"

using namespace dikin;

namespace {

Vector vec(std::initializer_list<double> xs) {
  Vector v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) v[i++] = x;
  return v;
}

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected dikin::Error");
  return ErrorCode::InvalidSpec;
}

const Polytope kInterval = generate(CubeSpec{1});
const Polytope kSquare = generate(CubeSpec{2});

}  // namespace

TEST_CASE("default_radius") {
  CHECK(default_radius(0.5) == doctest::Approx(8.523353919594511e-05).epsilon(1e-13));
  CHECK(default_radius(0.1) == doctest::Approx(1.1930050158281243e-05).epsilon(1e-13));
  CHECK(default_radius(0.1) == doctest::Approx(0.00025 * std::pow(std::log(2000.0), -1.5)).epsilon(1e-15));
  CHECK(code_of([] { default_radius(0.6); }) == ErrorCode::OutOfRange);
  CHECK(code_of([] { default_radius(0.0); }) == ErrorCode::OutOfRange);
  CHECK(code_of([] { default_radius(-0.1); }) == ErrorCode::OutOfRange);
}

TEST_CASE("WalkConfig validation") {
  WalkConfig cfg;
  CHECK_NOTHROW(cfg.validate());
  cfg.radius = 0.0;
  CHECK(code_of([&] { cfg.validate(); }) == ErrorCode::OutOfRange);
  cfg = {};
  cfg.laziness = 1.5;
  CHECK(code_of([&] { cfg.validate(); }) == ErrorCode::OutOfRange);
  cfg = {};
  cfg.thin = 0;
  CHECK(code_of([&] { cfg.validate(); }) == ErrorCode::OutOfRange);
}

TEST_CASE("log_accept_ratio") {
  const BarrierFactor fx = factor_at(kInterval, vec({0.5}));
  CHECK(log_accept_ratio(kInterval, fx, vec({0.5}), 0.1) == 0.0);

  const BarrierFactor fz = factor_at(kInterval, vec({0.6}));
  const double direct = log_gaussian_density(fz, fx.point(), 0.1) - log_gaussian_density(fx, fz.point(), 0.1);
  CHECK(log_accept_ratio(kInterval, fx, vec({0.6}), 0.1) == doctest::Approx(direct).epsilon(1e-12));
  CHECK(std::abs(log_accept_ratio(fx, fz, 0.1) - direct) <= 1e-9);
  CHECK(code_of([&] { log_accept_ratio(kInterval, fx, vec({1.2}), 0.1); }) == ErrorCode::BoundaryPoint);

  Rng rng(5);
  const Polytope p = generate(RandomSpec{12, 3, 3});
  for (int k = 0; k < 200; ++k) {
    const Vector x = hit_and_run_point(p, Vector::Zero(3), rng);
    const Vector z = hit_and_run_point(p, x, rng, 1);
    const BarrierFactor a = factor_at(p, x), b = factor_at(p, z);
    const double r = 0.05 + rng.uniform();
    const double ab = log_accept_ratio(a, b, r), ba = log_accept_ratio(b, a, r);
    CHECK(std::abs(ab + ba) <= 1e-9 * (1.0 + std::abs(ab)));
    const double via_density = log_gaussian_density(b, x, r) - log_gaussian_density(a, z, r);
    CHECK(std::abs(ab - via_density) <= 1e-9 * (1.0 + std::abs(ab)));

    // Kernel symmetry: min{g_x(z), g_z(x)} from either side.
    const double from_x = std::min(log_gaussian_density(a, z, r), log_gaussian_density(a, z, r) + ab);
    const double from_z = std::min(log_gaussian_density(b, x, r), log_gaussian_density(b, x, r) + ba);
    CHECK(std::abs(std::exp(from_x - from_z) - 1.0) <= 1e-9);
  }
}

TEST_CASE("metropolis_move") {
  BarrierFactor state = factor_at(kSquare, vec({0.5, 0.5}));
  // Forced g = 0: proposal equals the current point and is accepted.
  const Vector z = proposal_from_normal(state, 0.3, Vector::Zero(2));
  CHECK(metropolis_move(kSquare, state, z, 0.3, std::log(0.999999)) == StepOutcome::Accepted);
  CHECK(state.point() == vec({0.5, 0.5}));

  CHECK(metropolis_move(kSquare, state, vec({1.5, 0.5}), 0.3, -1.0) == StepOutcome::RejectedOutside);
  CHECK(state.point() == vec({0.5, 0.5}));

  const double lar = log_accept_ratio(kSquare, state, vec({0.9, 0.9}), 0.3);
  REQUIRE(lar < 0.0);
  CHECK(metropolis_move(kSquare, state, vec({0.9, 0.9}), 0.3, lar + 1e-9) == StepOutcome::RejectedMetropolis);
  CHECK(state.point() == vec({0.5, 0.5}));
  CHECK(metropolis_move(kSquare, state, vec({0.9, 0.9}), 0.3, lar - 1e-9) == StepOutcome::Accepted);
  CHECK(state.point() == vec({0.9, 0.9}));
  CHECK(state.slacks().minCoeff() > 0.0);
}

TEST_CASE("tiny radius is almost always accepted") {
  WalkConfig cfg;
  cfg.radius = 8.5e-5;
  cfg.laziness = 0.0;
  cfg.seed = 11;
  const ChainResult res = run_chain(kSquare, vec({0.5, 0.5}), cfg, 10000);
  CHECK(res.stats.proposals == 10000);
  CHECK(static_cast<double>(res.stats.accepted) / res.stats.proposals >= 0.99);
}

TEST_CASE("run_chain bookkeeping") {
  WalkConfig cfg;
  cfg.radius = 0.4;
  cfg.seed = 3;
  cfg.burn_in = 500;
  cfg.thin = 7;

  const ChainResult empty = run_chain(kSquare, vec({0.5, 0.5}), cfg, 500);
  CHECK(empty.samples.empty());
  CHECK(empty.stats.steps == 500);
  CHECK(empty.stats.consistent());

  std::uint64_t visits = 0;
  bool contained = true;
  const ChainResult res = run_chain(kSquare, vec({0.5, 0.5}), cfg, 5000, 0, [&](const Vector& x) {
    ++visits;
    contained = contained && contains_interior(kSquare, x);
  });
  CHECK(visits == 5000);
  CHECK(contained);
  CHECK(res.samples.size() == (5000 - 500) / 7);
  CHECK(res.stats.consistent());

  WalkConfig wide = cfg;
  wide.radius = 3.0;
  const ChainResult big = run_chain(kSquare, vec({0.5, 0.5}), wide, 5000);
  CHECK(big.stats.rejected_outside > 0);
  CHECK(big.stats.rejected_metropolis > 0);
  CHECK(big.stats.consistent());

  const ChainResult again = run_chain(kSquare, vec({0.5, 0.5}), cfg, 5000);
  REQUIRE(again.samples.size() == res.samples.size());
  for (std::size_t i = 0; i < res.samples.size(); ++i) CHECK(again.samples[i] == res.samples[i]);

  const ChainResult other = run_chain(kSquare, vec({0.5, 0.5}), cfg, 5000, 1);
  CHECK(other.samples.front() != res.samples.front());

  CHECK(code_of([&] { run_chain(kSquare, vec({0.5, 0.5}), cfg, 499); }) == ErrorCode::OutOfRange);
  CHECK(code_of([&] { run_chain(kSquare, vec({1.0, 0.5}), cfg, 600); }) == ErrorCode::BoundaryPoint);
}

TEST_CASE("laziness frequency") {
  for (double p : {0.0, 0.25, 0.5, 0.9}) {
    WalkConfig cfg;
    cfg.radius = 0.3;
    cfg.laziness = p;
    cfg.seed = 21;
    const std::uint64_t n = 40000;
    const ChainResult res = run_chain(kSquare, vec({0.5, 0.5}), cfg, n);
    const double freq = static_cast<double>(res.stats.lazy_stays) / n;
    CHECK(std::abs(freq - p) <= 4.0 * std::sqrt(p * (1 - p) / n) + 1e-15);
  }
}

TEST_CASE("containment on random polytopes") {
  std::uint64_t steps = 0;
  for (std::uint64_t seed : {3u, 5u}) {
    const Polytope p = generate(RandomSpec{seed == 3 ? 12 : 16, 3, seed});
    WalkConfig cfg;
    cfg.radius = 0.9;
    cfg.laziness = 0.0;
    cfg.seed = seed;
    bool contained = true;
    const ChainResult res = run_chain(p, Vector::Zero(3), cfg, 500000, 0, [&](const Vector& x) {
      contained = contained && slacks(p, x).minCoeff() > 0.0;
    });
    CHECK(contained);
    CHECK(res.stats.consistent());
    steps += res.stats.steps;
  }
  CHECK(steps == 1000000);
}

TEST_CASE("run_chains: independent streams, merged in order") {
  WalkConfig cfg;
  cfg.radius = 0.5;
  cfg.seed = 9;
  const auto results = run_chains(kSquare, vec({0.5, 0.5}), cfg, 2000, 3);
  REQUIRE(results.size() == 3);
  for (unsigned c = 0; c < 3; ++c) {
    const ChainResult solo = run_chain(kSquare, vec({0.5, 0.5}), cfg, 2000, c);
    REQUIRE(solo.samples.size() == results[c].samples.size());
    CHECK(solo.samples.back() == results[c].samples.back());
    CHECK(solo.stats.accepted == results[c].stats.accepted);
  }
  ChainStats total;
  for (const auto& r : results) total += r.stats;
  CHECK(total.steps == 6000);
  CHECK(total.consistent());
}

TEST_CASE("uniform moments on the square") {
  WalkConfig cfg;
  cfg.radius = 0.3;
  cfg.laziness = 0.5;
  cfg.seed = 1;
  cfg.burn_in = 10000;
  cfg.thin = 10;
  const ChainResult res = run_chain(kSquare, vec({0.5, 0.5}), cfg, 200000);
  REQUIRE(res.samples.size() == 19000);
  for (Eigen::Index j = 0; j < 2; ++j) {
    double sum = 0, sq = 0;
    for (const Vector& s : res.samples) {
      sum += s[j];
      sq += s[j] * s[j];
    }
    const double n = static_cast<double>(res.samples.size());
    const double mean = sum / n;
    const double var = sq / n - mean * mean;
    CHECK(std::abs(mean - 0.5) <= 0.02);
    CHECK(std::abs(var - 1.0 / 12.0) <= 0.01);
  }
}

TEST_CASE("mixing_steps") {
  CHECK(mixing_steps(4, 2, 0.1) == 800);
  CHECK(mixing_steps(1, 1, 1.0) == 1);
  CHECK(mixing_steps(8, 2, 0.1) == 2 * mixing_steps(4, 2, 0.1));
  CHECK(mixing_steps(3, 1, 0.7) == static_cast<std::uint64_t>(std::ceil(3 / 0.49)));
  CHECK(code_of([] { mixing_steps(0, 2, 0.1); }) == ErrorCode::OutOfRange);
  CHECK(code_of([] { mixing_steps(4, 2, 0.0); }) == ErrorCode::OutOfRange);
}
