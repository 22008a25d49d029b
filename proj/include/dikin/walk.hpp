#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "dikin/barrier.hpp"
#include "dikin/polytope.hpp"
#include "dikin/rng.hpp"

namespace dikin {

struct WalkConfig {
  /// Proposal covariance is (radius² / n) H(x)⁻¹.
  double radius = 0.5;
  /// Probability of staying put before any proposal is drawn.
  double laziness = 0.5;
  std::uint64_t seed = 0;
  std::uint64_t burn_in = 0;
  std::uint64_t thin = 1;

  /// Throws OutOfRange on radius ≤ 0, laziness outside [0,1] or thin = 0.
  void validate() const;
};

struct ChainStats {
  std::uint64_t steps = 0;
  std::uint64_t lazy_stays = 0;
  std::uint64_t proposals = 0;
  std::uint64_t rejected_outside = 0;
  std::uint64_t rejected_metropolis = 0;
  std::uint64_t accepted = 0;

  bool consistent() const noexcept {
    return steps == lazy_stays + proposals && proposals == accepted + rejected_outside + rejected_metropolis;
  }
  ChainStats& operator+=(const ChainStats& o) noexcept;
};

enum class StepOutcome { LazyStay, Accepted, RejectedOutside, RejectedMetropolis };

/// (ε/400)·(log(200/ε))^{-3/2}, the radius under which one Dikin step from
/// nearby points is ε-close in statistical distance. OutOfRange unless 0 < ε ≤ ½.
double default_radius(double epsilon);

/// log g_z(x) - log g_x(z)
///   = -(n/2r²)(‖z-x‖_z² - ‖z-x‖_x²) + ½(log det H(z) - log det H(x)).
double log_accept_ratio(const BarrierFactor& fx, const BarrierFactor& fz, double radius);
/// Same, factoring H(z) internally. BoundaryPoint if z is not interior.
double log_accept_ratio(const Polytope& p, const BarrierFactor& fx, const Vector& z, double radius);

/// Metropolis decision for an already drawn proposal z and log-uniform
/// `log_u`. On acceptance `state` is replaced by the factor at z.
StepOutcome metropolis_move(const Polytope& p, BarrierFactor& state, const Vector& z, double radius,
                            double log_u);

/// One lazy Gaussian Dikin step; updates `state` in place.
StepOutcome step(const Polytope& p, BarrierFactor& state, const WalkConfig& cfg, Rng& rng);

struct ChainResult {
  std::vector<Vector> samples;
  ChainStats stats;
};

/// Called with the chain's point after every step (accepted or not).
using StepVisitor = std::function<void(const Vector&)>;

/// Runs `total_steps` steps from x0 and keeps every `thin`-th point after
/// `burn_in`. Deterministic given cfg.seed; `chain_index` selects the RNG stream.
ChainResult run_chain(const Polytope& p, const Vector& x0, const WalkConfig& cfg, std::uint64_t total_steps,
                      std::uint64_t chain_index = 0, const StepVisitor& visit = {});

/// `chains` independent chains on separate threads, results in chain order.
std::vector<ChainResult> run_chains(const Polytope& p, const Vector& x0, const WalkConfig& cfg,
                                    std::uint64_t total_steps, unsigned chains);

/// ⌈mn / r²⌉: the Δ⁻² step-count scaling with Δ = r/√(mn) and the unknown
/// constant set to 1. A scaling law, not a certified mixing bound.
std::uint64_t mixing_steps(std::uint64_t m, std::uint64_t n, double radius);

}  // namespace dikin
