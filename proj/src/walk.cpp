#include "dikin/walk.hpp"

#include <cmath>
#include <exception>
#include <limits>
#include <thread>

#include "dikin/error.hpp"

namespace dikin {

void WalkConfig::validate() const {
  if (!(radius > 0.0) || !std::isfinite(radius)) throw Error(ErrorCode::OutOfRange, "radius must be positive");
  if (!(laziness >= 0.0 && laziness <= 1.0)) throw Error(ErrorCode::OutOfRange, "laziness must lie in [0, 1]");
  if (thin < 1) throw Error(ErrorCode::OutOfRange, "thin must be at least 1");
}

ChainStats& ChainStats::operator+=(const ChainStats& o) noexcept {
  steps += o.steps;
  lazy_stays += o.lazy_stays;
  proposals += o.proposals;
  rejected_outside += o.rejected_outside;
  rejected_metropolis += o.rejected_metropolis;
  accepted += o.accepted;
  return *this;
}

double default_radius(double epsilon) {
  if (!(epsilon > 0.0 && epsilon <= 0.5)) throw Error(ErrorCode::OutOfRange, "epsilon must lie in (0, 1/2]");
  return epsilon / 400.0 * std::pow(std::log(200.0 / epsilon), -1.5);
}

double log_accept_ratio(const BarrierFactor& fx, const BarrierFactor& fz, double radius) {
  if (!(radius > 0.0)) throw Error(ErrorCode::OutOfRange, "radius must be positive");
  const double n = static_cast<double>(fx.dim());
  const Vector d = fz.point() - fx.point();
  const double at_z = local_norm(fz, d);
  const double at_x = local_norm(fx, d);
  return -n / (2.0 * radius * radius) * (at_z * at_z - at_x * at_x) +
         0.5 * (fz.log_det_hessian() - fx.log_det_hessian());
}

double log_accept_ratio(const Polytope& p, const BarrierFactor& fx, const Vector& z, double radius) {
  return log_accept_ratio(fx, factor_at(p, z), radius);
}

StepOutcome metropolis_move(const Polytope& p, BarrierFactor& state, const Vector& z, double radius,
                            double log_u) {
  if (!contains_interior(p, z)) return StepOutcome::RejectedOutside;
  BarrierFactor fz = factor_at(p, z);
  if (log_u < std::min(0.0, log_accept_ratio(state, fz, radius))) {
    state = std::move(fz);
    return StepOutcome::Accepted;
  }
  return StepOutcome::RejectedMetropolis;
}

StepOutcome step(const Polytope& p, BarrierFactor& state, const WalkConfig& cfg, Rng& rng) {
  if (rng.uniform() < cfg.laziness) return StepOutcome::LazyStay;
  const Vector z = sample_proposal(state, cfg.radius, rng);
  if (!contains_interior(p, z)) return StepOutcome::RejectedOutside;
  return metropolis_move(p, state, z, cfg.radius, std::log(rng.uniform()));
}

ChainResult run_chain(const Polytope& p, const Vector& x0, const WalkConfig& cfg, std::uint64_t total_steps,
                      std::uint64_t chain_index, const StepVisitor& visit) {
  cfg.validate();
  if (total_steps < cfg.burn_in) throw Error(ErrorCode::OutOfRange, "total steps must be at least burn-in");
  Rng rng = Rng(cfg.seed).split(chain_index);
  BarrierFactor state = factor_at(p, x0);
  ChainResult out;
  out.samples.reserve((total_steps - cfg.burn_in) / cfg.thin);
  ChainStats& stats = out.stats;
  for (std::uint64_t k = 1; k <= total_steps; ++k) {
    switch (step(p, state, cfg, rng)) {
      case StepOutcome::LazyStay: ++stats.lazy_stays; break;
      case StepOutcome::Accepted: ++stats.proposals; ++stats.accepted; break;
      case StepOutcome::RejectedOutside: ++stats.proposals; ++stats.rejected_outside; break;
      case StepOutcome::RejectedMetropolis: ++stats.proposals; ++stats.rejected_metropolis; break;
    }
    ++stats.steps;
    if (visit) visit(state.point());
    if (k > cfg.burn_in && (k - cfg.burn_in) % cfg.thin == 0) out.samples.push_back(state.point());
  }
  return out;
}

std::vector<ChainResult> run_chains(const Polytope& p, const Vector& x0, const WalkConfig& cfg,
                                    std::uint64_t total_steps, unsigned chains) {
  if (chains < 1) throw Error(ErrorCode::OutOfRange, "need at least one chain");
  std::vector<ChainResult> results(chains);
  std::vector<std::exception_ptr> errors(chains);
  {
    std::vector<std::jthread> workers;
    workers.reserve(chains);
    for (unsigned c = 0; c < chains; ++c) {
      workers.emplace_back([&, c] {
        try {
          results[c] = run_chain(p, x0, cfg, total_steps, c);
        } catch (...) {
          errors[c] = std::current_exception();
        }
      });
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return results;
}

std::uint64_t mixing_steps(std::uint64_t m, std::uint64_t n, double radius) {
  if (m < 1 || n < 1 || !(radius > 0.0)) throw Error(ErrorCode::OutOfRange, "need m, n >= 1 and radius > 0");
  const double steps = std::ceil(static_cast<double>(m) * static_cast<double>(n) / (radius * radius));
  if (!(steps < static_cast<double>(std::numeric_limits<std::uint64_t>::max()))) {
    throw Error(ErrorCode::OutOfRange, "step count overflows");
  }
  return static_cast<std::uint64_t>(steps);
}

}  // namespace dikin
