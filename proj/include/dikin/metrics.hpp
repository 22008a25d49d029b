#pragma once

#include "dikin/polytope.hpp"

namespace dikin {

/// Cross-ratio σ(x,y) = |xy|·|pq| / (|px|·|qy|) on the chord p,x,y,q, and
/// the Hilbert distance log(1 + σ).
struct CrossRatio {
  double sigma = 0.0;
  double hilbert = 0.0;
};

/// σ(x,x) is 0. Propagates UnboundedChord.
CrossRatio cross_ratio(const Polytope& p, const Vector& x, const Vector& y);

struct SigmaLocalCheck {
  double sigma;
  /// ‖x - y‖_x
  double local;
  /// σ ≥ local / √m (up to 1e-12)
  bool ok;
};

/// Compares σ(x,y) against the local norm at x scaled by 1/√m.
SigmaLocalCheck check_sigma_local(const Polytope& p, const Vector& x, const Vector& y);

}  // namespace dikin
