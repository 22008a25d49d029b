#include "dikin/metrics.hpp"

#include <cmath>

#include "dikin/barrier.hpp"
#include "dikin/error.hpp"

namespace dikin {

CrossRatio cross_ratio(const Polytope& p, const Vector& x, const Vector& y) {
  if (!contains_interior(p, x) || !contains_interior(p, y)) {
    throw Error(ErrorCode::BoundaryPoint, "cross ratio needs interior points");
  }
  if (x == y) return {};
  const Chord c = chord_endpoints(p, x, y);
  const double sigma = ((x - y).norm() * (c.p - c.q).norm()) / ((c.p - x).norm() * (c.q - y).norm());
  return {sigma, std::log1p(sigma)};
}

SigmaLocalCheck check_sigma_local(const Polytope& p, const Vector& x, const Vector& y) {
  if (x == y) throw Error(ErrorCode::IdenticalPoints, "comparison needs distinct points");
  const double sigma = cross_ratio(p, x, y).sigma;
  const double local = local_norm(factor_at(p, x), y - x);
  const double m = static_cast<double>(p.rows());
  return {sigma, local, sigma >= local / std::sqrt(m) - 1e-12};
}

}  // namespace dikin
