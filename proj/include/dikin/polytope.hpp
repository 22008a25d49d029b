#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <variant>

#include "dikin/linalg.hpp"
#include "dikin/rng.hpp"

namespace dikin {

/// H-representation {x : a_iᵀx ≥ b_i, i = 1..m}. Rows of `A` are the a_iᵀ.
///
/// Boundedness is not checked here; it surfaces later as UnboundedChord or a
/// singular barrier Hessian.
class Polytope {
 public:
  Polytope(Matrix a, Vector b);

  Eigen::Index rows() const noexcept { return a_.rows(); }
  Eigen::Index dim() const noexcept { return a_.cols(); }
  const Matrix& A() const noexcept { return a_; }
  const Vector& b() const noexcept { return b_; }

  friend bool operator==(const Polytope& l, const Polytope& r) {
    return l.a_.rows() == r.a_.rows() && l.a_.cols() == r.a_.cols() && l.a_ == r.a_ && l.b_ == r.b_;
  }

 private:
  Matrix a_;
  Vector b_;
};

/// A point validated to have strictly positive slacks for some polytope.
class InteriorPoint {
 public:
  /// Throws BoundaryPoint if some slack is ≤ 0.
  InteriorPoint(const Polytope& p, Vector x);

  const Vector& coords() const noexcept { return x_; }
  operator const Vector&() const noexcept { return x_; }

 private:
  Vector x_;
};

struct CubeSpec {
  int n;
};
struct SimplexSpec {
  int n;
};
struct RandomSpec {
  int m;
  int n;
  std::uint64_t seed;
};
using GeneratorSpec = std::variant<CubeSpec, SimplexSpec, RandomSpec>;

/// Parses "cube:n", "simplex:n" or "random:m,n,seed". Throws InvalidSpec.
GeneratorSpec parse_generator_spec(std::string_view text);

/// cube(n) = [0,1]ⁿ; simplex(n) = {x ≥ 0, Σx ≤ 1}; random = m unit-normal
/// rows with b_i = -1, so the origin is interior with unit slacks.
Polytope generate(const GeneratorSpec& spec);

/// A point known to be interior for a generated polytope (cube/simplex
/// barycenter, origin for random).
Vector reference_point(const GeneratorSpec& spec);

/// Text format: '#' comment lines, header "m n", then m rows "a_1 .. a_n b".
Polytope parse_polytope(std::istream& in);
Polytope parse_polytope(std::string_view text);
void write_polytope(std::ostream& out, const Polytope& p);

Vector slacks(const Polytope& p, const Vector& x);
bool contains_interior(const Polytope& p, const Vector& x);

/// Parameter interval (lo < 0 < hi) of the line x + t·d inside the polytope.
struct LineLimits {
  double lo;
  double hi;
};
LineLimits line_limits(const Polytope& p, const Vector& x, const Vector& direction);

/// Chord through x and y; points are ordered p, x, y, q along the line.
struct Chord {
  Vector p;
  Vector q;
};
Chord chord_endpoints(const Polytope& p, const Vector& x, const Vector& y);

/// Hit-and-run from `start`: `steps` moves along uniformly random directions,
/// each landing uniformly in the middle 98% of the chord.
Vector hit_and_run_point(const Polytope& p, const Vector& start, Rng& rng, int steps = 10);

}  // namespace dikin
