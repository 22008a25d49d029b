#include "dikin/polytope.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <vector>

#include "dikin/error.hpp"

namespace dikin {

namespace {

void check_dim(const Polytope& p, const Vector& x) {
  if (x.size() != p.dim()) {
    throw Error(ErrorCode::DimensionMismatch,
                "point has length " + std::to_string(x.size()) + ", polytope dimension is " +
                    std::to_string(p.dim()));
  }
}

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < s.size() && s[j] != ' ' && s[j] != '\t' && s[j] != '\r') ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

template <typename T>
bool parse_number(std::string_view tok, T& value) {
  if (!tok.empty() && tok.front() == '+') tok.remove_prefix(1);
  const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  return ec == std::errc() && ptr == tok.data() + tok.size();
}

int parse_positive(std::string_view tok, std::string_view what) {
  int v = 0;
  if (!parse_number(tok, v) || v < 1) {
    throw Error(ErrorCode::InvalidSpec, std::string(what) + " must be a positive integer, got '" +
                                            std::string(tok) + "'");
  }
  return v;
}

}  // namespace

Polytope::Polytope(Matrix a, Vector b) : a_(std::move(a)), b_(std::move(b)) {
  if (a_.rows() != b_.size()) {
    throw Error(ErrorCode::DimensionMismatch, "A has " + std::to_string(a_.rows()) + " rows but b has " +
                                                  std::to_string(b_.size()) + " entries");
  }
  if (a_.cols() < 1) throw Error(ErrorCode::DimensionError, "dimension must be at least 1");
  if (a_.rows() < a_.cols() + 1) {
    throw Error(ErrorCode::DimensionError, "a bounded polytope needs m >= n+1 constraints");
  }
  if (!a_.allFinite() || !b_.allFinite()) {
    throw Error(ErrorCode::SyntaxError, "constraint data must be finite");
  }
  for (Eigen::Index i = 0; i < a_.rows(); ++i) {
    if ((a_.row(i).array() == 0.0).all()) {
      throw Error(ErrorCode::ZeroRow, "constraint " + std::to_string(i + 1) + " has an all-zero row",
                  static_cast<long>(i));
    }
  }
}

InteriorPoint::InteriorPoint(const Polytope& p, Vector x) : x_(std::move(x)) {
  if (!contains_interior(p, x_)) throw Error(ErrorCode::BoundaryPoint, "point is not strictly interior");
}

GeneratorSpec parse_generator_spec(std::string_view text) {
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) {
    throw Error(ErrorCode::InvalidSpec, "expected cube:n, simplex:n or random:m,n,seed");
  }
  const auto kind = text.substr(0, colon);
  const auto args = text.substr(colon + 1);
  if (kind == "cube") return CubeSpec{parse_positive(args, "n")};
  if (kind == "simplex") return SimplexSpec{parse_positive(args, "n")};
  if (kind == "random") {
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    while (true) {
      const auto comma = args.find(',', start);
      parts.push_back(args.substr(start, comma - start));
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    if (parts.size() != 3) throw Error(ErrorCode::InvalidSpec, "random spec is random:m,n,seed");
    std::uint64_t seed = 0;
    if (!parse_number(parts[2], seed)) throw Error(ErrorCode::InvalidSpec, "seed must be a non-negative integer");
    return RandomSpec{parse_positive(parts[0], "m"), parse_positive(parts[1], "n"), seed};
  }
  throw Error(ErrorCode::InvalidSpec, "unknown polytope kind '" + std::string(kind) + "'");
}

Polytope generate(const GeneratorSpec& spec) {
  return std::visit(
      [](const auto& s) -> Polytope {
        using T = std::decay_t<decltype(s)>;
        if (s.n < 1) throw Error(ErrorCode::InvalidSpec, "dimension must be at least 1");
        if constexpr (std::is_same_v<T, CubeSpec>) {
          Matrix a = Matrix::Zero(2 * s.n, s.n);
          Vector b(2 * s.n);
          for (int i = 0; i < s.n; ++i) {
            a(2 * i, i) = 1.0;
            b[2 * i] = 0.0;
            a(2 * i + 1, i) = -1.0;
            b[2 * i + 1] = -1.0;
          }
          return Polytope(std::move(a), std::move(b));
        } else if constexpr (std::is_same_v<T, SimplexSpec>) {
          Matrix a = Matrix::Zero(s.n + 1, s.n);
          a.topRows(s.n).setIdentity();
          a.row(s.n).setConstant(-1.0);
          Vector b = Vector::Zero(s.n + 1);
          b[s.n] = -1.0;
          return Polytope(std::move(a), std::move(b));
        } else {
          if (s.m < 2 * s.n) throw Error(ErrorCode::InvalidSpec, "random polytope needs m >= 2n");
          Rng rng(s.seed);
          Matrix a(s.m, s.n);
          for (int i = 0; i < s.m; ++i) {
            Vector row;
            do {
              row = rng.normal_vector(s.n);
            } while (row.norm() == 0.0);
            a.row(i) = row.transpose() / row.norm();
          }
          return Polytope(std::move(a), Vector::Constant(s.m, -1.0));
        }
      },
      spec);
}

Vector reference_point(const GeneratorSpec& spec) {
  return std::visit(
      [](const auto& s) -> Vector {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, CubeSpec>) return Vector::Constant(s.n, 0.5);
        else if constexpr (std::is_same_v<T, SimplexSpec>) return Vector::Constant(s.n, 1.0 / (s.n + 1));
        else return Vector::Zero(s.n);
      },
      spec);
}

Polytope parse_polytope(std::istream& in) {
  std::string line;
  long line_no = 0;
  long m = -1, n = -1;
  std::vector<double> values;
  long rows_read = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto body = trim(line);
    if (body.empty() || body.front() == '#') continue;
    const auto tokens = split_ws(body);
    if (m < 0) {
      if (tokens.size() != 2 || !parse_number(tokens[0], m) || !parse_number(tokens[1], n) || m < 1 || n < 1) {
        throw Error(ErrorCode::SyntaxError, "line " + std::to_string(line_no) + ": expected header 'm n'", line_no);
      }
      values.reserve(static_cast<std::size_t>(m * (n + 1)));
      continue;
    }
    if (rows_read == m) {
      throw Error(ErrorCode::SyntaxError, "line " + std::to_string(line_no) + ": more rows than declared", line_no);
    }
    if (static_cast<long>(tokens.size()) != n + 1) {
      throw Error(ErrorCode::DimensionError,
                  "line " + std::to_string(line_no) + ": expected " + std::to_string(n + 1) + " numbers, got " +
                      std::to_string(tokens.size()),
                  line_no);
    }
    bool all_zero = true;
    for (long k = 0; k <= n; ++k) {
      double v = 0.0;
      if (!parse_number(tokens[k], v) || !std::isfinite(v)) {
        throw Error(ErrorCode::SyntaxError,
                    "line " + std::to_string(line_no) + ": bad number '" + std::string(tokens[k]) + "'", line_no);
      }
      if (k < n && v != 0.0) all_zero = false;
      values.push_back(v);
    }
    if (all_zero) {
      throw Error(ErrorCode::ZeroRow, "line " + std::to_string(line_no) + ": all-zero constraint row", line_no);
    }
    ++rows_read;
  }
  if (m < 0) throw Error(ErrorCode::SyntaxError, "missing header 'm n'", line_no);
  if (rows_read != m) {
    throw Error(ErrorCode::SyntaxError,
                "line " + std::to_string(line_no) + ": expected " + std::to_string(m) + " rows, found " +
                    std::to_string(rows_read),
                line_no);
  }
  Matrix a(m, n);
  Vector b(m);
  for (long i = 0; i < m; ++i) {
    for (long k = 0; k < n; ++k) a(i, k) = values[i * (n + 1) + k];
    b[i] = values[i * (n + 1) + n];
  }
  return Polytope(std::move(a), std::move(b));
}

Polytope parse_polytope(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_polytope(in);
}

void write_polytope(std::ostream& out, const Polytope& p) {
  char buf[64];
  auto put = [&](double v) {
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    out.write(buf, res.ptr - buf);
  };
  out << p.rows() << ' ' << p.dim() << '\n';
  for (Eigen::Index i = 0; i < p.rows(); ++i) {
    for (Eigen::Index k = 0; k < p.dim(); ++k) {
      put(p.A()(i, k));
      out << ' ';
    }
    put(p.b()[i]);
    out << '\n';
  }
}

Vector slacks(const Polytope& p, const Vector& x) {
  check_dim(p, x);
  return p.A() * x - p.b();
}

bool contains_interior(const Polytope& p, const Vector& x) {
  return slacks(p, x).minCoeff() > 0.0;
}

LineLimits line_limits(const Polytope& p, const Vector& x, const Vector& direction) {
  check_dim(p, direction);
  const Vector s = slacks(p, x);
  const Vector rate = p.A() * direction;
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < p.rows(); ++i) {
    // slack along the line: s_i + t * rate_i
    if (rate[i] < 0.0) hi = std::min(hi, s[i] / -rate[i]);
    else if (rate[i] > 0.0) lo = std::max(lo, -s[i] / rate[i]);
  }
  if (!std::isfinite(lo) || !std::isfinite(hi)) {
    throw Error(ErrorCode::UnboundedChord, "polytope is unbounded along the requested direction");
  }
  return {lo, hi};
}

Chord chord_endpoints(const Polytope& p, const Vector& x, const Vector& y) {
  check_dim(p, x);
  check_dim(p, y);
  const Vector d = y - x;
  if (d.isZero(0.0)) throw Error(ErrorCode::IdenticalPoints, "chord through identical points is undefined");
  const LineLimits t = line_limits(p, x, d);
  return {x + t.lo * d, x + t.hi * d};
}

Vector hit_and_run_point(const Polytope& p, const Vector& start, Rng& rng, int steps) {
  Vector x = start;
  for (int k = 0; k < steps; ++k) {
    Vector d;
    do {
      d = rng.normal_vector(p.dim());
    } while (d.norm() == 0.0);
    const LineLimits t = line_limits(p, x, d);
    const double u = 0.01 + 0.98 * rng.uniform();
    x += (t.lo + u * (t.hi - t.lo)) * d;
  }
  return x;
}

}  // namespace dikin
