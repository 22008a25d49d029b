#pragma once

#include <cstdint>
#include <random>
#include <string_view>

#include <Eigen/Core>

namespace dikin {

/// splitmix64 finalizer; used to derive independent stream seeds.
std::uint64_t mix64(std::uint64_t x) noexcept;

/// Stable 64-bit FNV-1a hash (std::hash is not stable across runs/platforms).
std::uint64_t fnv1a(std::string_view text) noexcept;

/// Seedable generator with platform-independent uniform and normal draws.
///
/// std::normal_distribution is implementation-defined, so the variates are
/// produced here from the raw mt19937_64 stream: uniforms take the top 53 bits,
/// normals use the Marsaglia polar method. Two generators built from the same
/// (seed, stream) pair yield bit-identical sequences everywhere.
class Rng {
 public:
  explicit Rng(std::uint64_t seed, std::uint64_t stream = 0);

  /// Generator for an independent sub-stream, e.g. one per chain or check.
  Rng split(std::uint64_t stream) const { return Rng(seed_, mix64(stream_ + 0x9e3779b97f4a7c15ULL * (stream + 1))); }

  /// Uniform on [0, 1).
  double uniform();
  /// Exact standard normal variate.
  double normal();
  Eigen::VectorXd normal_vector(Eigen::Index n);

  std::uint64_t seed() const noexcept { return seed_; }

 private:
  std::uint64_t seed_;
  std::uint64_t stream_;
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace dikin
