#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "rrr/core.hpp"

namespace rrr {

// Seedable generator with a platform-independent stream: mt19937_64 is fully
// specified by the standard, and the uniform/normal transforms below are
// implemented here rather than through <random> distributions (whose output
// is implementation-defined).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : seed_(seed), engine_(seed) {}

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t next_u64() { return engine_(); }
  // Uniform in (0, 1].
  double uniform01();
  // Standard normal via Box-Muller; the second variate of each pair is cached.
  double normal();

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
  std::optional<double> spare_;
};

// Stateless 64-bit mixer for deriving independent substream seeds.
std::uint64_t splitmix64(std::uint64_t x) noexcept;
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream) noexcept;

// w_i = |z_i| with z_i ~ N(0,1), normalized to unit length: uniform on the
// first-orthant unit sphere.
LinearFunction sample_function(Rng& rng, std::size_t dims);

std::vector<LinearFunction> sample_functions(Rng& rng, std::size_t dims, std::size_t count);

}  // namespace rrr
