#include "rrr/random.hpp"

#include <cmath>
#include <numbers>

namespace rrr {

double Rng::uniform01() {
  // 53 random mantissa bits, shifted off zero so log() is always finite.
  return static_cast<double>((engine_() >> 11) + 1) * 0x1.0p-53;
}

double Rng::normal() {
  if (spare_) {
    const double z = *spare_;
    spare_.reset();
    return z;
  }
  const double u1 = uniform01();
  const double u2 = uniform01();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double phi = 2.0 * std::numbers::pi * u2;
  spare_ = r * std::sin(phi);
  return r * std::cos(phi);
}

std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream) noexcept {
  return splitmix64(splitmix64(base) ^ (stream * 0xd1b54a32d192ed03ULL));
}

LinearFunction sample_function(Rng& rng, std::size_t dims) {
  if (dims < 2) throw Error(ErrorCode::kDimensionMismatch, "sampling needs d >= 2");
  std::vector<double> w(dims);
  for (;;) {
    double norm_sq = 0.0;
    for (double& x : w) {
      x = std::abs(rng.normal());
      norm_sq += x * x;
    }
    if (norm_sq > 0.0) {
      const double inv = 1.0 / std::sqrt(norm_sq);
      for (double& x : w) x *= inv;
      return LinearFunction(std::move(w));
    }
  }
}

std::vector<LinearFunction> sample_functions(Rng& rng, std::size_t dims, std::size_t count) {
  std::vector<LinearFunction> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(sample_function(rng, dims));
  return out;
}

}  // namespace rrr
