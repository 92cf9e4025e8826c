#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "rrr/random.hpp"

namespace rrr {
namespace {

TEST(Rng, ReproducibleStream) {
  Rng a(42), b(42), c(43);
  for (int i = 0; i < 100; ++i) {
    const double x = a.normal();
    EXPECT_EQ(x, b.normal());
    if (i == 0) EXPECT_NE(x, c.normal());
  }
}

TEST(Rng, Uniform01Range) {
  Rng rng(1);
  for (int i = 0; i < 100000; ++i) {
    const double u = rng.uniform01();
    ASSERT_GT(u, 0.0);
    ASSERT_LE(u, 1.0);
  }
}

TEST(Rng, NormalMoments) {
  Rng rng(2);
  double sum = 0, sq = 0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    const double z = rng.normal();
    sum += z;
    sq += z * z;
  }
  EXPECT_NEAR(sum / n, 0.0, 0.01);
  EXPECT_NEAR(sq / n, 1.0, 0.02);
}

TEST(DeriveSeed, SpreadsStreams) {
  EXPECT_NE(derive_seed(1, 0), derive_seed(1, 1));
  EXPECT_NE(derive_seed(1, 0), derive_seed(2, 0));
  EXPECT_EQ(derive_seed(5, 3), derive_seed(5, 3));
}

TEST(SampleFunction, UnitNormNonNegative) {
  Rng rng(3);
  for (std::size_t d : {2u, 3u, 7u}) {
    for (int i = 0; i < 1000; ++i) {
      const LinearFunction f = sample_function(rng, d);
      double norm = 0;
      for (double w : f.weights()) {
        ASSERT_GE(w, 0.0);
        norm += w * w;
      }
      EXPECT_NEAR(norm, 1.0, 1e-12);
    }
  }
}

TEST(SampleFunction, UniformOnQuarterCircle) {
  // on the quarter circle the angle of a uniform direction is uniform on [0, pi/2]
  Rng rng(4);
  std::vector<double> u;
  for (int i = 0; i < 20000; ++i) {
    const LinearFunction f = sample_function(rng, 2);
    u.push_back(std::atan2(f[1], f[0]) / kHalfPi);
  }
  EXPECT_LT(oracle::ks_uniform(u, 0.0, 1.0), 1.36 / std::sqrt(20000.0));
}

TEST(SampleFunction, CoordinateLawIn3d) {
  // uniform on the sphere: w_3 = cos(polar) is uniform on [0,1] in the octant
  Rng rng(5);
  std::vector<double> u;
  for (int i = 0; i < 20000; ++i) u.push_back(sample_function(rng, 3)[2]);
  EXPECT_LT(oracle::ks_uniform(u, 0.0, 1.0), 1.36 / std::sqrt(20000.0));
}

TEST(SampleFunctions, BatchMatchesSingleDraws) {
  Rng a(6), b(6);
  const auto batch = sample_functions(a, 4, 10);
  for (const auto& f : batch) {
    const LinearFunction g = sample_function(b, 4);
    EXPECT_TRUE(std::equal(f.weights().begin(), f.weights().end(), g.weights().begin()));
  }
}

}  // namespace
}  // namespace rrr
