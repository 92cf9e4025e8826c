#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "rrr/core.hpp"
#include "rrr/random.hpp"

namespace rrr {
namespace {

TEST(Normalize, MinMaxAndDirections) {
  const std::vector<std::vector<double>> raw{{10, 5}, {20, 1}, {15, 3}};
  const std::vector<Direction> dirs{Direction::kHigherPreferred, Direction::kLowerPreferred};
  const Dataset d = normalize(raw, dirs);
  ASSERT_EQ(d.size(), 3u);
  EXPECT_DOUBLE_EQ(d.at(0, 0), 0.0);
  EXPECT_DOUBLE_EQ(d.at(1, 0), 1.0);
  EXPECT_DOUBLE_EQ(d.at(2, 0), 0.5);
  EXPECT_DOUBLE_EQ(d.at(0, 1), 0.0);
  EXPECT_DOUBLE_EQ(d.at(1, 1), 1.0);
  EXPECT_DOUBLE_EQ(d.at(2, 1), 0.5);
}

TEST(Normalize, ConstantColumnNamesIndex) {
  const std::vector<std::vector<double>> raw{{1, 4}, {2, 4}};
  const std::vector<Direction> dirs(2, Direction::kHigherPreferred);
  try {
    normalize(raw, dirs);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kConstantAttribute);
    EXPECT_EQ(e.subject(), 1);
  }
}

TEST(Normalize, RejectsNonFinite) {
  const std::vector<std::vector<double>> raw{{1, NAN}, {2, 4}};
  const std::vector<Direction> dirs(2, Direction::kHigherPreferred);
  EXPECT_THROW(normalize(raw, dirs), Error);
}

TEST(Dataset, ValidatesRange) {
  EXPECT_THROW(Dataset(2, {0.1, 1.5}), Error);
  EXPECT_THROW(Dataset(2, {0.1, 0.2, 0.3}), Error);
  EXPECT_NO_THROW(Dataset(2, {0.0, 1.0}));
}

TEST(LinearFunction, RejectsBadWeights) {
  EXPECT_THROW(LinearFunction({0.0, 0.0}), Error);
  EXPECT_THROW(LinearFunction({-1.0, 1.0}), Error);
  EXPECT_NEAR(LinearFunction({3.0, 4.0}).normalized()[1], 0.8, 1e-15);
}

TEST(Ranking, ToyListsMatchExample) {
  const Dataset d = oracle::toy();
  EXPECT_EQ(rank_list(d, LinearFunction({1, 1})).order,
            (std::vector<TupleId>{6, 2, 4, 0, 1, 5, 3}));
  EXPECT_EQ(rank_list(d, LinearFunction({1, 0})).order,
            (std::vector<TupleId>{6, 0, 2, 1, 4, 3, 5}));
}

TEST(Ranking, TiesBrokenBySmallerId) {
  const Dataset d = Dataset::from_rows({{0.5, 0.5}, {0.5, 0.5}, {0.2, 0.9}});
  const LinearFunction f({1, 0});
  EXPECT_EQ(rank_list(d, f).order, (std::vector<TupleId>{0, 1, 2}));
  EXPECT_EQ(rank_of(d, f, 1), 2u);
  EXPECT_EQ(top_k(d, f, 1), (std::vector<TupleId>{0}));
}

TEST(Ranking, TopKAgreesWithRankList) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Dataset d = oracle::uniform(40, 3, seed);
    Rng rng(seed);
    const LinearFunction f = sample_function(rng, 3);
    const auto order = rank_list(d, f).order;
    for (std::size_t k : {1u, 5u, 40u}) {
      std::vector<TupleId> expect(order.begin(), order.begin() + static_cast<long>(k));
      std::sort(expect.begin(), expect.end());
      EXPECT_EQ(top_k(d, f, k), expect);
    }
    for (std::size_t pos = 0; pos < order.size(); ++pos) {
      EXPECT_EQ(rank_of(d, f, order[pos]), pos + 1);
    }
  }
}

TEST(Ranking, TopKRejectsBadK) {
  const Dataset d = oracle::toy();
  EXPECT_THROW(top_k(d, LinearFunction({1, 1}), 0), Error);
  EXPECT_THROW(top_k(d, LinearFunction({1, 1}), 8), Error);
}

TEST(Angles, RoundTrip) {
  Rng rng(3);
  for (int i = 0; i < 200; ++i) {
    const std::size_t d = 2 + static_cast<std::size_t>(i % 5);
    const LinearFunction f = sample_function(rng, d);
    const LinearFunction g = angles_to_weights(weights_to_angles(f));
    for (std::size_t j = 0; j < d; ++j) EXPECT_NEAR(f[j], g[j], 1e-12);
  }
}

TEST(Angles, AxesAreExact) {
  const LinearFunction f = angles_to_weights({{kHalfPi}});
  EXPECT_EQ(f[0], 0.0);
  EXPECT_EQ(f[1], 1.0);
  const LinearFunction g = function_at_angle(0.0);
  EXPECT_EQ(g[0], 1.0);
  EXPECT_EQ(g[1], 0.0);
  EXPECT_THROW(angles_to_weights({{-0.1}}), Error);
}

TEST(ExchangeAngle, ToyPairs) {
  const Dataset d = oracle::toy();
  const auto a = exchange_angle(d.tuple(0), d.tuple(2));
  ASSERT_TRUE(a);
  EXPECT_NEAR(*a, std::atan(0.13 / 0.32), 1e-12);
  const auto f = function_at_angle(*a);
  EXPECT_NEAR(score(d.tuple(0), f), score(d.tuple(2), f), 1e-12);
  // t7 dominates t1
  EXPECT_FALSE(exchange_angle(d.tuple(6), d.tuple(0)));
  EXPECT_THROW(exchange_angle(Tuple{0, std::vector<double>{1, 1, 1}},
                              Tuple{1, std::vector<double>{0, 1, 1}}),
               Error);
}

}  // namespace
}  // namespace rrr
