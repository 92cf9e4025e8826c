#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "oracles.hpp"
#include "rrr/angular_sweep.hpp"
#include "rrr/hitting.hpp"
#include "rrr/sweep2d.hpp"

namespace rrr {
namespace {

TEST(AngularSweep, FinalOrderIsRankingOnSecondAxis) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const Dataset d = oracle::uniform(60, 2, seed);
    std::vector<TupleId> all(d.size());
    for (TupleId i = 0; i < d.size(); ++i) all[i] = i;
    AngularSweep sweep(d, all);
    EXPECT_EQ(sweep.order(), rank_list(d, function_at_angle(0.0)).order);
    double last = 0.0;
    bool monotone = true;
    sweep.run([&](std::size_t, double theta) {
      monotone = monotone && theta >= last;
      last = theta;
    }, [](double) {});
    EXPECT_TRUE(monotone);
    EXPECT_EQ(sweep.order(), rank_list(d, function_at_angle(kHalfPi)).order);
    EXPECT_LE(sweep.swaps(), d.size() * (d.size() - 1) / 2);
  }
}

TEST(AngularSweep, OvertakeAngleRules) {
  const std::vector<double> a{0.9, 0.1}, b{0.5, 0.5};
  const auto theta = AngularSweep::overtake_angle({0, a}, {1, b});
  ASSERT_TRUE(theta);
  EXPECT_NEAR(*theta, std::atan2(0.4, 0.4), 1e-15);
  // behind is dominated: never overtakes
  const std::vector<double> c{0.4, 0.05};
  EXPECT_FALSE(AngularSweep::overtake_angle({0, a}, {1, c}));
  // equal x2: the smaller id takes over exactly at pi/2
  const std::vector<double> e{0.3, 0.1};
  const auto at_axis = AngularSweep::overtake_angle({1, a}, {0, e});
  ASSERT_TRUE(at_axis);
  EXPECT_EQ(*at_axis, kHalfPi);
  EXPECT_FALSE(AngularSweep::overtake_angle({0, a}, {1, e}));
}

TEST(AngularSweep, SkybandKeepsEveryPossibleTopK) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const Dataset d = oracle::uniform(80, 2, 40 + seed);
    for (std::size_t k : {1u, 3u, 7u}) {
      const auto band = k_skyband_2d(d, k);
      for (const auto& s : oracle::ksets_by_cells(d, k)) {
        for (TupleId t : s) EXPECT_TRUE(std::binary_search(band.begin(), band.end(), t));
      }
      for (TupleId t : band) {
        std::size_t dominators = 0;
        for (TupleId u = 0; u < d.size(); ++u) {
          if (d.at(u, 0) > d.at(t, 0) && d.at(u, 1) > d.at(t, 1)) ++dominators;
        }
        EXPECT_LT(dominators, k);
      }
    }
  }
}

TEST(FindRanges, ToyRanges) {
  const Dataset d = oracle::toy();
  const auto r = find_ranges(d, 2);
  ASSERT_TRUE(r[0].begin && r[0].end);
  EXPECT_EQ(*r[0].begin, 0.0);
  EXPECT_NEAR(*r[0].end, std::atan(0.13 / 0.32), 1e-12);
  ASSERT_TRUE(r[2].begin);
  EXPECT_NEAR(*r[2].begin, std::atan(0.13 / 0.32), 1e-12);
  EXPECT_EQ(*r[2].end, kHalfPi);
  EXPECT_FALSE(r[3].begin);
  EXPECT_FALSE(r[5].end);
}

TEST(FindRanges, MatchesCellOracle) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const Dataset d = seed % 2 ? oracle::uniform(40, 2, seed) : oracle::anticorrelated(40, 2, seed);
    for (std::size_t k : {1u, 2u, 5u, 10u}) {
      const auto got = find_ranges(d, k);
      const auto want = oracle::ranges_by_cells(d, k);
      for (TupleId t = 0; t < d.size(); ++t) {
        ASSERT_EQ(got[t].begin.has_value(), want[t].begin.has_value()) << t;
        if (!want[t].begin) continue;
        EXPECT_NEAR(*got[t].begin, *want[t].begin, 1e-12);
        EXPECT_NEAR(*got[t].end, *want[t].end, 1e-12);
      }
    }
  }
}

TEST(FindRanges, RejectsBadInput) {
  EXPECT_THROW(find_ranges(oracle::toy(), 7), Error);
  EXPECT_THROW(find_ranges(oracle::toy(), 0), Error);
  EXPECT_THROW(find_ranges(oracle::uniform(10, 3, 1), 2), Error);
}

TEST(UncoveredIntervals, CoverAndCoverage) {
  UncoveredIntervals u;
  EXPECT_NEAR(u.coverage(0.0, 1.0), 1.0, 1e-15);
  u.cover(0.2, 0.5);
  EXPECT_NEAR(u.coverage(0.0, 1.0), 0.7, 1e-15);
  EXPECT_NEAR(u.coverage(0.3, 0.4), 0.0, 1e-15);
  u.cover(0.0, 0.2);
  u.cover(0.5, kHalfPi);
  EXPECT_TRUE(u.empty());
}

TEST(UncoveredIntervals, RangeSpanningSeveralGaps) {
  UncoveredIntervals u;
  u.cover(0.1, 0.2);
  u.cover(0.4, 0.5);
  EXPECT_NEAR(u.coverage(0.0, 0.6), 0.4, 1e-15);
  const auto b = u.boundaries();
  ASSERT_EQ(b.size(), 6u);
  for (std::size_t i = 0; i < b.size(); ++i) {
    EXPECT_EQ(b[i].marker, i % 2 == 0 ? UncoveredIntervals::Marker::kBegin
                                      : UncoveredIntervals::Marker::kEnd);
    if (i) EXPECT_LT(b[i - 1].angle, b[i].angle);
  }
}

AngularRange range(TupleId t, double b, double e) { return {t, b, e}; }

TEST(Cover2d, PicksFewestRanges) {
  // max coverage alone would take the long middle range first and need three
  const double q = kHalfPi / 10.0;
  const std::vector<AngularRange> r{range(0, 0, 5 * q), range(1, 5 * q, 10 * q),
                                    range(2, 1 * q, 9 * q)};
  EXPECT_EQ(cover_2d(r), (std::vector<TupleId>{0, 1}));
}

TEST(Cover2d, TieGoesToSmallerId) {
  const std::vector<AngularRange> r{range(3, 0, kHalfPi), range(1, 0, kHalfPi)};
  EXPECT_EQ(cover_2d(r), (std::vector<TupleId>{1}));
}

TEST(Cover2d, GapThrows) {
  const std::vector<AngularRange> r{range(0, 0, 0.5), range(1, 0.6, kHalfPi)};
  EXPECT_THROW(cover_2d(r), Error);
}

TEST(Rrr2d, ToyOutput) {
  const Representative rep = rrr_2d(oracle::toy(), 2);
  EXPECT_EQ(rep.members, (std::vector<TupleId>{0, 2}));
  EXPECT_EQ(rep.algorithm, "2drrr");
  EXPECT_EQ(rrr_2d(oracle::toy(), 7).members.size(), 1u);
}

TEST(Rrr2d, RangesOfOutputCoverQuarterCircle) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Dataset d = oracle::uniform(100, 2, 300 + seed);
    const std::size_t k = 1 + seed % 6;
    const auto ranges = find_ranges(d, k);
    UncoveredIntervals u;
    for (TupleId t : rrr_2d(d, k).members) u.cover(*ranges[t].begin, *ranges[t].end);
    EXPECT_TRUE(u.empty());
  }
}

TEST(Rrr2d, OptimalSizeAndTwoKBound) {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const Dataset d =
        seed % 2 ? oracle::uniform(30, 2, 700 + seed) : oracle::anticorrelated(30, 2, 700 + seed);
    const std::size_t k = 1 + seed % 4;
    const auto out = rrr_2d(d, k).members;
    const auto sets = enumerate_ksets_2d(d, k);
    EXPECT_EQ(out.size(), oracle::min_hitting_size(sets.canonical())) << seed;
    EXPECT_LE(exact_rank_regret_2d(d, out), 2 * k);
  }
}

TEST(Ksets2d, ToySets) {
  const auto c = enumerate_ksets_2d(oracle::toy(), 2);
  EXPECT_TRUE(c.complete());
  EXPECT_EQ(c.canonical(), (std::vector<std::vector<TupleId>>{{0, 6}, {2, 4}, {2, 6}}));
  for (const KSet& s : c.sets()) {
    ASSERT_TRUE(s.witness);
    EXPECT_EQ(top_k(oracle::toy(), *s.witness, 2), s.members);
  }
}

TEST(Ksets2d, MatchesCellOracle) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const Dataset d = seed % 2 ? oracle::uniform(35, 2, seed) : oracle::anticorrelated(35, 2, seed);
    for (std::size_t k : {1u, 2u, 4u, 9u, 35u}) {
      EXPECT_EQ(enumerate_ksets_2d(d, k).canonical(), oracle::ksets_by_cells(d, k))
          << "seed " << seed << " k " << k;
    }
  }
}

TEST(Ksets2d, HandlesDuplicatesAndTies) {
  const Dataset d = Dataset::from_rows(
      {{0.5, 0.5}, {0.5, 0.5}, {1.0, 0.0}, {0.0, 1.0}, {0.5, 0.2}, {0.2, 0.5}});
  for (std::size_t k = 1; k <= 6; ++k) {
    const auto c = enumerate_ksets_2d(d, k);
    for (const KSet& s : c.sets()) EXPECT_EQ(s.members.size(), k);
    EXPECT_FALSE(c.empty());
  }
}

TEST(ExactRankRegret2d, ToyValues) {
  const Dataset d = oracle::toy();
  // t4 is last under w = (1, 1)
  const std::vector<TupleId> t4{3};
  EXPECT_EQ(exact_rank_regret_2d(d, t4), 7u);
  EXPECT_EQ(exact_rank_regret_2d(d, std::vector<TupleId>{0, 2}), 2u);
  EXPECT_EQ(exact_rank_regret_2d(d, std::vector<TupleId>{6}), 5u);
}

TEST(ExactRankRegret2d, MatchesCellOracle) {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const Dataset d = seed % 2 ? oracle::uniform(30, 2, seed) : oracle::anticorrelated(30, 2, seed);
    Rng rng(seed);
    const std::size_t m = 1 + seed % 4;
    std::vector<TupleId> subset;
    for (std::size_t i = 0; i < m; ++i) subset.push_back(static_cast<TupleId>(rng.next_u64() % 30));
    EXPECT_EQ(exact_rank_regret_2d(d, subset), oracle::rank_regret_by_cells(d, subset));
  }
}

TEST(ExactRankRegret2d, RejectsEmptySubset) {
  EXPECT_THROW(exact_rank_regret_2d(oracle::toy(), std::vector<TupleId>{}), Error);
}

}  // namespace
}  // namespace rrr
