#pragma once

// Two-dimensional rank-regret machinery built on the angular sweep:
// per-tuple top-k angle ranges, the interval cover over [0, pi/2], exact
// 2D k-set enumeration and exact 2D rank-regret.

#include <optional>
#include <span>
#include <vector>

#include "rrr/core.hpp"
#include "rrr/types.hpp"

namespace rrr {

// First and last sweep angle at which a tuple is in the top-k. Both absent
// when the tuple never is.
struct AngularRange {
  TupleId tuple;
  std::optional<double> begin;
  std::optional<double> end;
};

struct SweepStats {
  std::size_t tracked = 0;  // tuples that survived the k-skyband filter
  std::size_t swaps = 0;
  std::size_t stale_events = 0;
};

// Sorted, disjoint uncovered sub-intervals of [0, pi/2].
class UncoveredIntervals {
 public:
  enum class Marker { kBegin, kEnd };
  struct Boundary {
    double angle;
    Marker marker;
  };

  UncoveredIntervals();

  bool empty() const noexcept { return intervals_.empty(); }
  // Length of [begin, end] that is still uncovered.
  double coverage(double begin, double end) const;
  void cover(double begin, double end);
  // Alternating begin/end markers with strictly increasing angles.
  std::vector<Boundary> boundaries() const;

 private:
  struct Interval {
    double lo;
    double hi;
  };
  std::size_t first_touching(double begin) const;
  std::vector<Interval> intervals_;
};

std::vector<AngularRange> find_ranges(const Dataset& data, std::size_t k,
                                      SweepStats* stats = nullptr);

// Greedy maximum-uncovered-coverage selection, skipping any pick after which
// the rest can no longer be covered with the fewest possible ranges, so the
// result has minimum size. Ties go to the smaller id. Ascending ids.
std::vector<TupleId> cover_2d(std::span<const AngularRange> ranges);

Representative rrr_2d(const Dataset& data, std::size_t k);

KSetCollection enumerate_ksets_2d(const Dataset& data, std::size_t k,
                                  SweepStats* stats = nullptr);

// max over theta in [0, pi/2] of min over t in X of rank_theta(t).
std::size_t exact_rank_regret_2d(const Dataset& data, std::span<const TupleId> subset,
                                 SweepStats* stats = nullptr);

}  // namespace rrr
