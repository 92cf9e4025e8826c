#include "rrr/sweep2d.hpp"

#include <algorithm>
#include <string>

#include "rrr/angular_sweep.hpp"

namespace rrr {
namespace {

constexpr double kCoverSlack = 1e-12;

void require_2d(const Dataset& data) {
  if (data.dims() != 2) throw Error(ErrorCode::kDimensionNot2D, "2D algorithm on d != 2 data");
}

void fill_stats(SweepStats* stats, const AngularSweep& sweep) {
  if (!stats) return;
  stats->tracked = sweep.order().size();
  stats->swaps = sweep.swaps();
  stats->stale_events = sweep.stale_events();
}

std::vector<TupleId> sorted_prefix(const std::vector<TupleId>& order, std::size_t k) {
  std::vector<TupleId> out(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(k));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

UncoveredIntervals::UncoveredIntervals() : intervals_{{0.0, kHalfPi}} {}

std::size_t UncoveredIntervals::first_touching(double begin) const {
  return static_cast<std::size_t>(
      std::upper_bound(intervals_.begin(), intervals_.end(), begin,
                       [](double b, const Interval& iv) { return b < iv.hi; }) -
      intervals_.begin());
}

double UncoveredIntervals::coverage(double begin, double end) const {
  double total = 0.0;
  for (std::size_t i = first_touching(begin); i < intervals_.size() && intervals_[i].lo < end;
       ++i) {
    total += std::min(intervals_[i].hi, end) - std::max(intervals_[i].lo, begin);
  }
  return total;
}

void UncoveredIntervals::cover(double begin, double end) {
  std::vector<Interval> next;
  next.reserve(intervals_.size() + 1);
  for (const Interval& iv : intervals_) {
    if (iv.hi <= begin || iv.lo >= end) {
      next.push_back(iv);
      continue;
    }
    if (iv.lo < begin && begin - iv.lo > kCoverSlack) next.push_back({iv.lo, begin});
    if (iv.hi > end && iv.hi - end > kCoverSlack) next.push_back({end, iv.hi});
  }
  intervals_ = std::move(next);
}

std::vector<UncoveredIntervals::Boundary> UncoveredIntervals::boundaries() const {
  std::vector<Boundary> out;
  out.reserve(intervals_.size() * 2);
  for (const Interval& iv : intervals_) {
    out.push_back({iv.lo, Marker::kBegin});
    out.push_back({iv.hi, Marker::kEnd});
  }
  return out;
}

std::vector<AngularRange> find_ranges(const Dataset& data, std::size_t k, SweepStats* stats) {
  require_2d(data);
  const std::size_t n = data.size();
  if (k < 1 || k >= n) {
    throw Error(ErrorCode::kKOutOfRange,
                "find_ranges needs 1 <= k < n (k=" + std::to_string(k) + ")");
  }
  std::vector<AngularRange> ranges(n);
  for (TupleId i = 0; i < n; ++i) ranges[i].tuple = i;

  AngularSweep sweep(data, k_skyband_2d(data, k));
  const auto& order = sweep.order();
  for (std::size_t pos = 0; pos < k; ++pos) ranges[order[pos]].begin = 0.0;

  sweep.run(
      [&](std::size_t pos, double theta) {
        if (pos != k - 1) return;
        AngularRange& entering = ranges[order[pos]];
        if (!entering.begin) entering.begin = theta;
        ranges[order[pos + 1]].end = theta;
      },
      [](double) {});

  for (std::size_t pos = 0; pos < k; ++pos) ranges[order[pos]].end = kHalfPi;
  fill_stats(stats, sweep);
  return ranges;
}

namespace {

// Fewest ranges whose union contains every uncovered interval, by the
// left-to-right furthest-reach rule. nullopt when some point is uncoverable.
std::optional<std::size_t> min_cover_count(const UncoveredIntervals& uncovered,
                                           const std::vector<const AngularRange*>& by_begin) {
  const auto marks = uncovered.boundaries();
  std::size_t count = 0;
  std::size_t next = 0;
  double reach = -1.0;
  double best_end = -1.0;
  for (std::size_t b = 0; b + 1 < marks.size(); b += 2) {
    const double hi = marks[b + 1].angle;
    double cur = std::max(marks[b].angle, reach);
    while (cur < hi - kCoverSlack) {
      while (next < by_begin.size() && *by_begin[next]->begin <= cur + kCoverSlack) {
        best_end = std::max(best_end, *by_begin[next]->end);
        ++next;
      }
      if (best_end <= cur + kCoverSlack) return std::nullopt;
      ++count;
      reach = best_end;
      cur = reach;
    }
  }
  return count;
}

}  // namespace

std::vector<TupleId> cover_2d(std::span<const AngularRange> ranges) {
  std::vector<const AngularRange*> candidates;
  for (const AngularRange& r : ranges) {
    if (r.begin && r.end) candidates.push_back(&r);
  }
  std::sort(candidates.begin(), candidates.end(),
            [](const AngularRange* a, const AngularRange* b) { return a->tuple < b->tuple; });
  std::vector<const AngularRange*> by_begin = candidates;
  std::stable_sort(by_begin.begin(), by_begin.end(),
                   [](const AngularRange* a, const AngularRange* b) { return *a->begin < *b->begin; });

  UncoveredIntervals uncovered;
  const auto optimum = min_cover_count(uncovered, by_begin);
  if (!optimum) throw Error(ErrorCode::kUncoverableSpace, "ranges do not cover [0, pi/2]");
  std::size_t left = *optimum;

  // Maximum-coverage greedy, restricted to picks that still allow an optimal
  // completion.
  std::vector<bool> used(candidates.size(), false);
  std::vector<TupleId> chosen;
  while (!uncovered.empty()) {
    std::vector<bool> rejected(candidates.size(), false);
    bool accepted = false;
    while (!accepted) {
      std::size_t best = candidates.size();
      double best_cov = 0.0;
      for (std::size_t i = 0; i < candidates.size(); ++i) {
        if (used[i] || rejected[i]) continue;
        const double cov = uncovered.coverage(*candidates[i]->begin, *candidates[i]->end);
        if (cov > best_cov + kCoverSlack) {
          best = i;
          best_cov = cov;
        }
      }
      if (best == candidates.size()) {
        throw Error(ErrorCode::kUncoverableSpace, "ranges do not cover [0, pi/2]");
      }
      UncoveredIntervals trial = uncovered;
      trial.cover(*candidates[best]->begin, *candidates[best]->end);
      const auto rest = min_cover_count(trial, by_begin);
      if (rest && *rest + 1 <= left) {
        used[best] = true;
        chosen.push_back(candidates[best]->tuple);
        uncovered = std::move(trial);
        left = *rest;
        accepted = true;
      } else {
        rejected[best] = true;
      }
    }
  }
  std::sort(chosen.begin(), chosen.end());
  return chosen;
}

Representative rrr_2d(const Dataset& data, std::size_t k) {
  require_2d(data);
  const std::size_t n = data.size();
  if (k < 1 || k > n) throw Error(ErrorCode::kKOutOfRange, "k outside [1, n]");
  Representative rep;
  rep.algorithm = "2drrr";
  rep.params["k"] = static_cast<double>(k);
  if (k == n) {
    rep.members = {0};
    return rep;
  }
  rep.members = cover_2d(find_ranges(data, k));
  return rep;
}

KSetCollection enumerate_ksets_2d(const Dataset& data, std::size_t k, SweepStats* stats) {
  require_2d(data);
  const std::size_t n = data.size();
  if (k < 1 || k > n) throw Error(ErrorCode::kKOutOfRange, "k outside [1, n]");
  KSetCollection out(k, true);
  if (k == n) {
    std::vector<TupleId> all(n);
    for (TupleId i = 0; i < n; ++i) all[i] = i;
    out.insert({std::move(all), function_at_angle(kHalfPi / 2.0)});
    return out;
  }

  AngularSweep sweep(data, k_skyband_2d(data, k));
  const auto& order = sweep.order();
  std::vector<TupleId> current = sorted_prefix(order, k);
  double since = 0.0;
  bool boundary_moved = false;

  auto record = [&](double until) {
    out.insert({current, function_at_angle(0.5 * (since + until))});
  };

  sweep.run([&](std::size_t pos, double) { boundary_moved = boundary_moved || pos == k - 1; },
            [&](double theta) {
              if (!boundary_moved) return;
              boundary_moved = false;
              auto next = sorted_prefix(order, k);
              if (next == current) return;
              record(theta);
              current = std::move(next);
              since = theta;
            });
  record(kHalfPi);
  fill_stats(stats, sweep);
  return out;
}

std::size_t exact_rank_regret_2d(const Dataset& data, std::span<const TupleId> subset,
                                 SweepStats* stats) {
  require_2d(data);
  if (subset.empty()) throw Error(ErrorCode::kEmptySubset, "rank-regret of an empty subset");
  const std::size_t n = data.size();
  std::vector<bool> in_subset(n, false);
  for (TupleId t : subset) {
    if (t >= n) throw Error(ErrorCode::kKOutOfRange, "subset id out of range");
    in_subset[t] = true;
  }

  std::vector<TupleId> all(n);
  for (TupleId i = 0; i < n; ++i) all[i] = i;
  AngularSweep sweep(data, std::move(all));
  const auto& order = sweep.order();

  std::size_t best = 0;  // position of the best-ranked subset member
  while (!in_subset[order[best]]) ++best;
  std::size_t worst = best;

  sweep.run(
      [&](std::size_t pos, double) {
        if (best == pos) {
          if (!in_subset[order[pos]]) best = pos + 1;
        } else if (best == pos + 1) {
          best = pos;
        }
      },
      [&](double) { worst = std::max(worst, best); });
  fill_stats(stats, sweep);
  return worst + 1;
}

}  // namespace rrr
