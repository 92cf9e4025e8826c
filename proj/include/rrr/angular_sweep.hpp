#pragma once

// Kinetic ordering of 2D tuples under the ray f_theta = (cos theta, sin theta)
// as theta sweeps from 0 to pi/2.
//
// The order starts as the ranking at theta = 0 (x1 descending, ties by id).
// Every order change is a swap of two adjacent tuples; candidate swaps live in
// a min-heap keyed by (angle, low id, high id). A popped event is applied only
// if its two tuples are still adjacent and in the expected order; otherwise it
// is stale and dropped. Each pair swaps at most once, so at most m(m-1)/2
// swaps happen for m tracked tuples.

#include <cstddef>
#include <optional>
#include <queue>
#include <vector>

#include "rrr/core.hpp"

namespace rrr {

class AngularSweep {
 public:
  // Tracks only `members` (which may be a subset of the dataset).
  AngularSweep(const Dataset& data, std::vector<TupleId> members);

  const std::vector<TupleId>& order() const noexcept { return order_; }
  std::size_t position(TupleId id) const { return position_[id]; }
  std::size_t swaps() const noexcept { return swaps_; }
  std::size_t stale_events() const noexcept { return stale_; }

  // Runs the sweep to completion.
  //   on_swap(pos, theta): tuples at pos and pos+1 were just exchanged; the
  //     tuple now at pos+1 was ahead before the swap.
  //   on_settled(theta): all events at angle theta have been applied (called
  //     only for angles where at least one swap happened).
  template <class OnSwap, class OnSettled>
  void run(OnSwap&& on_swap, OnSettled&& on_settled);

  // Angle at which `behind` overtakes `ahead`, given `ahead` currently
  // outranks it; nullopt if it never does within [0, pi/2].
  static std::optional<double> overtake_angle(const Tuple& ahead, const Tuple& behind);

 private:
  struct Event {
    double angle;
    TupleId low;
    TupleId high;
    TupleId ahead;
    TupleId behind;
    bool operator>(const Event& o) const noexcept {
      if (angle != o.angle) return angle > o.angle;
      if (low != o.low) return low > o.low;
      return high > o.high;
    }
  };

  void push_pair(std::size_t pos, double not_before);

  const Dataset* data_;
  std::vector<TupleId> order_;
  std::vector<std::size_t> position_;
  std::priority_queue<Event, std::vector<Event>, std::greater<>> heap_;
  std::size_t swaps_ = 0;
  std::size_t stale_ = 0;
};

template <class OnSwap, class OnSettled>
void AngularSweep::run(OnSwap&& on_swap, OnSettled&& on_settled) {
  bool dirty = false;
  while (!heap_.empty()) {
    const Event ev = heap_.top();
    heap_.pop();
    const std::size_t pa = position_[ev.ahead];
    if (pa + 1 >= order_.size() || order_[pa + 1] != ev.behind) {
      ++stale_;
    } else {
      std::swap(order_[pa], order_[pa + 1]);
      position_[ev.behind] = pa;
      position_[ev.ahead] = pa + 1;
      ++swaps_;
      dirty = true;
      on_swap(pa, ev.angle);
      if (pa > 0) push_pair(pa - 1, ev.angle);
      push_pair(pa + 1, ev.angle);
    }
    if (dirty && (heap_.empty() || heap_.top().angle != ev.angle)) {
      on_settled(ev.angle);
      dirty = false;
    }
  }
}

// Tuples that can ever reach the top-k for some theta: those with fewer than k
// strict dominators. Ascending ids.
std::vector<TupleId> k_skyband_2d(const Dataset& data, std::size_t k);

}  // namespace rrr
