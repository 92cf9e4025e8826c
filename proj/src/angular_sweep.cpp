#include "rrr/angular_sweep.hpp"

#include <algorithm>
#include <cmath>

namespace rrr {

AngularSweep::AngularSweep(const Dataset& data, std::vector<TupleId> members)
    : data_(&data), order_(std::move(members)), position_(data.size(), 0) {
  if (data.dims() != 2) {
    throw Error(ErrorCode::kDimensionNot2D, "angular sweep requires d = 2");
  }
  std::sort(order_.begin(), order_.end(), [&](TupleId a, TupleId b) {
    return outranks(data.at(a, 0), a, data.at(b, 0), b);
  });
  for (std::size_t i = 0; i < order_.size(); ++i) position_[order_[i]] = i;
  for (std::size_t i = 0; i + 1 < order_.size(); ++i) push_pair(i, 0.0);
}

std::optional<double> AngularSweep::overtake_angle(const Tuple& ahead, const Tuple& behind) {
  // g(theta) = f(behind) - f(ahead) = d1 cos(theta) + d2 sin(theta).
  const double d1 = behind.values[0] - ahead.values[0];
  const double d2 = behind.values[1] - ahead.values[1];
  if (d2 > 0.0 && d1 <= 0.0) {
    return d1 == 0.0 ? 0.0 : std::atan2(-d1, d2);
  }
  // Equal x2 and the lower id behind: they tie exactly at pi/2, where the id
  // decides.
  if (d2 == 0.0 && d1 < 0.0 && behind.id < ahead.id) return kHalfPi;
  return std::nullopt;
}

void AngularSweep::push_pair(std::size_t pos, double not_before) {
  if (pos + 1 >= order_.size()) return;
  const TupleId a = order_[pos];
  const TupleId b = order_[pos + 1];
  const auto angle = overtake_angle(data_->tuple(a), data_->tuple(b));
  if (!angle) return;
  // Rounding in atan2 can place a freshly adjacent crossing marginally before
  // the current sweep angle; it cannot happen in the past.
  const double at = std::max(*angle, not_before);
  heap_.push(Event{at, std::min(a, b), std::max(a, b), a, b});
}

std::vector<TupleId> k_skyband_2d(const Dataset& data, std::size_t k) {
  if (data.dims() != 2) throw Error(ErrorCode::kDimensionNot2D, "skyband requires d = 2");
  const std::size_t n = data.size();
  // Count strict dominators (greater in both coordinates) with a Fenwick tree
  // over x2 ranks, inserting in descending x1 one equal-x1 group at a time.
  std::vector<double> ys(n);
  for (TupleId i = 0; i < n; ++i) ys[i] = data.at(i, 1);
  std::vector<double> sorted_ys(ys);
  std::sort(sorted_ys.begin(), sorted_ys.end());
  sorted_ys.erase(std::unique(sorted_ys.begin(), sorted_ys.end()), sorted_ys.end());
  const std::size_t m = sorted_ys.size();
  std::vector<std::size_t> tree(m + 1, 0);
  auto add = [&](std::size_t idx) {
    for (++idx; idx <= m; idx += idx & (~idx + 1)) ++tree[idx];
  };
  auto prefix = [&](std::size_t count) {  // inserted with rank < count
    std::size_t s = 0;
    for (; count > 0; count -= count & (~count + 1)) s += tree[count];
    return s;
  };
  auto rank_of_y = [&](double y) {
    return static_cast<std::size_t>(std::lower_bound(sorted_ys.begin(), sorted_ys.end(), y) -
                                    sorted_ys.begin());
  };

  std::vector<TupleId> by_x(n);
  for (TupleId i = 0; i < n; ++i) by_x[i] = i;
  std::sort(by_x.begin(), by_x.end(), [&](TupleId a, TupleId b) {
    return data.at(a, 0) > data.at(b, 0);
  });

  std::vector<TupleId> out;
  std::size_t inserted = 0;
  for (std::size_t g = 0; g < n;) {
    std::size_t h = g;
    while (h < n && data.at(by_x[h], 0) == data.at(by_x[g], 0)) ++h;
    for (std::size_t i = g; i < h; ++i) {
      const TupleId t = by_x[i];
      const std::size_t dominators = inserted - prefix(rank_of_y(ys[t]) + 1);
      if (dominators < k) out.push_back(t);
    }
    for (std::size_t i = g; i < h; ++i) add(rank_of_y(ys[by_x[i]]));
    inserted += h - g;
    g = h;
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace rrr
