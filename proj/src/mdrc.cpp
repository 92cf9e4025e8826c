#include "rrr/mdrc.hpp"

#include <algorithm>
#include <cstdint>
#include <cstring>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <unordered_map>

namespace rrr {

HyperRectangle HyperRectangle::root(std::size_t dims) {
  HyperRectangle box;
  box.ranges.assign(dims - 1, {0.0, kHalfPi});
  return box;
}

std::pair<HyperRectangle, HyperRectangle> HyperRectangle::bisect() const {
  const std::size_t axis = split_axis();
  const double mid = 0.5 * (ranges[axis].first + ranges[axis].second);
  HyperRectangle lo = *this;
  HyperRectangle hi = *this;
  lo.ranges[axis].second = mid;
  hi.ranges[axis].first = mid;
  lo.level = hi.level = level + 1;
  return {std::move(lo), std::move(hi)};
}

AngleVector HyperRectangle::centroid() const {
  AngleVector a;
  for (const auto& [lo, hi] : ranges) a.angles.push_back(0.5 * (lo + hi));
  return a;
}

std::vector<AngleVector> corners(const HyperRectangle& box) {
  const std::size_t m = box.ranges.size();
  std::vector<AngleVector> out;
  out.reserve(std::size_t{1} << m);
  for (std::size_t mask = 0; mask < (std::size_t{1} << m); ++mask) {
    AngleVector a;
    a.angles.resize(m);
    for (std::size_t i = 0; i < m; ++i) {
      const bool upper = ((mask >> (m - 1 - i)) & 1U) != 0;
      a.angles[i] = upper ? box.ranges[i].second : box.ranges[i].first;
    }
    out.push_back(std::move(a));
  }
  return out;
}

std::vector<const MdrcNode*> MdrcResult::leaves() const {
  std::vector<const MdrcNode*> out;
  std::vector<const MdrcNode*> stack;
  if (tree) stack.push_back(tree.get());
  while (!stack.empty()) {
    const MdrcNode* node = stack.back();
    stack.pop_back();
    if (node->is_leaf()) {
      out.push_back(node);
    } else {
      stack.push_back(node->right.get());
      stack.push_back(node->left.get());
    }
  }
  return out;
}

std::size_t default_depth_cap(std::size_t dims) { return 48 * (dims - 1); }

namespace {

// Every tuple scoring at least the k-th best score, ascending ids. Equal to
// top_k when the k-th score is unique.
std::vector<TupleId> top_k_with_ties(const Dataset& data, const LinearFunction& f, std::size_t k) {
  const std::vector<double> s = scores(data, f);
  std::vector<double> sorted = s;
  std::nth_element(sorted.begin(), sorted.begin() + static_cast<long>(k - 1), sorted.end(),
                   std::greater<>());
  const double kth = sorted[k - 1];
  std::vector<TupleId> out;
  for (TupleId i = 0; i < s.size(); ++i) {
    if (s[i] >= kth) out.push_back(i);
  }
  return out;
}

struct AngleKeyHash {
  std::size_t operator()(const std::vector<double>& key) const noexcept {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (double v : key) {
      std::uint64_t bits;
      std::memcpy(&bits, &v, sizeof bits);
      h ^= bits;
      h *= 0x100000001b3ULL;
    }
    return static_cast<std::size_t>(h);
  }
};

// Corner top-k memo. Children share corners with their parent, so most
// lookups hit. Values are a pure function of the key, so a lost insert race
// only wastes one evaluation.
class CornerCache {
 public:
  using Entry = std::shared_ptr<const std::vector<TupleId>>;

  CornerCache(const Dataset& data, std::size_t k) : data_(data), k_(k) {}

  Entry get(const AngleVector& corner) {
    {
      std::shared_lock lock(mutex_);
      auto it = map_.find(corner.angles);
      if (it != map_.end()) return it->second;
    }
    auto value = std::make_shared<const std::vector<TupleId>>(
        top_k_with_ties(data_, angles_to_weights(corner), k_));
    std::unique_lock lock(mutex_);
    return map_.try_emplace(corner.angles, std::move(value)).first->second;
  }

  std::size_t size() const {
    std::shared_lock lock(mutex_);
    return map_.size();
  }

 private:
  const Dataset& data_;
  std::size_t k_;
  mutable std::shared_mutex mutex_;
  std::unordered_map<std::vector<double>, Entry, AngleKeyHash> map_;
};

struct Context {
  const Dataset& data;
  CornerCache cache;
};

std::optional<TupleId> first_common(Context& ctx, const HyperRectangle& box) {
  const auto cs = corners(box);
  std::vector<TupleId> common = *ctx.cache.get(cs.front());
  std::vector<TupleId> scratch;
  for (std::size_t i = 1; i < cs.size() && !common.empty(); ++i) {
    const auto next = ctx.cache.get(cs[i]);
    scratch.clear();
    std::set_intersection(common.begin(), common.end(), next->begin(), next->end(),
                          std::back_inserter(scratch));
    common.swap(scratch);
  }
  if (common.empty()) return std::nullopt;
  return common.front();
}

template <class Fn>
void for_each_index(std::size_t count, bool parallel, Fn&& fn) {
  const auto m = static_cast<std::int64_t>(count);
  if (parallel) {
#pragma omp parallel for schedule(dynamic, 4)
    for (std::int64_t i = 0; i < m; ++i) fn(static_cast<std::size_t>(i));
  } else {
    for (std::int64_t i = 0; i < m; ++i) fn(static_cast<std::size_t>(i));
  }
}

MdrcResult run(const Dataset& data, std::size_t k, const MdrcOptions& options, bool parallel) {
  const std::size_t d = data.dims();
  if (d < 2) throw Error(ErrorCode::kDimensionMismatch, "mdrc needs d >= 2");
  if (k < 1 || k > data.size()) throw Error(ErrorCode::kKOutOfRange, "k outside [1, n]");
  if (options.max_boxes < 1) throw Error(ErrorCode::kInvalidConfig, "box budget must be >= 1");
  const std::size_t depth_cap = options.depth_cap.value_or(default_depth_cap(d));
  Context ctx{data, CornerCache(data, k)};

  MdrcResult result;
  result.tree = std::make_unique<MdrcNode>();
  result.tree->box = HyperRectangle::root(d);
  std::vector<MdrcNode*> frontier{result.tree.get()};
  std::size_t boxes = 1;
  std::size_t capped = 0;
  std::vector<std::optional<TupleId>> found;

  while (!frontier.empty()) {
    found.assign(frontier.size(), std::nullopt);
    for_each_index(frontier.size(), parallel,
                   [&](std::size_t i) { found[i] = first_common(ctx, frontier[i]->box); });

    std::vector<MdrcNode*> open;
    for (std::size_t i = 0; i < frontier.size(); ++i) {
      if (found[i]) {
        frontier[i]->assigned = found[i];
      } else {
        open.push_back(frontier[i]);
      }
    }
    if (open.empty()) break;

    const std::size_t level = open.front()->box.level;
    if (level >= depth_cap || boxes + 2 * open.size() > options.max_boxes) {
      for_each_index(open.size(), parallel, [&](std::size_t i) {
        const LinearFunction f = angles_to_weights(open[i]->box.centroid());
        open[i]->assigned = top_k(data, f, 1).front();
        open[i]->bound_guaranteed = false;
      });
      capped = open.size();
      break;
    }

    frontier.clear();
    for (MdrcNode* node : open) {
      auto [lo, hi] = node->box.bisect();
      node->left = std::make_unique<MdrcNode>();
      node->left->box = std::move(lo);
      node->right = std::make_unique<MdrcNode>();
      node->right->box = std::move(hi);
      frontier.push_back(node->left.get());
      frontier.push_back(node->right.get());
    }
    boxes += 2 * open.size();
  }
  result.topk_evaluations = ctx.cache.size();

  Representative& rep = result.representative;
  rep.algorithm = "mdrc";
  rep.params["k"] = static_cast<double>(k);
  rep.params["depth_cap"] = static_cast<double>(depth_cap);
  rep.params["boxes"] = static_cast<double>(boxes);
  for (const MdrcNode* leaf : result.leaves()) rep.members.push_back(*leaf->assigned);
  std::sort(rep.members.begin(), rep.members.end());
  rep.members.erase(std::unique(rep.members.begin(), rep.members.end()), rep.members.end());
  if (capped > 0) {
    rep.bound_guaranteed = false;
    rep.warnings.push_back(std::to_string(capped) +
                           " box(es) unresolved at the depth cap or box budget; each takes its "
                           "centroid top-1");
  }
  return result;
}

}  // namespace

MdrcResult mdrc(const Dataset& data, std::size_t k, const MdrcOptions& options) {
  return run(data, k, options, true);
}

MdrcResult mdrc_serial(const Dataset& data, std::size_t k, const MdrcOptions& options) {
  return run(data, k, options, false);
}

}  // namespace rrr
