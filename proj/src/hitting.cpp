#include "rrr/hitting.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <string>

namespace rrr {
namespace {

// Collection re-indexed over its ground set 0..n'-1 (ascending global ids).
struct LocalInstance {
  std::vector<TupleId> ground;
  std::vector<std::vector<std::uint32_t>> sets;
  std::vector<std::vector<std::uint32_t>> sets_of_point;
};

LocalInstance localize(const KSetCollection& collection) {
  if (collection.empty()) throw Error(ErrorCode::kEmptyCollection, "no sets to hit");
  LocalInstance inst;
  inst.ground = collection.ground();
  inst.sets.reserve(collection.size());
  inst.sets_of_point.resize(inst.ground.size());
  for (const KSet& s : collection.sets()) {
    std::vector<std::uint32_t> local;
    local.reserve(s.members.size());
    for (TupleId id : s.members) {
      const auto it = std::lower_bound(inst.ground.begin(), inst.ground.end(), id);
      local.push_back(static_cast<std::uint32_t>(it - inst.ground.begin()));
    }
    const auto set_index = static_cast<std::uint32_t>(inst.sets.size());
    for (std::uint32_t p : local) inst.sets_of_point[p].push_back(set_index);
    inst.sets.push_back(std::move(local));
  }
  return inst;
}

std::vector<TupleId> to_global(const LocalInstance& inst, const std::vector<bool>& chosen) {
  std::vector<TupleId> out;
  for (std::size_t i = 0; i < chosen.size(); ++i) {
    if (chosen[i]) out.push_back(inst.ground[i]);
  }
  return out;
}

// Index of the first set with no chosen member, or sets.size().
std::size_t first_missed(const LocalInstance& inst, const std::vector<bool>& chosen) {
  const auto count = static_cast<std::int64_t>(inst.sets.size());
  std::int64_t first = count;
#pragma omp parallel for reduction(min : first) schedule(static) if (count > 4096)
  for (std::int64_t s = 0; s < count; ++s) {
    bool hit = false;
    for (std::uint32_t p : inst.sets[static_cast<std::size_t>(s)]) {
      if (chosen[p]) {
        hit = true;
        break;
      }
    }
    if (!hit && s < first) first = s;
  }
  return static_cast<std::size_t>(first);
}

bool set_is_hit(const std::vector<std::uint32_t>& set, const std::vector<bool>& chosen) {
  return std::any_of(set.begin(), set.end(), [&](std::uint32_t p) { return chosen[p]; });
}

double log2_total(const std::vector<std::int64_t>& exponents) {
  const std::int64_t top = *std::max_element(exponents.begin(), exponents.end());
  double sum = 0.0;
  for (std::int64_t e : exponents) sum += std::exp2(static_cast<double>(e - top));
  return static_cast<double>(top) + std::log2(sum);
}

// Removes members whose every set is hit by another member, lowest weight
// first (ties: lower id).
void prune(const LocalInstance& inst, const std::vector<std::int64_t>& exponents,
           std::vector<bool>& chosen) {
  std::vector<std::uint32_t> hits(inst.sets.size(), 0);
  for (std::size_t s = 0; s < inst.sets.size(); ++s) {
    for (std::uint32_t p : inst.sets[s]) hits[s] += chosen[p] ? 1 : 0;
  }
  std::vector<std::uint32_t> order;
  for (std::uint32_t p = 0; p < chosen.size(); ++p) {
    if (chosen[p]) order.push_back(p);
  }
  std::stable_sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
    return exponents[a] < exponents[b];
  });
  for (std::uint32_t p : order) {
    const auto& sets = inst.sets_of_point[p];
    const bool redundant =
        std::all_of(sets.begin(), sets.end(), [&](std::uint32_t s) { return hits[s] >= 2; });
    if (!redundant) continue;
    chosen[p] = false;
    for (std::uint32_t s : sets) --hits[s];
  }
}

}  // namespace

std::size_t mdrrr_iteration_budget(std::size_t guess, std::size_t ground_size) {
  const double c = static_cast<double>(std::max<std::size_t>(guess, 1));
  const double ratio = static_cast<double>(ground_size) / c;
  const double log_term = ratio > 1.0 ? std::log2(ratio) : 0.0;
  return static_cast<std::size_t>(std::ceil(4.0 * c * log_term)) + 8;
}

std::size_t epsilon_net_sample_size(double epsilon, std::size_t vc_dimension,
                                    double failure_budget) {
  const double d = static_cast<double>(std::max<std::size_t>(vc_dimension, 1));
  const double a = 8.0 * d / epsilon;
  return static_cast<std::size_t>(std::ceil(a * std::log(a))) +
         static_cast<std::size_t>(std::ceil((4.0 / epsilon) * std::log(1.0 / failure_budget)));
}

std::vector<TupleId> mdrrr(const KSetCollection& collection, Rng& rng,
                           const MdrrrOptions& options, MdrrrStats* stats) {
  const LocalInstance inst = localize(collection);
  const std::size_t n = inst.ground.size();
  MdrrrStats local;
  local.ground_size = n;

  // Weight of point i is 2^exponents[i]; the log-domain form never overflows.
  std::vector<std::int64_t> exponents(n, 0);
  std::vector<bool> chosen(n, false);
  std::vector<double> cumulative(n);
  std::size_t guess = std::max<std::size_t>(options.opt_guess.value_or(1), 1);
  bool done = false;

  while (!done) {
    if (guess >= n) {
      // Any guess this large is satisfied by the ground set itself.
      std::fill(chosen.begin(), chosen.end(), true);
      local.final_guess = guess;
      local.iterations_at_guess = 0;
      local.budget_at_guess = mdrrr_iteration_budget(guess, n);
      break;
    }
    const double epsilon = 1.0 / (2.0 * static_cast<double>(guess));
    const std::size_t net_draws =
        epsilon_net_sample_size(epsilon, options.vc_dimension, options.failure_budget);
    const std::size_t budget = mdrrr_iteration_budget(guess, n);
    local.final_guess = guess;
    local.budget_at_guess = budget;
    local.iterations_at_guess = 0;

    for (std::size_t it = 0; it < budget; ++it) {
      const std::int64_t top = *std::max_element(exponents.begin(), exponents.end());
      double total = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        total += std::exp2(static_cast<double>(exponents[i] - top));
        cumulative[i] = total;
      }
      std::fill(chosen.begin(), chosen.end(), false);
      for (std::size_t draw = 0; draw < net_draws; ++draw) {
        const double u = rng.uniform01() * total;
        auto pos = static_cast<std::size_t>(
            std::lower_bound(cumulative.begin(), cumulative.end(), u) - cumulative.begin());
        chosen[std::min(pos, n - 1)] = true;
      }
      ++local.iterations;
      ++local.iterations_at_guess;
      local.log2_total_weight.push_back(log2_total(exponents));

      const std::size_t miss = first_missed(inst, chosen);
      if (miss == inst.sets.size()) {
        done = true;
        break;
      }
      if (options.double_all_missed) {
        for (std::size_t s = miss; s < inst.sets.size(); ++s) {
          if (set_is_hit(inst.sets[s], chosen)) continue;
          for (std::uint32_t p : inst.sets[s]) ++exponents[p];
          ++local.doublings;
        }
      } else {
        for (std::uint32_t p : inst.sets[miss]) ++exponents[p];
        ++local.doublings;
      }
    }
    if (!done) guess *= 2;
  }

  local.net_size = static_cast<std::size_t>(std::count(chosen.begin(), chosen.end(), true));
  if (options.prune_redundant) prune(inst, exponents, chosen);
  if (stats) *stats = std::move(local);
  return to_global(inst, chosen);
}

std::vector<TupleId> greedy_hitting(const KSetCollection& collection) {
  const LocalInstance inst = localize(collection);
  const std::size_t n = inst.ground.size();
  std::vector<std::size_t> unhit_count(n, 0);
  for (std::size_t p = 0; p < n; ++p) unhit_count[p] = inst.sets_of_point[p].size();
  std::vector<bool> set_hit(inst.sets.size(), false);
  std::vector<bool> chosen(n, false);
  std::size_t remaining = inst.sets.size();
  while (remaining > 0) {
    std::size_t best = 0;
    for (std::size_t p = 1; p < n; ++p) {
      if (unhit_count[p] > unhit_count[best]) best = p;
    }
    chosen[best] = true;
    for (std::uint32_t s : inst.sets_of_point[best]) {
      if (set_hit[s]) continue;
      set_hit[s] = true;
      --remaining;
      for (std::uint32_t q : inst.sets[s]) --unhit_count[q];
    }
  }
  return to_global(inst, chosen);
}

namespace {

class BranchAndBound {
 public:
  BranchAndBound(std::vector<std::uint64_t> sets, std::uint64_t incumbent)
      : sets_(std::move(sets)), best_(incumbent), best_size_(std::popcount(incumbent)) {}

  std::uint64_t solve() {
    search(0, 0);
    return best_;
  }

 private:
  void search(std::uint64_t chosen, int size) {
    // Branch on the unhit set with the fewest members.
    const std::uint64_t* pick = nullptr;
    for (const std::uint64_t& s : sets_) {
      if ((s & chosen) != 0) continue;
      if (!pick || std::popcount(s) < std::popcount(*pick)) pick = &s;
    }
    if (!pick) {
      if (size < best_size_) {
        best_ = chosen;
        best_size_ = size;
      }
      return;
    }
    // Pairwise disjoint unhit sets each need their own member.
    int lower = 0;
    std::uint64_t used = 0;
    for (const std::uint64_t& s : sets_) {
      if ((s & chosen) == 0 && (s & used) == 0) {
        used |= s;
        ++lower;
      }
    }
    if (size + lower >= best_size_) return;
    for (std::uint64_t rest = *pick; rest != 0; rest &= rest - 1) {
      search(chosen | (rest & (~rest + 1)), size + 1);
    }
  }

  std::vector<std::uint64_t> sets_;
  std::uint64_t best_;
  int best_size_;
};

}  // namespace

std::vector<TupleId> exact_hitting(const KSetCollection& collection, std::size_t max_ground) {
  const LocalInstance inst = localize(collection);
  const std::size_t n = inst.ground.size();
  if (n > std::min<std::size_t>(max_ground, 64)) {
    throw Error(ErrorCode::kGroundSetTooLarge,
                "ground set of " + std::to_string(n) + " ids exceeds the exact-solver guard");
  }
  std::vector<std::uint64_t> masks;
  masks.reserve(inst.sets.size());
  for (const auto& s : inst.sets) {
    std::uint64_t m = 0;
    for (std::uint32_t p : s) m |= std::uint64_t{1} << p;
    masks.push_back(m);
  }
  std::sort(masks.begin(), masks.end());
  masks.erase(std::unique(masks.begin(), masks.end()), masks.end());
  // A set containing another set is hit whenever the smaller one is.
  std::vector<std::uint64_t> minimal;
  for (std::uint64_t m : masks) {
    const bool redundant = std::any_of(masks.begin(), masks.end(), [&](std::uint64_t o) {
      return o != m && (o & m) == o;
    });
    if (!redundant) minimal.push_back(m);
  }

  std::uint64_t incumbent = 0;
  for (TupleId id : greedy_hitting(collection)) {
    const auto it = std::lower_bound(inst.ground.begin(), inst.ground.end(), id);
    incumbent |= std::uint64_t{1} << (it - inst.ground.begin());
  }
  const std::uint64_t best = BranchAndBound(std::move(minimal), incumbent).solve();
  std::vector<bool> chosen(n, false);
  for (std::size_t i = 0; i < n; ++i) chosen[i] = ((best >> i) & 1U) != 0;
  return to_global(inst, chosen);
}

bool hits_all(const KSetCollection& collection, std::span<const TupleId> chosen) {
  std::vector<TupleId> sorted(chosen.begin(), chosen.end());
  std::sort(sorted.begin(), sorted.end());
  for (const KSet& s : collection.sets()) {
    const bool hit = std::any_of(s.members.begin(), s.members.end(), [&](TupleId id) {
      return std::binary_search(sorted.begin(), sorted.end(), id);
    });
    if (!hit) return false;
  }
  return true;
}

}  // namespace rrr
