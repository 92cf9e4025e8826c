#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "rrr/random.hpp"
#include "rrr/types.hpp"

namespace rrr {

struct MdrrrOptions {
  // VC dimension of the range space; for k-sets this is the attribute count.
  std::size_t vc_dimension = 2;
  // Starting guess for the optimum size; doubled on every failed round.
  std::optional<std::size_t> opt_guess;
  // Per-net failure probability budget in the net-size formula.
  double failure_budget = 0.1;
  // Double every missed set per round instead of only the first one.
  bool double_all_missed = false;
  // Drop redundant members (lowest weight first) from the final hitting set.
  bool prune_redundant = true;
};

struct MdrrrStats {
  std::size_t ground_size = 0;
  std::size_t final_guess = 0;
  std::size_t iterations = 0;           // nets drawn, over all guesses
  std::size_t iterations_at_guess = 0;  // nets drawn at the final guess
  std::size_t budget_at_guess = 0;      // iteration budget of the final guess
  std::size_t net_size = 0;             // distinct points in the successful net
  std::size_t doublings = 0;
  // log2 of the total ground weight after each net (non-decreasing).
  std::vector<double> log2_total_weight;
};

// Iteration budget for guess c over a ground set of size n': 4c log2(n'/c) + 8.
std::size_t mdrrr_iteration_budget(std::size_t guess, std::size_t ground_size);

// Sample count (with replacement) of a weighted epsilon-net.
std::size_t epsilon_net_sample_size(double epsilon, std::size_t vc_dimension,
                                    double failure_budget);

// Weighted epsilon-net hitting set (weight doubling). Every returned set of
// ids intersects every set in the collection.
std::vector<TupleId> mdrrr(const KSetCollection& collection, Rng& rng,
                           const MdrrrOptions& options = {}, MdrrrStats* stats = nullptr);

// Repeatedly takes the id contained in the most unhit sets (ties: smaller id).
std::vector<TupleId> greedy_hitting(const KSetCollection& collection);

// Minimum-cardinality hitting set by branch and bound.
std::vector<TupleId> exact_hitting(const KSetCollection& collection,
                                   std::size_t max_ground = 25);

bool hits_all(const KSetCollection& collection, std::span<const TupleId> chosen);

}  // namespace rrr
