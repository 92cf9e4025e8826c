#pragma once

// k-set machinery for any d >= 2: LP validity test, exact enumeration by BFS
// over the k-set graph, and the randomized coupon-collector sampler.

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "rrr/core.hpp"
#include "rrr/random.hpp"
#include "rrr/types.hpp"

namespace rrr {

// Minimum separation margin (for unit-sum weights) for a set to count as a
// k-set.
inline constexpr double kKSetMargin = 1e-7;

struct KSetCheck {
  bool valid = false;
  // Unit-sum weights maximizing min_{t in S} w.t - max_{t not in S} w.t.
  std::optional<LinearFunction> witness;
  double margin = 0.0;
};

// Solves  max delta  s.t.  v.t >= s + delta (t in S),  v.t <= s (t not in S),
// sum v = 1, v >= 0.  S is valid iff the optimal delta exceeds kKSetMargin.
// A solver failure is reported as invalid (with a warning on stderr).
KSetCheck is_valid_kset(const Dataset& data, std::span<const TupleId> members);

struct GraphEnumerationStats {
  std::size_t lp_solves = 0;
  std::size_t rejected = 0;
};

// BFS over the k-set graph from the top-k on attribute 1; neighbours are
// produced in ascending (removed id, added id) order.
KSetCollection enumerate_ksets_graph(const Dataset& data, std::size_t k,
                                     GraphEnumerationStats* stats = nullptr);

// Draws sample functions and keeps their top-k sets until `patience`
// consecutive draws produce nothing new.
KSetCollection collect_ksets_random(const Dataset& data, std::size_t k, std::size_t patience,
                                    Rng& rng);

// `shards` independent collectors with seeds derive_seed(base_seed, shard),
// unioned in shard order. The OpenMP version runs shards concurrently; the
// serial version is the reference and yields the identical collection.
KSetCollection collect_ksets_random_sharded(const Dataset& data, std::size_t k,
                                            std::size_t patience, std::uint64_t base_seed,
                                            std::size_t shards);
KSetCollection collect_ksets_random_sharded_serial(const Dataset& data, std::size_t k,
                                                   std::size_t patience,
                                                   std::uint64_t base_seed, std::size_t shards);

}  // namespace rrr
