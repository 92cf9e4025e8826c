#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <unordered_set>
#include <vector>

#include "rrr/core.hpp"

namespace rrr {

// A possible top-k outcome. Members are kept sorted ascending.
struct KSet {
  std::vector<TupleId> members;
  std::optional<LinearFunction> witness;
};

struct MembersHash {
  std::size_t operator()(const std::vector<TupleId>& ids) const noexcept;
};

// Deduplicated collection of k-sets, in insertion order. `complete` is true
// for exact enumerations and false for sampled ones.
class KSetCollection {
 public:
  KSetCollection() = default;
  KSetCollection(std::size_t k, bool complete) : k_(k), complete_(complete) {}

  std::size_t k() const noexcept { return k_; }
  bool complete() const noexcept { return complete_; }
  void set_complete(bool c) noexcept { complete_ = c; }

  // Returns false (and drops the set) when the member list is already present.
  bool insert(KSet set);
  bool contains(const std::vector<TupleId>& sorted_members) const;

  std::span<const KSet> sets() const noexcept { return sets_; }
  std::size_t size() const noexcept { return sets_.size(); }
  bool empty() const noexcept { return sets_.empty(); }

  // Union of all members, ascending.
  std::vector<TupleId> ground() const;

  // Member lists as a canonical sorted list, for order-insensitive comparison.
  std::vector<std::vector<TupleId>> canonical() const;

 private:
  std::size_t k_ = 0;
  bool complete_ = false;
  std::vector<KSet> sets_;
  std::unordered_set<std::vector<TupleId>, MembersHash> keys_;
};

// Output of an RRR solver plus the provenance needed to reproduce it.
struct Representative {
  std::string algorithm;
  std::vector<TupleId> members;  // ascending, deduplicated
  std::map<std::string, double> params;
  std::map<std::string, std::string> tags;  // non-numeric settings, e.g. kset_source
  std::optional<std::uint64_t> seed;
  bool bound_guaranteed = true;
  std::vector<std::string> warnings;
};

}  // namespace rrr
