#include "rrr/kset.hpp"

#include <algorithm>
#include <deque>
#include <iostream>
#include <limits>
#include <string>

#include "rrr/simplex.hpp"

namespace rrr {

std::size_t MembersHash::operator()(const std::vector<TupleId>& ids) const noexcept {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (TupleId id : ids) {
    h ^= id;
    h *= 0x100000001b3ULL;
  }
  return static_cast<std::size_t>(h);
}

bool KSetCollection::insert(KSet set) {
  if (!keys_.insert(set.members).second) return false;
  sets_.push_back(std::move(set));
  return true;
}

bool KSetCollection::contains(const std::vector<TupleId>& sorted_members) const {
  return keys_.count(sorted_members) != 0;
}

std::vector<TupleId> KSetCollection::ground() const {
  std::vector<TupleId> all;
  for (const KSet& s : sets_) all.insert(all.end(), s.members.begin(), s.members.end());
  std::sort(all.begin(), all.end());
  all.erase(std::unique(all.begin(), all.end()), all.end());
  return all;
}

std::vector<std::vector<TupleId>> KSetCollection::canonical() const {
  std::vector<std::vector<TupleId>> out;
  out.reserve(sets_.size());
  for (const KSet& s : sets_) out.push_back(s.members);
  std::sort(out.begin(), out.end());
  return out;
}

KSetCheck is_valid_kset(const Dataset& data, std::span<const TupleId> members) {
  const std::size_t n = data.size();
  const std::size_t d = data.dims();
  const std::size_t k = members.size();
  if (k < 1 || k > n) throw Error(ErrorCode::kKOutOfRange, "k-set size outside [1, n]");
  std::vector<bool> inside(n, false);
  for (TupleId t : members) {
    if (t >= n) throw Error(ErrorCode::kKOutOfRange, "member id out of range");
    if (inside[t]) throw Error(ErrorCode::kInvalidConfig, "duplicate member id");
    inside[t] = true;
  }

  KSetCheck check;
  if (k == n) {
    check.valid = true;
    check.witness = LinearFunction(std::vector<double>(d, 1.0 / static_cast<double>(d)));
    check.margin = std::numeric_limits<double>::infinity();
    return check;
  }

  // Variables: v_1..v_d, threshold s, shifted margin delta' = delta + 1.
  const std::size_t nv = d + 2;
  std::vector<double> objective(nv, 0.0);
  objective[d + 1] = 1.0;
  DenseLp lp(nv, std::move(objective));
  {
    std::vector<double> row(nv, 0.0);
    for (std::size_t j = 0; j < d; ++j) row[j] = 1.0;
    lp.add_constraint(std::move(row), 1.0);
  }
  for (TupleId t = 0; t < n; ++t) {
    std::vector<double> row(nv, 0.0);
    const auto x = data.row(t);
    if (inside[t]) {
      for (std::size_t j = 0; j < d; ++j) row[j] = -x[j];
      row[d] = 1.0;
      row[d + 1] = 1.0;
      lp.add_constraint(std::move(row), 1.0);
    } else {
      for (std::size_t j = 0; j < d; ++j) row[j] = x[j];
      row[d] = -1.0;
      lp.add_constraint(std::move(row), 0.0);
    }
  }

  const LpResult res = lp.maximize();
  if (res.status != LpStatus::kOptimal) {
    std::cerr << "warning: k-set LP did not converge; treating set as invalid\n";
    return check;
  }
  double sum = 0.0;
  for (std::size_t j = 0; j < d; ++j) sum += res.x[j];
  if (sum <= 1e-12) return check;

  std::vector<double> w(d);
  for (std::size_t j = 0; j < d; ++j) w[j] = std::max(0.0, res.x[j]) / sum;
  LinearFunction f(std::move(w));
  // The margin is recomputed from the weights so validity rests on a direct
  // certificate rather than on the tableau value.
  double min_in = std::numeric_limits<double>::infinity();
  double max_out = -std::numeric_limits<double>::infinity();
  for (TupleId t = 0; t < n; ++t) {
    const double s = score(data.row(t), f);
    if (inside[t]) {
      min_in = std::min(min_in, s);
    } else {
      max_out = std::max(max_out, s);
    }
  }
  check.margin = min_in - max_out;
  check.valid = check.margin > kKSetMargin;
  if (check.valid) check.witness = std::move(f);
  return check;
}

KSetCollection enumerate_ksets_graph(const Dataset& data, std::size_t k,
                                     GraphEnumerationStats* stats) {
  const std::size_t n = data.size();
  const std::size_t d = data.dims();
  if (k < 1 || k > n) throw Error(ErrorCode::kKOutOfRange, "k outside [1, n]");
  KSetCollection out(k, true);
  GraphEnumerationStats local;

  std::vector<double> axis(d, 0.0);
  axis[0] = 1.0;
  std::vector<TupleId> seed = top_k(data, LinearFunction(axis), k);
  KSetCheck seed_check = is_valid_kset(data, seed);
  ++local.lp_solves;
  // Ties on attribute 1 can make the axis top-k non-separable; fall back to
  // the top-k of generic directions.
  Rng fallback(0);
  for (int attempt = 0; !seed_check.valid && attempt < 1000; ++attempt) {
    seed = top_k(data, sample_function(fallback, d), k);
    seed_check = is_valid_kset(data, seed);
    ++local.lp_solves;
  }
  if (!seed_check.valid) {
    throw Error(ErrorCode::kLpNumericalFailure, "could not find a separable seed k-set");
  }

  std::unordered_set<std::vector<TupleId>, MembersHash> rejected;
  std::deque<std::vector<TupleId>> queue;
  out.insert({seed, seed_check.witness});
  queue.push_back(seed);

  std::vector<bool> inside(n, false);
  while (!queue.empty()) {
    const std::vector<TupleId> current = std::move(queue.front());
    queue.pop_front();
    for (TupleId t : current) inside[t] = true;
    for (TupleId removed : current) {
      for (TupleId added = 0; added < n; ++added) {
        if (inside[added]) continue;
        std::vector<TupleId> next;
        next.reserve(k);
        for (TupleId t : current) {
          if (t != removed) next.push_back(t);
        }
        next.insert(std::upper_bound(next.begin(), next.end(), added), added);
        if (out.contains(next) || rejected.count(next)) continue;
        KSetCheck check = is_valid_kset(data, next);
        ++local.lp_solves;
        if (check.valid) {
          out.insert({next, std::move(check.witness)});
          queue.push_back(std::move(next));
        } else {
          ++local.rejected;
          rejected.insert(std::move(next));
        }
      }
    }
    for (TupleId t : current) inside[t] = false;
  }
  if (stats) *stats = local;
  return out;
}

KSetCollection collect_ksets_random(const Dataset& data, std::size_t k, std::size_t patience,
                                    Rng& rng) {
  if (patience < 1) throw Error(ErrorCode::kInvalidConfig, "termination counter must be >= 1");
  if (k < 1 || k > data.size()) throw Error(ErrorCode::kKOutOfRange, "k outside [1, n]");
  KSetCollection out(k, false);
  std::size_t misses = 0;
  while (misses < patience) {
    LinearFunction f = sample_function(rng, data.dims());
    std::vector<TupleId> members = top_k(data, f, k);
    if (out.insert({std::move(members), std::move(f)})) {
      misses = 0;
    } else {
      ++misses;
    }
  }
  return out;
}

namespace {

KSetCollection union_shards(std::vector<KSetCollection>& parts, std::size_t k) {
  KSetCollection out(k, false);
  for (KSetCollection& part : parts) {
    for (const KSet& s : part.sets()) out.insert(s);
  }
  return out;
}

}  // namespace

KSetCollection collect_ksets_random_sharded(const Dataset& data, std::size_t k,
                                            std::size_t patience, std::uint64_t base_seed,
                                            std::size_t shards) {
  if (shards < 1) throw Error(ErrorCode::kInvalidConfig, "need at least one shard");
  if (patience < 1) throw Error(ErrorCode::kInvalidConfig, "termination counter must be >= 1");
  if (k < 1 || k > data.size()) throw Error(ErrorCode::kKOutOfRange, "k outside [1, n]");
  std::vector<KSetCollection> parts(shards);
  const auto count = static_cast<std::int64_t>(shards);
#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t i = 0; i < count; ++i) {
    Rng rng(derive_seed(base_seed, static_cast<std::uint64_t>(i)));
    parts[static_cast<std::size_t>(i)] = collect_ksets_random(data, k, patience, rng);
  }
  return union_shards(parts, k);
}

KSetCollection collect_ksets_random_sharded_serial(const Dataset& data, std::size_t k,
                                                   std::size_t patience,
                                                   std::uint64_t base_seed, std::size_t shards) {
  if (shards < 1) throw Error(ErrorCode::kInvalidConfig, "need at least one shard");
  std::vector<KSetCollection> parts;
  parts.reserve(shards);
  for (std::size_t i = 0; i < shards; ++i) {
    Rng rng(derive_seed(base_seed, i));
    parts.push_back(collect_ksets_random(data, k, patience, rng));
  }
  return union_shards(parts, k);
}

}  // namespace rrr
