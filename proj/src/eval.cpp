#include "rrr/eval.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstring>
#include <string>

#include "rrr/sweep2d.hpp"

namespace rrr {
namespace {

void validate_subset(const Dataset& data, std::span<const TupleId> subset) {
  if (subset.empty()) throw Error(ErrorCode::kEmptySubset, "subset is empty");
  for (TupleId t : subset) {
    if (t >= data.size()) {
      throw Error(ErrorCode::kKOutOfRange, "subset id " + std::to_string(t) + " out of range");
    }
  }
}

// Rank of the best subset member in one O(n d) pass, no allocation.
std::size_t best_rank(const Dataset& data, std::span<const TupleId> subset,
                      const LinearFunction& f) {
  const std::size_t d = data.dims();
  const double* v = data.values().data();
  const auto w = f.weights();
  auto score_of = [&](std::size_t i) {
    double s = 0.0;
    for (std::size_t j = 0; j < d; ++j) s += w[j] * v[i * d + j];
    return s;
  };
  TupleId best = subset.front();
  double best_score = score_of(best);
  for (TupleId t : subset.subspan(1)) {
    const double s = score_of(t);
    if (outranks(s, t, best_score, best)) {
      best = t;
      best_score = s;
    }
  }
  std::size_t better = 0;
  const std::size_t n = data.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (outranks(score_of(i), static_cast<TupleId>(i), best_score, best)) ++better;
  }
  return better + 1;
}

}  // namespace

DatasetFingerprint fingerprint(const Dataset& data) {
  DatasetFingerprint fp{data.size(), data.dims(), 0xcbf29ce484222325ULL};
  for (double v : data.values()) {
    unsigned char bytes[sizeof(double)];
    std::memcpy(bytes, &v, sizeof v);
    for (unsigned char b : bytes) {
      fp.content_hash ^= b;
      fp.content_hash *= 0x100000001b3ULL;
    }
  }
  return fp;
}

std::size_t rank_regret_for(const Dataset& data, std::span<const TupleId> subset,
                            const LinearFunction& f) {
  validate_subset(data, subset);
  if (f.dims() != data.dims()) {
    throw Error(ErrorCode::kDimensionMismatch, "function and dataset dimensions differ");
  }
  return best_rank(data, subset, f);
}

std::size_t max_rank_regret(const Dataset& data, std::span<const TupleId> subset,
                            std::span<const LinearFunction> functions) {
  validate_subset(data, subset);
  for (const auto& f : functions) {
    if (f.dims() != data.dims()) {
      throw Error(ErrorCode::kDimensionMismatch, "function and dataset dimensions differ");
    }
  }
  std::size_t worst = 0;
  const auto count = static_cast<std::int64_t>(functions.size());
#pragma omp parallel for reduction(max : worst) schedule(static)
  for (std::int64_t i = 0; i < count; ++i) {
    worst = std::max(worst, best_rank(data, subset, functions[static_cast<std::size_t>(i)]));
  }
  return worst;
}

std::size_t max_rank_regret_serial(const Dataset& data, std::span<const TupleId> subset,
                                   std::span<const LinearFunction> functions) {
  validate_subset(data, subset);
  std::size_t worst = 0;
  for (const auto& f : functions) worst = std::max(worst, rank_regret_for(data, subset, f));
  return worst;
}

std::size_t estimate_rank_regret(const Dataset& data, std::span<const TupleId> subset,
                                 std::size_t samples, Rng& rng) {
  validate_subset(data, subset);
  if (samples < 1) throw Error(ErrorCode::kInvalidConfig, "need at least one sample");
  const auto functions = sample_functions(rng, data.dims(), samples);
  return max_rank_regret(data, subset, functions);
}

std::size_t estimate_rank_regret_serial(const Dataset& data, std::span<const TupleId> subset,
                                        std::size_t samples, Rng& rng) {
  validate_subset(data, subset);
  if (samples < 1) throw Error(ErrorCode::kInvalidConfig, "need at least one sample");
  const auto functions = sample_functions(rng, data.dims(), samples);
  return max_rank_regret_serial(data, subset, functions);
}

std::size_t resolve_k_percent(double percent, std::size_t n) {
  if (!(percent > 0.0) || percent > 100.0) {
    throw Error(ErrorCode::kKOutOfRange, "k percentage must be in (0, 100]");
  }
  // Round away representation noise (e.g. 1% of 700 = 7.000000000000001)
  // before taking the ceiling.
  const double exact = percent / 100.0 * static_cast<double>(n);
  const double k = std::ceil(exact - 1e-9 * std::max(1.0, exact));
  return std::clamp<std::size_t>(static_cast<std::size_t>(k), 1, n);
}

DualResult dual_problem(const Dataset& data, std::size_t size_budget, const Solver& solver) {
  const std::size_t n = data.size();
  if (size_budget < 1 || size_budget > n) {
    throw Error(ErrorCode::kInvalidConfig, "size budget outside [1, n]");
  }
  std::size_t lo = 1;
  std::size_t hi = n;
  DualResult best{n, solver(data, n)};
  while (lo < hi) {
    const std::size_t mid = lo + (hi - lo) / 2;
    Representative rep = solver(data, mid);
    if (rep.members.size() <= size_budget) {
      hi = mid;
      best = {mid, std::move(rep)};
    } else {
      lo = mid + 1;
    }
  }
  return best;
}

EvaluationReport evaluate_subset(const Dataset& data, std::span<const TupleId> subset,
                                 std::size_t samples, std::uint64_t seed,
                                 std::size_t exact_2d_limit) {
  EvaluationReport report;
  report.members.assign(subset.begin(), subset.end());
  report.subset_size = subset.size();
  report.dataset = fingerprint(data);
  if (data.dims() == 2 && data.size() <= exact_2d_limit) {
    report.rank_regret = exact_rank_regret_2d(data, subset);
    report.exact = true;
  } else {
    Rng rng(seed);
    report.rank_regret = estimate_rank_regret(data, subset, samples, rng);
    report.samples = samples;
  }
  return report;
}

std::vector<EvaluationReport> run_benchmark(const Dataset& data, const BenchmarkConfig& config) {
  std::vector<EvaluationReport> reports;
  for (Algorithm algorithm : config.algorithms) {
    for (std::size_t k : config.k_values) {
      for (std::uint64_t seed : config.seeds) {
        EvaluationReport report;
        report.algorithm = std::string(to_string(algorithm));
        report.seed = seed;
        report.dataset = fingerprint(data);
        report.parameters["k"] = static_cast<double>(k);
        try {
          SolveConfig sc;
          sc.algorithm = algorithm;
          sc.k = k;
          sc.source = config.source;
          sc.c = config.c;
          sc.seed = seed;
          sc.depth_cap = config.depth_cap;
          const auto start = std::chrono::steady_clock::now();
          const Representative rep = solve(data, sc);
          const auto stop = std::chrono::steady_clock::now();
          EvaluationReport eval = evaluate_subset(data, rep.members, config.samples,
                                                  derive_seed(seed, 7), config.exact_2d_limit);
          eval.algorithm = report.algorithm;
          eval.seed = seed;
          eval.parameters = rep.params;
          eval.bound_guaranteed = rep.bound_guaranteed;
          eval.wall_time_seconds = std::chrono::duration<double>(stop - start).count();
          report = std::move(eval);
        } catch (const std::exception& e) {
          report.error = e.what();
        }
        reports.push_back(std::move(report));
      }
    }
  }
  return reports;
}

}  // namespace rrr
