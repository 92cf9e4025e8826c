#pragma once

// Evaluation harness: Monte-Carlo and exact rank-regret, the dual problem
// (smallest k for a size budget) and timed benchmark runs.

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rrr/core.hpp"
#include "rrr/random.hpp"
#include "rrr/solve.hpp"
#include "rrr/types.hpp"

namespace rrr {

inline constexpr std::size_t kDefaultSamples = 10000;

struct DatasetFingerprint {
  std::size_t n = 0;
  std::size_t d = 0;
  std::uint64_t content_hash = 0;  // FNV-1a over the normalized values
};

DatasetFingerprint fingerprint(const Dataset& data);

struct EvaluationReport {
  std::string algorithm;
  std::vector<TupleId> members;
  std::size_t subset_size = 0;
  std::size_t rank_regret = 0;
  bool exact = false;
  std::size_t samples = 0;  // 0 when exact
  double wall_time_seconds = 0.0;
  std::map<std::string, double> parameters;
  std::optional<std::uint64_t> seed;
  DatasetFingerprint dataset;
  bool bound_guaranteed = true;
  std::optional<std::string> error;
};

// Rank-regret of X for one function: the best rank among X's members.
std::size_t rank_regret_for(const Dataset& data, std::span<const TupleId> subset,
                            const LinearFunction& f);

// Max over `samples` functions drawn from rng of rank_regret_for. The function
// stream is drawn serially, so the value does not depend on thread count; the
// OpenMP version and the serial reference agree exactly.
std::size_t estimate_rank_regret(const Dataset& data, std::span<const TupleId> subset,
                                 std::size_t samples, Rng& rng);
std::size_t estimate_rank_regret_serial(const Dataset& data, std::span<const TupleId> subset,
                                        std::size_t samples, Rng& rng);

// Same estimate over an explicit function list.
std::size_t max_rank_regret(const Dataset& data, std::span<const TupleId> subset,
                            std::span<const LinearFunction> functions);
std::size_t max_rank_regret_serial(const Dataset& data, std::span<const TupleId> subset,
                                   std::span<const LinearFunction> functions);

// ceil(pct/100 * n), clamped to [1, n].
std::size_t resolve_k_percent(double percent, std::size_t n);

using Solver = std::function<Representative(const Dataset&, std::size_t k)>;

struct DualResult {
  std::size_t k = 0;
  Representative representative;
};

// Binary search for the smallest k whose solver output fits the size budget.
DualResult dual_problem(const Dataset& data, std::size_t size_budget, const Solver& solver);

struct BenchmarkConfig {
  std::vector<Algorithm> algorithms;
  std::vector<std::size_t> k_values;
  std::vector<std::uint64_t> seeds{0};
  std::size_t samples = kDefaultSamples;
  std::size_t c = 100;
  std::optional<std::size_t> depth_cap;
  KSetSource source = KSetSource::kAuto;
  // 2D rank-regret is computed exactly by sweep up to this n, else estimated.
  std::size_t exact_2d_limit = 20000;
};

// Evaluates a subset the way benchmark reports do (exact in small 2D).
EvaluationReport evaluate_subset(const Dataset& data, std::span<const TupleId> subset,
                                 std::size_t samples, std::uint64_t seed,
                                 std::size_t exact_2d_limit);

std::vector<EvaluationReport> run_benchmark(const Dataset& data, const BenchmarkConfig& config);

}  // namespace rrr
