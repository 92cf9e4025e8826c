#include "rrr/solve.hpp"

#include <string>

#include "rrr/hitting.hpp"
#include "rrr/kset.hpp"
#include "rrr/mdrc.hpp"
#include "rrr/random.hpp"
#include "rrr/sweep2d.hpp"

namespace rrr {

Algorithm parse_algorithm(std::string_view name) {
  if (name == "2drrr") return Algorithm::k2drrr;
  if (name == "mdrrr") return Algorithm::kMdrrr;
  if (name == "mdrc") return Algorithm::kMdrc;
  throw Error(ErrorCode::kInvalidConfig, "unknown algorithm '" + std::string(name) + "'");
}

KSetSource parse_kset_source(std::string_view name) {
  if (name == "auto") return KSetSource::kAuto;
  if (name == "sweep2d") return KSetSource::kSweep2d;
  if (name == "graph") return KSetSource::kGraph;
  if (name == "random") return KSetSource::kRandom;
  throw Error(ErrorCode::kInvalidConfig, "unknown k-set source '" + std::string(name) + "'");
}

std::string_view to_string(Algorithm a) {
  switch (a) {
    case Algorithm::k2drrr: return "2drrr";
    case Algorithm::kMdrrr: return "mdrrr";
    case Algorithm::kMdrc: return "mdrc";
  }
  return "?";
}

std::string_view to_string(KSetSource s) {
  switch (s) {
    case KSetSource::kAuto: return "auto";
    case KSetSource::kSweep2d: return "sweep2d";
    case KSetSource::kGraph: return "graph";
    case KSetSource::kRandom: return "random";
  }
  return "?";
}

KSetSource resolve_source(KSetSource source, std::size_t dims) {
  if (source != KSetSource::kAuto) return source;
  return dims == 2 ? KSetSource::kSweep2d : KSetSource::kRandom;
}

KSetCollection collect_ksets(const Dataset& data, std::size_t k, KSetSource source,
                             std::size_t c, std::uint64_t seed, std::size_t shards) {
  switch (resolve_source(source, data.dims())) {
    case KSetSource::kSweep2d:
      return enumerate_ksets_2d(data, k);
    case KSetSource::kGraph:
      return enumerate_ksets_graph(data, k);
    case KSetSource::kRandom:
      if (shards <= 1) {
        Rng rng(seed);
        return collect_ksets_random(data, k, c, rng);
      }
      return collect_ksets_random_sharded(data, k, c, seed, shards);
    case KSetSource::kAuto:
      break;
  }
  throw Error(ErrorCode::kInvalidConfig, "unresolved k-set source");
}

Representative solve(const Dataset& data, const SolveConfig& config) {
  const std::size_t n = data.size();
  if (config.k < 1 || config.k > n) {
    throw Error(ErrorCode::kKOutOfRange,
                "k=" + std::to_string(config.k) + " outside [1," + std::to_string(n) + "]");
  }
  switch (config.algorithm) {
    case Algorithm::k2drrr:
      return rrr_2d(data, config.k);
    case Algorithm::kMdrc: {
      MdrcOptions options;
      options.depth_cap = config.depth_cap;
      return mdrc(data, config.k, options).representative;
    }
    case Algorithm::kMdrrr: {
      const KSetSource source = resolve_source(config.source, data.dims());
      const KSetCollection collection =
          collect_ksets(data, config.k, source, config.c, config.seed, config.shards);
      MdrrrOptions options;
      options.vc_dimension = data.dims();
      Rng rng(derive_seed(config.seed, 1));
      Representative rep;
      rep.algorithm = "mdrrr";
      rep.members = mdrrr(collection, rng, options);
      rep.params["k"] = static_cast<double>(config.k);
      rep.params["ksets"] = static_cast<double>(collection.size());
      if (source == KSetSource::kRandom) {
        rep.params["c"] = static_cast<double>(config.c);
        rep.params["shards"] = static_cast<double>(config.shards);
        rep.bound_guaranteed = false;
        rep.warnings.push_back("sampled k-sets: rank-regret bound holds only for found sets");
      }
      rep.tags["kset_source"] = std::string(to_string(source));
      rep.seed = config.seed;
      return rep;
    }
  }
  throw Error(ErrorCode::kInvalidConfig, "unknown algorithm");
}

}  // namespace rrr
