#pragma once

// Algorithm dispatch shared by the evaluation harness and the CLI.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "rrr/core.hpp"
#include "rrr/types.hpp"

namespace rrr {

enum class Algorithm { k2drrr, kMdrrr, kMdrc };
enum class KSetSource { kAuto, kSweep2d, kGraph, kRandom };

Algorithm parse_algorithm(std::string_view name);
KSetSource parse_kset_source(std::string_view name);
std::string_view to_string(Algorithm a);
std::string_view to_string(KSetSource s);

struct SolveConfig {
  Algorithm algorithm = Algorithm::kMdrc;
  std::size_t k = 1;
  KSetSource source = KSetSource::kAuto;  // mdrrr only
  std::size_t c = 100;                    // sampler termination counter
  std::uint64_t seed = 0;
  std::optional<std::size_t> depth_cap;  // mdrc only
  std::size_t shards = 1;                // sampler shards (random source)
};

// kAuto resolves to the 2D sweep for d = 2 and the sampler otherwise.
KSetSource resolve_source(KSetSource source, std::size_t dims);

KSetCollection collect_ksets(const Dataset& data, std::size_t k, KSetSource source,
                             std::size_t c, std::uint64_t seed, std::size_t shards = 1);

Representative solve(const Dataset& data, const SolveConfig& config);

}  // namespace rrr
