// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "rrr/eval.hpp"
#include "rrr/hitting.hpp"
#include "rrr/kset.hpp"
#include "rrr/mdrc.hpp"
#include "rrr/sweep2d.hpp"

namespace {

using namespace rrr;
using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      if (pass) detail << "first failure: " << what << "; ";
      pass = false;
    }
  }
};

std::string ids(std::span<const TupleId> v) {
  std::string s = "{";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::string("t") + std::to_string(v[i] + 1);
  return s + "}";
}

// Criterion 1: the seven-tuple example.
void toy_exactness(Outcome& o) {
  const Dataset data = oracle::toy();
  const auto r11 = rank_list(data, LinearFunction({1.0, 1.0})).order;
  const auto r10 = rank_list(data, LinearFunction({1.0, 0.0})).order;
  o.require(r11 == std::vector<TupleId>{6, 2, 4, 0, 1, 5, 3}, "ranking under (1,1) " + ids(r11));
  o.require(r10 == std::vector<TupleId>{6, 0, 2, 1, 4, 3, 5}, "ranking under (1,0) " + ids(r10));

  const std::vector<std::vector<TupleId>> expected{{0, 6}, {2, 4}, {2, 6}};
  o.require(enumerate_ksets_2d(data, 2).canonical() == expected, "sweep 2-sets");
  o.require(enumerate_ksets_graph(data, 2).canonical() == expected, "graph 2-sets");
  int agree = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    Rng rng(seed);
    if (collect_ksets_random(data, 2, 100, rng).canonical() == expected) ++agree;
  }
  o.require(agree >= 99, "sampler agreed on " + std::to_string(agree) + "/100 seeds");

  const auto t0 = Clock::now();
  const Representative rep = rrr_2d(data, 2);
  const double secs = seconds_since(t0);
  const std::size_t rr = exact_rank_regret_2d(data, rep.members);
  o.require(rep.members == std::vector<TupleId>{0, 2}, "2drrr output " + ids(rep.members));
  o.require(rr <= 2, "2drrr rank-regret " + std::to_string(rr));
  o.require(secs < 1.0, "2drrr took " + std::to_string(secs) + " s");
  o.detail << "sampler " << agree << "/100, 2drrr " << ids(rep.members) << " rr=" << rr;
}

struct SmallInstance {
  Dataset data;
  std::size_t k;
};

std::vector<SmallInstance> small_instances() {
  std::vector<SmallInstance> out;
  Rng pick(20240501);
  for (std::uint64_t i = 0; i < 50; ++i) {
    const std::size_t d = i % 2 == 0 ? 2 : 3;
    const std::size_t k = 1 + pick.next_u64() % 3;
    const std::size_t n = k + 2 + pick.next_u64() % (12 - k - 1);
    out.push_back({i % 4 < 2 ? oracle::uniform(n, d, 1000 + i)
                             : oracle::anticorrelated(n, d, 1000 + i),
                   k});
  }
  return out;
}

// Criterion 2: graph BFS and the 2D sweep against exhaustive LP validation.
void oracle_equivalence(Outcome& o, const std::vector<SmallInstance>& instances) {
  const auto t0 = Clock::now();
  std::size_t mismatches = 0, total_sets = 0;
  for (std::size_t i = 0; i < instances.size(); ++i) {
    const auto& [data, k] = instances[i];
    const auto truth = oracle::ksets_exhaustive(data, k);
    total_sets += truth.size();
    if (enumerate_ksets_graph(data, k).canonical() != truth) {
      ++mismatches;
      o.require(false, "graph mismatch on instance " + std::to_string(i));
    }
    if (data.dims() == 2 && enumerate_ksets_2d(data, k).canonical() != truth) {
      ++mismatches;
      o.require(false, "sweep mismatch on instance " + std::to_string(i));
    }
  }
  const double secs = seconds_since(t0);
  o.require(secs < 60.0, "took " + std::to_string(secs) + " s");
  o.detail << instances.size() << " instances, " << total_sets << " k-sets, " << mismatches
           << " mismatches, " << secs << " s";
}

// Criterion 3: 2DRRR bound and size.
void rrr2d_guarantees(Outcome& o) {
  std::size_t within_k = 0, size_checked = 0;
  for (std::uint64_t i = 0; i < 200; ++i) {
    Rng pick(derive_seed(7, i));
    const std::size_t n = 20 + pick.next_u64() % 181;
    const std::size_t k = 1 + pick.next_u64() % 10;
    const Dataset data =
        i % 2 == 0 ? oracle::uniform(n, 2, 5000 + i) : oracle::anticorrelated(n, 2, 5000 + i);
    const Representative rep = rrr_2d(data, k);
    const std::size_t rr = exact_rank_regret_2d(data, rep.members);
    o.require(rr <= 2 * k, "instance " + std::to_string(i) + ": rank-regret " +
                               std::to_string(rr) + " > 2k=" + std::to_string(2 * k));
    if (rr <= k) ++within_k;
    if (n <= 50) {
      const KSetCollection sets = enumerate_ksets_2d(data, k);
      if (sets.ground().size() <= 64) {
        const std::size_t opt = exact_hitting(sets, 64).size();
        ++size_checked;
        o.require(rep.members.size() <= opt,
                  "instance " + std::to_string(i) + ": |output|=" +
                      std::to_string(rep.members.size()) + " > optimum " + std::to_string(opt));
      }
    }
  }
  o.detail << "200 datasets, size checked on " << size_checked
           << "; rank-regret <= k on " << within_k << "/200 (reported, not gated)";
}

// Criterion 4: MDRRR over complete collections.
void mdrrr_guarantee(Outcome& o, const std::vector<SmallInstance>& instances) {
  double worst_ratio = 0.0;
  for (std::size_t i = 0; i < instances.size(); ++i) {
    const auto& [data, k] = instances[i];
    const KSetCollection sets = enumerate_ksets_graph(data, k);
    Rng rng(derive_seed(99, i));
    MdrrrOptions opt;
    opt.vc_dimension = data.dims();
    MdrrrStats stats;
    const auto out = mdrrr(sets, rng, opt, &stats);
    const std::size_t best = exact_hitting(sets, 64).size();
    const double bound =
        static_cast<double>(best) *
        (1.0 + static_cast<double>(data.dims()) *
                   std::log(std::max(2.0, static_cast<double>(data.size()))));
    const std::string tag = "instance " + std::to_string(i);
    o.require(hits_all(sets, out), tag + ": a k-set is missed");
    o.require(static_cast<double>(out.size()) <= bound, tag + ": size " +
                                                            std::to_string(out.size()) +
                                                            " over bound");
    o.require(stats.iterations_at_guess <= stats.budget_at_guess,
              tag + ": iteration budget exceeded");
    o.require(stats.final_guess < 2 * best || stats.final_guess == 1,
              tag + ": stopped at guess " + std::to_string(stats.final_guess) + " for optimum " +
                  std::to_string(best));
    worst_ratio = std::max(worst_ratio, static_cast<double>(out.size()) / best);
  }
  o.detail << instances.size() << " collections, worst |output|/optimum = " << worst_ratio;
}

struct MdrcCheck {
  std::size_t rr = 0;
  std::size_t size = 0;
  double secs = 0.0;
};

MdrcCheck run_mdrc(const Dataset& data, std::size_t k, std::uint64_t seed) {
  const auto t0 = Clock::now();
  const MdrcResult result = mdrc(data, k);
  MdrcCheck c;
  c.secs = seconds_since(t0);
  Rng rng(seed);
  c.rr = estimate_rank_regret(data, result.representative.members, kDefaultSamples, rng);
  c.size = result.representative.members.size();
  return c;
}

// Criterion 5: MDRC on 10,000-row synthetic data.
void mdrc_bound(Outcome& o) {
  const std::size_t n = 10000;
  const std::size_t k = resolve_k_percent(1.0, n);
  std::size_t within_k = 0, largest = 0;
  double slowest = 0.0;
  for (std::uint64_t i = 0; i < 20; ++i) {
    const std::size_t d = 2 + i % 3;
    const Dataset data = oracle::uniform(n, d, 9000 + i);
    const MdrcCheck c = run_mdrc(data, k, derive_seed(31, i));
    const std::string tag = "run " + std::to_string(i) + " (d=" + std::to_string(d) + ")";
    o.require(c.rr <= d * k, tag + ": rank-regret " + std::to_string(c.rr));
    o.require(c.size < 40, tag + ": size " + std::to_string(c.size));
    o.require(c.secs < 10.0, tag + ": " + std::to_string(c.secs) + " s");
    if (c.rr <= k) ++within_k;
    largest = std::max(largest, c.size);
    slowest = std::max(slowest, c.secs);
  }
  o.require(within_k >= 18, "rank-regret <= k on only " + std::to_string(within_k) + "/20");
  o.detail << "rank-regret <= k on " << within_k << "/20, largest output " << largest
           << ", slowest run " << slowest << " s";
}

// Criterion 6: ranks along the segment between two functions.
void rank_bound(Outcome& o) {
  Rng rng(606);
  std::size_t violations = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t d = 2 + static_cast<std::size_t>(trial % 4);
    const Dataset data = oracle::uniform(60, d, derive_seed(606, trial));
    const auto t = static_cast<TupleId>(rng.next_u64() % data.size());
    const LinearFunction f = sample_function(rng, d);
    const LinearFunction g = sample_function(rng, d);
    const double lambda = rng.uniform01();
    std::vector<double> w(d);
    for (std::size_t j = 0; j < d; ++j) w[j] = lambda * f[j] + (1.0 - lambda) * g[j];
    const std::size_t k1 = rank_of(data, f, t);
    const std::size_t k2 = rank_of(data, g, t);
    if (rank_of(data, LinearFunction(w), t) > k1 + k2) ++violations;
  }
  o.require(violations == 0, std::to_string(violations) + " violations");
  o.detail << "1000 triples, " << violations << " violations";
}

// Criterion 7: uniformity of sampled 2D directions.
void sampler_uniformity(Outcome& o) {
  Rng rng(77);
  std::vector<double> angles;
  for (const auto& f : sample_functions(rng, 2, 10000)) angles.push_back(std::atan2(f[1], f[0]));
  const double ks = oracle::ks_uniform(angles, 0.0, kHalfPi);
  o.require(ks < 0.02, "KS statistic " + std::to_string(ks));
  o.detail << "KS statistic " << ks;
}

// Criterion 8: 100,000 rows.
void scale_sanity(Outcome& o) {
  const std::size_t n = 100000;
  const std::size_t k = resolve_k_percent(1.0, n);
  const Dataset d3 = oracle::uniform(n, 3, 8080);
  const MdrcCheck c = run_mdrc(d3, k, 8081);
  o.require(c.secs < 60.0, "mdrc took " + std::to_string(c.secs) + " s");
  o.require(c.rr <= 3 * k, "mdrc rank-regret " + std::to_string(c.rr));
  o.require(c.size < 40, "mdrc size " + std::to_string(c.size));

  const Dataset d2 = oracle::uniform(n, 2, 8082);
  const auto t0 = Clock::now();
  const Representative rep = rrr_2d(d2, k);
  const double secs = seconds_since(t0);
  o.require(secs < 1800.0, "2drrr took " + std::to_string(secs) + " s");
  o.detail << "mdrc " << c.secs << " s (size " << c.size << ", rank-regret " << c.rr
           << "), 2drrr " << secs << " s (size " << rep.members.size() << ")";
}

}  // namespace

int main() {
  const auto instances = small_instances();
  const std::vector<std::pair<std::string, std::function<void(Outcome&)>>> criteria{
      {"toy exactness", toy_exactness},
      {"oracle equivalence", [&](Outcome& o) { oracle_equivalence(o, instances); }},
      {"2drrr guarantees", rrr2d_guarantees},
      {"mdrrr guarantee", [&](Outcome& o) { mdrrr_guarantee(o, instances); }},
      {"mdrc bound", mdrc_bound},
      {"rank-bound check", rank_bound},
      {"sampler uniformity", sampler_uniformity},
      {"scale sanity", scale_sanity},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    const auto t0 = Clock::now();
    try {
      criteria[i].second(o);
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    std::printf("criterion %zu %-20s %s  [%.2fs] %s\n", i + 1, criteria[i].first.c_str(),
                o.pass ? "PASS" : "FAIL", seconds_since(t0), o.detail.str().c_str());
    std::fflush(stdout);
    if (!o.pass) ++failed;
  }
  return failed == 0 ? 0 : 1;
}
