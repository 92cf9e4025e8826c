#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "rrr/eval.hpp"
#include "rrr/io.hpp"
#include "rrr/kset.hpp"
#include "rrr/mdrc.hpp"
#include "rrr/solve.hpp"

namespace {

using nlohmann::json;

struct InputOptions {
  std::string path;
  std::string cols;
  std::string dirs;
  std::string delim;
  bool raw = false;
};

struct KOptions {
  std::optional<std::size_t> k;
  std::optional<double> k_pct;
};

struct RunOptions {
  InputOptions input;
  KOptions k;
  std::optional<std::uint64_t> seed;
  std::string algo = "mdrc";
  std::string source = "auto";
  std::size_t c = 100;
  std::size_t samples = rrr::kDefaultSamples;
  std::optional<std::size_t> depth_cap;
  std::size_t shards = 1;
  std::string out;
  std::string tree;
  bool no_eval = false;
  std::size_t exact_limit = 20000;
  // eval
  std::string members;
  std::string rep_path;
  // dual
  std::size_t budget = 1;
  // bench
  std::string algos = "2drrr,mdrrr,mdrc";
  std::string k_list;
  std::string k_pct_list;
  std::string seeds;
  std::string jsonl;
  std::string csv;
};

void add_input(CLI::App* app, InputOptions& in) {
  app->add_option("input", in.path, "Delimited text file with a header row")->required();
  app->add_option("--cols", in.cols, "Comma-separated column names (default: all)");
  app->add_option("--dirs", in.dirs, "Per-column preference: hi/lo (one value applies to all)");
  app->add_option("--delim", in.delim, "Field delimiter (default: detect comma or tab)");
  app->add_flag("--raw", in.raw, "Skip min-max normalization; values must lie in [0,1]");
}

void add_k(CLI::App* app, KOptions& k) {
  auto* abs = app->add_option("--k", k.k, "Rank threshold");
  auto* pct = app->add_option("--k-pct", k.k_pct, "Rank threshold as a percentage of n (ceil)");
  abs->excludes(pct);
}

rrr::IngestResult load(const InputOptions& in) {
  rrr::IngestConfig cfg;
  cfg.columns = rrr::split_list(in.cols);
  cfg.directions = rrr::parse_directions(in.dirs);
  cfg.normalize = !in.raw;
  if (in.delim == "tab" || in.delim == "\\t") {
    cfg.delimiter = '\t';
  } else if (in.delim.size() == 1) {
    cfg.delimiter = in.delim.front();
  } else if (!in.delim.empty()) {
    throw rrr::Error(rrr::ErrorCode::kInvalidConfig, "delimiter must be one character");
  }
  rrr::IngestResult result = rrr::ingest(in.path, cfg);
  for (const auto& w : result.warnings) std::cerr << "warning: " << w << '\n';
  return result;
}

std::size_t resolve_k(const KOptions& k, std::size_t n) {
  if (k.k) {
    if (*k.k < 1 || *k.k > n) {
      throw rrr::Error(rrr::ErrorCode::kKOutOfRange,
                       "k=" + std::to_string(*k.k) + " outside [1," + std::to_string(n) + "]");
    }
    return *k.k;
  }
  return rrr::resolve_k_percent(k.k_pct.value_or(1.0), n);
}

std::uint64_t resolve_seed(std::optional<std::uint64_t>& seed) {
  if (!seed) {
    std::random_device rd;
    seed = (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
    std::cerr << "seed: " << *seed << '\n';
  }
  return *seed;
}

bool estimated(const rrr::Dataset& data, std::size_t exact_limit) {
  return data.dims() != 2 || data.size() > exact_limit;
}

void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw rrr::Error(rrr::ErrorCode::kFileNotFound, "cannot write '" + path + "'");
  out << text;
}

rrr::SolveConfig solve_config(RunOptions& o, const rrr::Dataset& data, std::size_t k) {
  rrr::SolveConfig cfg;
  cfg.algorithm = rrr::parse_algorithm(o.algo);
  cfg.k = k;
  cfg.source = rrr::parse_kset_source(o.source);
  cfg.c = o.c;
  cfg.depth_cap = o.depth_cap;
  cfg.shards = o.shards;
  if (cfg.algorithm == rrr::Algorithm::k2drrr && data.dims() != 2) {
    throw rrr::Error(rrr::ErrorCode::kDimensionNot2D, "2drrr needs exactly two attributes");
  }
  if (cfg.source == rrr::KSetSource::kSweep2d && data.dims() != 2) {
    throw rrr::Error(rrr::ErrorCode::kDimensionNot2D, "sweep2d needs exactly two attributes");
  }
  const bool randomized = cfg.algorithm == rrr::Algorithm::kMdrrr ||
                          (!o.no_eval && estimated(data, o.exact_limit));
  cfg.seed = randomized ? resolve_seed(o.seed) : o.seed.value_or(0);
  return cfg;
}

int run_solve(RunOptions& o) {
  const auto input = load(o.input);
  const auto& data = input.data;
  const std::size_t k = resolve_k(o.k, data.size());
  const rrr::SolveConfig cfg = solve_config(o, data, k);

  rrr::Representative rep;
  if (cfg.algorithm == rrr::Algorithm::kMdrc && !o.tree.empty()) {
    rrr::MdrcOptions mo;
    mo.depth_cap = cfg.depth_cap;
    rrr::MdrcResult result = rrr::mdrc(data, k, mo);
    emit(o.tree, rrr::to_json(*result.tree).dump() + "\n");
    rep = std::move(result.representative);
  } else {
    rep = rrr::solve(data, cfg);
  }
  for (const auto& w : rep.warnings) std::cerr << "warning: " << w << '\n';

  std::optional<rrr::EvaluationReport> evaluation;
  if (!o.no_eval) {
    evaluation = rrr::evaluate_subset(data, rep.members, o.samples, rrr::derive_seed(cfg.seed, 7),
                                      o.exact_limit);
    evaluation->algorithm = rep.algorithm;
    evaluation->parameters = rep.params;
    evaluation->bound_guaranteed = rep.bound_guaranteed;
    if (o.seed) evaluation->seed = cfg.seed;
  }
  if (o.seed) rep.seed = cfg.seed;
  emit(o.out, rrr::representative_document(rep, input, evaluation).dump(2) + "\n");
  return 0;
}

int run_ksets(RunOptions& o) {
  const auto input = load(o.input);
  const auto& data = input.data;
  const std::size_t k = resolve_k(o.k, data.size());
  const auto source = rrr::resolve_source(rrr::parse_kset_source(o.source), data.dims());
  if (source == rrr::KSetSource::kSweep2d && data.dims() != 2) {
    throw rrr::Error(rrr::ErrorCode::kDimensionNot2D, "sweep2d needs exactly two attributes");
  }
  const std::uint64_t seed =
      source == rrr::KSetSource::kRandom ? resolve_seed(o.seed) : o.seed.value_or(0);
  const auto collection = rrr::collect_ksets(data, k, source, o.c, seed, o.shards);
  std::ostringstream text;
  rrr::write_ksets(text, collection);
  emit(o.out, text.str());
  std::cerr << collection.size() << " k-set(s), k=" << k << ", source "
            << rrr::to_string(source) << '\n';
  return 0;
}

int run_eval(RunOptions& o) {
  const auto input = load(o.input);
  const auto& data = input.data;
  std::vector<rrr::TupleId> members;
  std::string algorithm = "subset";
  if (!o.rep_path.empty()) {
    std::ifstream in(o.rep_path);
    if (!in) throw rrr::Error(rrr::ErrorCode::kFileNotFound, "cannot open '" + o.rep_path + "'");
    json doc;
    try {
      doc = json::parse(in);
      members = doc.at("member_ids").get<std::vector<rrr::TupleId>>();
      algorithm = doc.value("algorithm", algorithm);
    } catch (const json::exception& e) {
      throw rrr::Error(rrr::ErrorCode::kParseError, std::string("representative: ") + e.what());
    }
  } else {
    for (const auto& s : rrr::split_list(o.members)) {
      try {
        members.push_back(static_cast<rrr::TupleId>(std::stoul(s)));
      } catch (const std::exception&) {
        throw rrr::Error(rrr::ErrorCode::kParseError, "bad member id '" + s + "'");
      }
    }
  }
  const std::uint64_t seed =
      estimated(data, o.exact_limit) ? resolve_seed(o.seed) : o.seed.value_or(0);
  auto report = rrr::evaluate_subset(data, members, o.samples, seed, o.exact_limit);
  report.algorithm = algorithm;
  if (o.seed) report.seed = seed;
  emit(o.out, rrr::to_json(report).dump(2) + "\n");
  return 0;
}

int run_dual(RunOptions& o) {
  const auto input = load(o.input);
  const auto& data = input.data;
  const rrr::SolveConfig base = solve_config(o, data, 1);
  const auto solver = [&](const rrr::Dataset& d, std::size_t k) {
    rrr::SolveConfig cfg = base;
    cfg.k = k;
    return rrr::solve(d, cfg);
  };
  const rrr::DualResult result = rrr::dual_problem(data, o.budget, solver);
  json doc = rrr::representative_document(result.representative, input, std::nullopt);
  doc["budget"] = o.budget;
  doc["k"] = result.k;
  emit(o.out, doc.dump(2) + "\n");
  return 0;
}

int run_bench(RunOptions& o) {
  const auto input = load(o.input);
  const auto& data = input.data;
  rrr::BenchmarkConfig cfg;
  for (const auto& a : rrr::split_list(o.algos)) cfg.algorithms.push_back(rrr::parse_algorithm(a));
  for (const auto& s : rrr::split_list(o.k_list)) cfg.k_values.push_back(std::stoul(s));
  for (const auto& s : rrr::split_list(o.k_pct_list)) {
    cfg.k_values.push_back(rrr::resolve_k_percent(std::stod(s), data.size()));
  }
  if (cfg.k_values.empty()) cfg.k_values.push_back(resolve_k(o.k, data.size()));
  cfg.seeds.clear();
  for (const auto& s : rrr::split_list(o.seeds)) cfg.seeds.push_back(std::stoull(s));
  if (cfg.seeds.empty()) cfg.seeds.push_back(resolve_seed(o.seed));
  cfg.samples = o.samples;
  cfg.c = o.c;
  cfg.depth_cap = o.depth_cap;
  cfg.source = rrr::parse_kset_source(o.source);
  cfg.exact_2d_limit = o.exact_limit;

  const auto reports = rrr::run_benchmark(data, cfg);
  std::ostringstream lines;
  rrr::write_reports_jsonl(lines, reports);
  emit(o.jsonl.empty() ? o.out : o.jsonl, lines.str());
  if (!o.csv.empty()) {
    std::ostringstream csv;
    rrr::write_summary_csv(csv, reports);
    emit(o.csv, csv.str());
  }
  for (const auto& r : reports) {
    if (r.error) std::cerr << "error: " << r.algorithm << ": " << *r.error << '\n';
  }
  return 0;
}

int exit_code(rrr::ErrorCode code) {
  switch (rrr::category_of(code)) {
    case rrr::ErrorCategory::kInput: return 2;
    case rrr::ErrorCategory::kConfig: return 3;
    case rrr::ErrorCategory::kNumeric: return 4;
  }
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Rank-regret representatives"};
  app.require_subcommand(1);
  RunOptions o;

  auto seed_opt = [&](CLI::App* sub) { sub->add_option("--seed", o.seed, "RNG seed"); };
  auto out_opt = [&](CLI::App* sub) {
    sub->add_option("-o,--out", o.out, "Output path (default: stdout)");
  };
  auto solver_opts = [&](CLI::App* sub) {
    sub->add_option("--algo", o.algo, "2drrr | mdrrr | mdrc")->capture_default_str();
    sub->add_option("--source", o.source, "k-sets for mdrrr: auto | sweep2d | graph | random")
        ->capture_default_str();
    sub->add_option("--c", o.c, "Sampler stops after this many draws with nothing new")
        ->capture_default_str();
    sub->add_option("--depth-cap", o.depth_cap, "MDRC recursion cap (default 48(d-1))");
    sub->add_option("--shards", o.shards, "Independent sampler shards")->capture_default_str();
  };
  auto sample_opts = [&](CLI::App* sub) {
    sub->add_option("--samples", o.samples, "Monte-Carlo functions")->capture_default_str();
    sub->add_option("--exact-limit", o.exact_limit, "Exact 2D evaluation up to this n")
        ->capture_default_str();
  };

  auto* solve = app.add_subcommand("solve", "Compute a representative");
  add_input(solve, o.input);
  add_k(solve, o.k);
  solver_opts(solve);
  sample_opts(solve);
  seed_opt(solve);
  out_opt(solve);
  solve->add_option("--tree", o.tree, "Write the MDRC partition tree as JSON");
  solve->add_flag("--no-eval", o.no_eval, "Skip rank-regret evaluation");

  auto* ksets = app.add_subcommand("ksets", "Enumerate or sample k-sets");
  add_input(ksets, o.input);
  add_k(ksets, o.k);
  ksets->add_option("--source", o.source, "auto | sweep2d | graph | random")
      ->capture_default_str();
  ksets->add_option("--c", o.c, "Sampler stops after this many draws with nothing new")
      ->capture_default_str();
  ksets->add_option("--shards", o.shards, "Independent sampler shards")->capture_default_str();
  seed_opt(ksets);
  out_opt(ksets);

  auto* eval = app.add_subcommand("eval", "Rank-regret of a subset");
  add_input(eval, o.input);
  auto* mem = eval->add_option("--members", o.members, "Comma-separated tuple ids");
  auto* rep = eval->add_option("--rep", o.rep_path, "Representative JSON from solve");
  mem->excludes(rep);
  sample_opts(eval);
  seed_opt(eval);
  out_opt(eval);
  eval->callback([&] {
    if (o.members.empty() && o.rep_path.empty()) {
      throw CLI::ValidationError("eval", "one of --members or --rep is required");
    }
  });

  auto* dual = app.add_subcommand("dual", "Smallest k whose representative fits a size budget");
  add_input(dual, o.input);
  dual->add_option("--budget", o.budget, "Maximum output size")->required();
  solver_opts(dual);
  seed_opt(dual);
  out_opt(dual);

  auto* bench = app.add_subcommand("bench", "Timed solve + evaluate runs");
  add_input(bench, o.input);
  add_k(bench, o.k);
  bench->add_option("--algos", o.algos, "Comma-separated algorithms")->capture_default_str();
  bench->add_option("--k-list", o.k_list, "Comma-separated k values");
  bench->add_option("--k-pct-list", o.k_pct_list, "Comma-separated k percentages");
  bench->add_option("--seeds", o.seeds, "Comma-separated seeds");
  bench->add_option("--source", o.source, "k-sets for mdrrr")->capture_default_str();
  bench->add_option("--c", o.c, "Sampler termination counter")->capture_default_str();
  bench->add_option("--depth-cap", o.depth_cap, "MDRC recursion cap");
  bench->add_option("--jsonl", o.jsonl, "JSON-lines report path (default: --out)");
  bench->add_option("--csv", o.csv, "CSV summary path");
  sample_opts(bench);
  seed_opt(bench);
  out_opt(bench);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << json{{"error", "InvalidConfig"}, {"category", "config"}, {"message", e.what()}}
                     .dump()
              << '\n';
    return 3;
  }

  try {
    if (*solve) return run_solve(o);
    if (*ksets) return run_ksets(o);
    if (*eval) return run_eval(o);
    if (*dual) return run_dual(o);
    if (*bench) return run_bench(o);
  } catch (const rrr::Error& e) {
    std::cerr << rrr::error_json(e).dump() << '\n';
    return exit_code(e.code());
  } catch (const std::invalid_argument& e) {
    std::cerr << json{{"error", "ParseError"}, {"category", "input"}, {"message", e.what()}}.dump()
              << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << json{{"error", "Internal"}, {"message", e.what()}}.dump() << '\n';
    return 1;
  }
  return 0;
}
