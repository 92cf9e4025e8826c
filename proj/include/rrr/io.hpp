#pragma once

// Delimited-text ingestion, the k-set line format, and JSON / CSV writers for
// representatives, evaluation reports and MDRC trees.

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "rrr/core.hpp"
#include "rrr/eval.hpp"
#include "rrr/mdrc.hpp"
#include "rrr/types.hpp"

namespace rrr {

struct IngestConfig {
  std::vector<std::string> columns;     // empty: every column
  std::vector<Direction> directions;    // empty: all higher-preferred; one entry applies to all
  std::optional<char> delimiter;        // auto-detected from the header when unset
  bool normalize = true;                // false: values must already lie in [0, 1]
};

struct IngestResult {
  Dataset data;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> raw_rows;  // selected columns, before normalization
  std::vector<std::size_t> line_numbers;      // 1-based source line of each kept row
  std::size_t dropped_rows = 0;
  std::vector<std::string> warnings;
};

// Tab when the header has more tabs than commas, else comma.
char detect_delimiter(std::string_view header);

// "hi,lo,+,-,max,min" style lists.
std::vector<Direction> parse_directions(std::string_view text);
std::vector<std::string> split_list(std::string_view text, char sep = ',');

IngestResult ingest(const std::string& path, const IngestConfig& config = {});
IngestResult ingest_stream(std::istream& in, const IngestConfig& config = {});

// One set per line: k=<k>;members=<id,...>;witness=<w1,...,wd>. A leading
// "# complete=1" comment marks an exhaustive enumeration.
void write_ksets(std::ostream& out, const KSetCollection& collection);
KSetCollection read_ksets(std::istream& in);
KSetCollection read_ksets_file(const std::string& path);

nlohmann::json to_json(const DatasetFingerprint& fp);
nlohmann::json to_json(const EvaluationReport& report);
nlohmann::json to_json(const Representative& rep);
nlohmann::json to_json(const MdrcNode& node);
nlohmann::json error_json(const Error& e);

// Representative document: algorithm, params, seed, member ids, the source rows
// of the members and an optional evaluation.
nlohmann::json representative_document(const Representative& rep, const IngestResult& input,
                                        const std::optional<EvaluationReport>& evaluation);

inline constexpr std::string_view kSummaryHeader =
    "algorithm,n,d,k,size,rank_regret,exact_flag,seconds,seed";
void write_summary_csv(std::ostream& out, std::span<const EvaluationReport> reports);
void write_reports_jsonl(std::ostream& out, std::span<const EvaluationReport> reports);

}  // namespace rrr
