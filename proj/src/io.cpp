#include "rrr/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace rrr {
namespace {

using nlohmann::json;

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) {
    s.remove_prefix(1);
  }
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  if (s.size() >= 2 && s.front() == '"' && s.back() == '"') s = s.substr(1, s.size() - 2);
  return s;
}

std::vector<std::string_view> split_fields(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = line.find(sep, start);
    if (pos == std::string_view::npos) {
      out.push_back(trim(line.substr(start)));
      break;
    }
    out.push_back(trim(line.substr(start, pos - start)));
    start = pos + 1;
  }
  return out;
}

std::optional<double> parse_number(std::string_view s) {
  if (s.empty()) return std::nullopt;
  if (s.front() == '+') s.remove_prefix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v)) {
    return std::nullopt;
  }
  return v;
}

template <typename T>
std::vector<T> parse_ids(std::string_view text, std::size_t line_no) {
  std::vector<T> out;
  if (trim(text).empty()) return out;
  for (std::string_view part : split_fields(text, ',')) {
    T v{};
    const auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), v);
    if (ec != std::errc() || ptr != part.data() + part.size()) {
      throw Error(ErrorCode::kParseError,
                  "line " + std::to_string(line_no) + ": bad number '" + std::string(part) + "'");
    }
    out.push_back(v);
  }
  return out;
}

}  // namespace

char detect_delimiter(std::string_view header) {
  const auto tabs = std::count(header.begin(), header.end(), '\t');
  const auto commas = std::count(header.begin(), header.end(), ',');
  return tabs > commas ? '\t' : ',';
}

std::vector<std::string> split_list(std::string_view text, char sep) {
  std::vector<std::string> out;
  if (trim(text).empty()) return out;
  for (std::string_view f : split_fields(text, sep)) out.emplace_back(f);
  return out;
}

std::vector<Direction> parse_directions(std::string_view text) {
  std::vector<Direction> out;
  for (const std::string& tok : split_list(text)) {
    if (tok == "hi" || tok == "high" || tok == "max" || tok == "+") {
      out.push_back(Direction::kHigherPreferred);
    } else if (tok == "lo" || tok == "low" || tok == "min" || tok == "-") {
      out.push_back(Direction::kLowerPreferred);
    } else {
      throw Error(ErrorCode::kInvalidConfig, "unknown direction '" + tok + "'");
    }
  }
  return out;
}

IngestResult ingest(const std::string& path, const IngestConfig& config) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kFileNotFound, "cannot open '" + path + "'");
  return ingest_stream(in, config);
}

IngestResult ingest_stream(std::istream& in, const IngestConfig& config) {
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!trim(line).empty()) break;
  }
  if (trim(line).empty()) throw Error(ErrorCode::kNoUsableRows, "input has no header row");

  const char sep = config.delimiter.value_or(detect_delimiter(line));
  std::vector<std::string> header;
  for (std::string_view f : split_fields(line, sep)) header.emplace_back(f);

  IngestResult result;
  std::vector<std::size_t> picks;
  if (config.columns.empty()) {
    for (std::size_t i = 0; i < header.size(); ++i) picks.push_back(i);
  } else {
    for (const std::string& name : config.columns) {
      const auto it = std::find(header.begin(), header.end(), name);
      if (it == header.end()) {
        throw Error(ErrorCode::kInvalidConfig, "column '" + name + "' not in header");
      }
      picks.push_back(static_cast<std::size_t>(it - header.begin()));
    }
  }
  for (std::size_t p : picks) result.columns.push_back(header[p]);
  const std::size_t d = picks.size();
  if (d < 2) throw Error(ErrorCode::kInvalidConfig, "need at least two attributes");

  std::vector<Direction> dirs = config.directions;
  if (dirs.empty()) dirs.assign(d, Direction::kHigherPreferred);
  if (dirs.size() == 1) dirs.assign(d, dirs.front());
  if (dirs.size() != d) {
    throw Error(ErrorCode::kInvalidConfig, "got " + std::to_string(dirs.size()) +
                                               " directions for " + std::to_string(d) +
                                               " columns");
  }

  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto fields = split_fields(line, sep);
    std::vector<double> row;
    row.reserve(d);
    for (std::size_t p : picks) {
      if (p >= fields.size()) break;
      const auto v = parse_number(fields[p]);
      if (!v) break;
      row.push_back(*v);
    }
    if (row.size() != d) {
      ++result.dropped_rows;
      continue;
    }
    result.raw_rows.push_back(std::move(row));
    result.line_numbers.push_back(line_no);
  }
  if (result.raw_rows.empty()) throw Error(ErrorCode::kNoUsableRows, "no usable rows");
  if (result.dropped_rows > 0) {
    result.warnings.push_back("dropped " + std::to_string(result.dropped_rows) +
                              " row(s) with missing or non-numeric values");
  }

  if (config.normalize) {
    try {
      result.data = normalize(result.raw_rows, dirs);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kConstantAttribute || e.subject() < 0) throw;
      const std::string& name = result.columns[static_cast<std::size_t>(e.subject())];
      throw Error(ErrorCode::kConstantAttribute, "column '" + name + "' is constant",
                  e.subject());
    }
  } else {
    std::vector<std::vector<double>> rows = result.raw_rows;
    for (auto& r : rows) {
      for (std::size_t j = 0; j < d; ++j) {
        if (dirs[j] == Direction::kLowerPreferred) r[j] = 1.0 - r[j];
      }
    }
    result.data = Dataset::from_rows(rows);
  }
  return result;
}

void write_ksets(std::ostream& out, const KSetCollection& collection) {
  out << "# complete=" << (collection.complete() ? 1 : 0) << '\n';
  out.precision(17);
  for (const KSet& s : collection.sets()) {
    out << "k=" << collection.k() << ";members=";
    for (std::size_t i = 0; i < s.members.size(); ++i) out << (i ? "," : "") << s.members[i];
    if (s.witness) {
      out << ";witness=";
      const auto w = s.witness->weights();
      for (std::size_t i = 0; i < w.size(); ++i) out << (i ? "," : "") << w[i];
    }
    out << '\n';
  }
}

KSetCollection read_ksets(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  std::optional<std::size_t> k;
  bool complete = false;
  std::vector<KSet> sets;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view view = trim(line);
    if (view.empty()) continue;
    if (view.front() == '#') {
      if (view.find("complete=1") != std::string_view::npos) complete = true;
      continue;
    }
    KSet set;
    std::optional<std::size_t> line_k;
    for (std::string_view part : split_fields(view, ';')) {
      const std::size_t eq = part.find('=');
      if (eq == std::string_view::npos) {
        throw Error(ErrorCode::kParseError, "line " + std::to_string(line_no) + ": missing '='");
      }
      const std::string_view key = part.substr(0, eq);
      const std::string_view value = part.substr(eq + 1);
      if (key == "k") {
        const auto ks = parse_ids<std::size_t>(value, line_no);
        if (ks.size() != 1) {
          throw Error(ErrorCode::kParseError, "line " + std::to_string(line_no) + ": bad k");
        }
        line_k = ks.front();
      } else if (key == "members") {
        set.members = parse_ids<TupleId>(value, line_no);
      } else if (key == "witness") {
        std::vector<double> w;
        for (std::string_view f : split_fields(value, ',')) {
          const auto v = parse_number(f);
          if (!v) {
            throw Error(ErrorCode::kParseError,
                        "line " + std::to_string(line_no) + ": bad witness weight");
          }
          w.push_back(*v);
        }
        set.witness = LinearFunction(std::move(w));
      } else {
        throw Error(ErrorCode::kParseError, "line " + std::to_string(line_no) + ": unknown key '" +
                                                std::string(key) + "'");
      }
    }
    if (!line_k) {
      throw Error(ErrorCode::kParseError, "line " + std::to_string(line_no) + ": missing k");
    }
    if (k && *k != *line_k) {
      throw Error(ErrorCode::kParseError, "line " + std::to_string(line_no) + ": mixed k values");
    }
    k = line_k;
    std::sort(set.members.begin(), set.members.end());
    if (set.members.size() != *k ||
        std::adjacent_find(set.members.begin(), set.members.end()) != set.members.end()) {
      throw Error(ErrorCode::kParseError,
                  "line " + std::to_string(line_no) + ": member count differs from k");
    }
    sets.push_back(std::move(set));
  }
  KSetCollection collection(k.value_or(0), complete);
  for (KSet& s : sets) collection.insert(std::move(s));
  return collection;
}

KSetCollection read_ksets_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kFileNotFound, "cannot open '" + path + "'");
  return read_ksets(in);
}

json to_json(const DatasetFingerprint& fp) {
  return {{"n", fp.n}, {"d", fp.d}, {"content_hash", fp.content_hash}};
}

json to_json(const EvaluationReport& r) {
  json j = {{"algorithm", r.algorithm},
            {"members", r.members},
            {"subset_size", r.subset_size},
            {"rank_regret", r.rank_regret},
            {"exact", r.exact},
            {"samples", r.samples},
            {"wall_time_seconds", r.wall_time_seconds},
            {"parameters", r.parameters},
            {"dataset", to_json(r.dataset)},
            {"bound_guaranteed", r.bound_guaranteed}};
  j["seed"] = r.seed ? json(*r.seed) : json(nullptr);
  j["error"] = r.error ? json(*r.error) : json(nullptr);
  return j;
}

json to_json(const Representative& rep) {
  json j = {{"algorithm", rep.algorithm},
            {"member_ids", rep.members},
            {"params", rep.params},
            {"tags", rep.tags},
            {"bound_guaranteed", rep.bound_guaranteed},
            {"warnings", rep.warnings}};
  j["seed"] = rep.seed ? json(*rep.seed) : json(nullptr);
  return j;
}

json to_json(const MdrcNode& node) {
  json ranges = json::array();
  for (const auto& [lo, hi] : node.box.ranges) ranges.push_back({lo, hi});
  json j = {{"depth", node.box.level}, {"ranges", ranges}};
  if (node.is_leaf()) {
    j["assigned"] = node.assigned ? json(*node.assigned) : json(nullptr);
    j["bound_guaranteed"] = node.bound_guaranteed;
  } else {
    j["children"] = {to_json(*node.left), to_json(*node.right)};
  }
  return j;
}

json error_json(const Error& e) {
  static constexpr std::string_view kCategories[] = {"input", "config", "numeric"};
  json j = {{"error", std::string(to_string(e.code()))},
            {"category", kCategories[static_cast<int>(category_of(e.code()))]},
            {"message", e.what()}};
  if (e.subject() >= 0) j["subject"] = e.subject();
  return j;
}

json representative_document(const Representative& rep, const IngestResult& input,
                             const std::optional<EvaluationReport>& evaluation) {
  json doc = to_json(rep);
  json rows = json::array();
  for (TupleId id : rep.members) {
    json values = json::object();
    for (std::size_t j = 0; j < input.columns.size(); ++j) {
      values[input.columns[j]] = input.raw_rows[id][j];
    }
    rows.push_back({{"id", id}, {"line", input.line_numbers[id]}, {"values", values}});
  }
  doc["member_rows"] = rows;
  doc["evaluation"] = evaluation ? to_json(*evaluation) : json(nullptr);
  return doc;
}

void write_summary_csv(std::ostream& out, std::span<const EvaluationReport> reports) {
  out << kSummaryHeader << '\n';
  for (const auto& r : reports) {
    const auto k = r.parameters.find("k");
    out << r.algorithm << ',' << r.dataset.n << ',' << r.dataset.d << ',';
    if (k != r.parameters.end()) out << static_cast<std::size_t>(k->second);
    out << ',';
    if (!r.error) out << r.subset_size << ',' << r.rank_regret;
    else out << ',';
    out << ',' << (r.exact ? 1 : 0) << ',' << r.wall_time_seconds << ',';
    if (r.seed) out << *r.seed;
    out << '\n';
  }
}

void write_reports_jsonl(std::ostream& out, std::span<const EvaluationReport> reports) {
  for (const auto& r : reports) out << to_json(r).dump() << '\n';
}

}  // namespace rrr
