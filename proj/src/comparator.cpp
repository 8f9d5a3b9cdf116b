#include "rvss/comparator.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <thread>

#include <fmt/format.h>

#include "rvss/csv.hpp"
#include "rvss/errors.hpp"

namespace rvss {

namespace {

constexpr std::size_t kParallelThreshold = 512;

std::string summarize(const std::vector<Diagnostic>& diagnostics) {
  if (diagnostics.empty()) return "corpus contains no records";
  return fmt::format("corpus contains no usable records ({} diagnostic(s); first on line {}: {})",
                     diagnostics.size(), diagnostics.front().line, diagnostics.front().message);
}

/// Parses `text` and checks it carries the expected scheme prefix.
std::optional<Diagnostic> check_vector(const std::string& text, Scheme expected,
                                       std::size_t line, const std::string& id) {
  try {
    const auto v = parse(text);
    if (v.scheme() != expected) {
      return Diagnostic{line, id, "SchemeMismatch",
                        fmt::format("expected a {} vector, got '{}'", scheme_prefix(expected),
                                    text)};
    }
  } catch (const VectorError& e) {
    return Diagnostic{line, id, std::string(to_string(e.code())), e.what()};
  }
  return std::nullopt;
}

std::optional<Diagnostic> validate(const VulnRecord& r, std::size_t line) {
  if (r.id.empty()) return Diagnostic{line, r.id, "InvalidRecord", "record has no id"};
  if (!r.cvss_vector && !r.rvss_vector) {
    return Diagnostic{line, r.id, "MissingVector", "record has neither cvss_vector nor rvss_vector"};
  }
  if (r.cvss_vector) {
    if (auto d = check_vector(*r.cvss_vector, Scheme::Cvss30, line, r.id)) return d;
  }
  if (r.rvss_vector) {
    if (auto d = check_vector(*r.rvss_vector, Scheme::Rvss10, line, r.id)) return d;
  }
  return std::nullopt;
}

std::optional<std::string> non_empty(std::string s) {
  if (s.empty()) return std::nullopt;
  return s;
}

std::vector<std::string> split_tags(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string tag;
  while (std::getline(ss, tag, ';')) {
    if (!tag.empty()) out.push_back(tag);
  }
  return out;
}

LoadResult load_jsonl(std::istream& in) {
  LoadResult result;
  std::string text;
  std::size_t line = 0;
  while (std::getline(in, text)) {
    ++line;
    if (!text.empty() && text.back() == '\r') text.pop_back();
    if (text.find_first_not_of(" \t") == std::string::npos) continue;

    Json object;
    try {
      object = Json::parse(text);
    } catch (const Json::parse_error& e) {
      result.diagnostics.push_back({line, "", "InvalidJson", e.what()});
      continue;
    }
    VulnRecord record;
    if (auto d = record_from_json(object, line, record)) {
      result.diagnostics.push_back(std::move(*d));
    } else {
      result.records.push_back(std::move(record));
    }
  }
  return result;
}

LoadResult load_csv(std::istream& in) {
  LoadResult result;
  csv::Reader reader(in);
  try {
    const auto header = reader.next();
    if (!header) return result;

    std::map<std::string, std::size_t> columns;
    for (std::size_t i = 0; i < header->fields.size(); ++i) columns[header->fields[i]] = i;
    for (const char* required : {"id", "description", "cvss_vector", "rvss_vector"}) {
      if (!columns.contains(required)) {
        result.diagnostics.push_back(
            {header->line, "", "BadHeader", fmt::format("missing column '{}'", required)});
        return result;
      }
    }

    while (auto row = reader.next()) {
      if (row->fields.size() == 1 && row->fields.front().empty()) continue;
      if (row->fields.size() != header->fields.size()) {
        result.diagnostics.push_back(
            {row->line, "", "InvalidRow",
             fmt::format("expected {} fields, got {}", header->fields.size(), row->fields.size())});
        continue;
      }
      const auto field = [&](const char* name) { return row->fields[columns.at(name)]; };
      VulnRecord record;
      record.id = field("id");
      record.description = field("description");
      record.cvss_vector = non_empty(field("cvss_vector"));
      record.rvss_vector = non_empty(field("rvss_vector"));
      if (columns.contains("tags")) record.tags = split_tags(field("tags"));
      if (auto d = validate(record, row->line)) {
        result.diagnostics.push_back(std::move(*d));
      } else {
        result.records.push_back(std::move(record));
      }
    }
  } catch (const std::runtime_error& e) {
    result.diagnostics.push_back({0, "", "InvalidCsv", e.what()});
  }
  return result;
}

ComparisonRow score_record(const VulnRecord& record) {
  ComparisonRow row;
  row.id = record.id;
  row.description = record.description;
  if (record.rvss_vector) {
    const auto v = parse(*record.rvss_vector);
    const auto r = score(v);
    row.rvss_vector = serialize(v);
    row.rvss = r.scores;
    row.rvss_severity = r.severities;
  }
  if (record.cvss_vector) {
    const auto v = parse(*record.cvss_vector);
    const auto r = score(v);
    row.cvss_vector = serialize(v);
    row.cvss = r.scores;
    row.cvss_severity = r.severities;
  }
  if (row.rvss && row.cvss) {
    const auto tenths = std::llround(row.rvss->base * 10) - std::llround(row.cvss->base * 10);
    row.delta_base = static_cast<double>(tenths) / 10.0;
  }
  return row;
}

std::string triple_text(const std::optional<ScoreTriple>& t) {
  if (!t) return "n/a";
  return fmt::format("({:.1f}, {:.1f}, {:.1f})", t->base, t->temporal, t->environmental);
}

std::string score_text(const std::optional<ScoreTriple>& t, double ScoreTriple::*member) {
  return t ? fmt::format("{:.1f}", (*t).*member) : std::string();
}

std::string delta_text(const std::optional<double>& delta) {
  return delta ? fmt::format("{:+.1f}", *delta) : std::string();
}

std::string markdown_cell(std::string_view text) {
  std::string out;
  for (char c : text) {
    if (c == '|') out += "\\|";
    else if (c == '\n' || c == '\r') out += ' ';
    else out += c;
  }
  return out;
}

std::string emit_markdown(std::span<const ComparisonRow> rows) {
  std::string out =
      "| # | Vulnerability description | RVSSv1.0 | CVSSv3.0 | Delta base | RVSS severity | "
      "CVSS severity |\n"
      "|---|---|---|---|---|---|---|\n";
  for (const auto& r : rows) {
    out += fmt::format(
        "| {} | {} | {} | {} | {} | {} | {} |\n", markdown_cell(r.id),
        markdown_cell(r.description), triple_text(r.rvss), triple_text(r.cvss),
        r.delta_base ? delta_text(r.delta_base) : "n/a",
        r.rvss_severity ? to_string(r.rvss_severity->base) : "n/a",
        r.cvss_severity ? to_string(r.cvss_severity->base) : "n/a");
  }
  return out;
}

std::string emit_csv(std::span<const ComparisonRow> rows) {
  std::string out = csv::join({"id", "description", "rvss_vector", "rvss_base", "rvss_temporal",
                               "rvss_environmental", "rvss_severity", "cvss_vector", "cvss_base",
                               "cvss_temporal", "cvss_environmental", "cvss_severity",
                               "delta_base"}) +
                    "\r\n";
  for (const auto& r : rows) {
    out += csv::join({r.id, r.description, r.rvss_vector.value_or(""),
                      score_text(r.rvss, &ScoreTriple::base),
                      score_text(r.rvss, &ScoreTriple::temporal),
                      score_text(r.rvss, &ScoreTriple::environmental),
                      r.rvss_severity ? std::string(to_string(r.rvss_severity->base)) : "",
                      r.cvss_vector.value_or(""), score_text(r.cvss, &ScoreTriple::base),
                      score_text(r.cvss, &ScoreTriple::temporal),
                      score_text(r.cvss, &ScoreTriple::environmental),
                      r.cvss_severity ? std::string(to_string(r.cvss_severity->base)) : "",
                      delta_text(r.delta_base)}) +
           "\r\n";
  }
  return out;
}

Json scheme_scores_json(const std::optional<ScoreTriple>& t,
                        const std::optional<SeverityTriple>& s) {
  if (!t) return nullptr;
  auto out = to_json(*t);
  out["severities"] = to_json(*s);
  return out;
}

}  // namespace

EmptyCorpusError::EmptyCorpusError(std::vector<Diagnostic> diagnostics)
    : std::runtime_error(summarize(diagnostics)), diagnostics_(std::move(diagnostics)) {}

std::optional<InputFormat> input_format_from_path(const std::filesystem::path& path) {
  const auto ext = path.extension().string();
  if (ext == ".jsonl" || ext == ".ndjson" || ext == ".json") return InputFormat::JsonLines;
  if (ext == ".csv") return InputFormat::Csv;
  return std::nullopt;
}

std::optional<Diagnostic> record_from_json(const Json& object, std::size_t line, VulnRecord& out) {
  if (!object.is_object()) return Diagnostic{line, "", "InvalidRecord", "record is not an object"};

  const auto string_field = [&](const char* name) -> std::optional<std::string> {
    const auto it = object.find(name);
    if (it == object.end() || it->is_null()) return std::nullopt;
    if (!it->is_string()) return std::nullopt;
    return it->get<std::string>();
  };
  for (const char* name : {"id", "description", "cvss_vector", "rvss_vector"}) {
    const auto it = object.find(name);
    if (it != object.end() && !it->is_null() && !it->is_string()) {
      return Diagnostic{line, "", "InvalidRecord", fmt::format("field '{}' must be a string", name)};
    }
  }

  VulnRecord record;
  record.id = string_field("id").value_or("");
  record.description = string_field("description").value_or("");
  if (auto v = string_field("cvss_vector")) record.cvss_vector = non_empty(*v);
  if (auto v = string_field("rvss_vector")) record.rvss_vector = non_empty(*v);
  if (const auto it = object.find("tags"); it != object.end() && it->is_array()) {
    for (const auto& tag : *it) {
      if (tag.is_string()) record.tags.push_back(tag.get<std::string>());
    }
  }
  if (auto d = validate(record, line)) return d;
  out = std::move(record);
  return std::nullopt;
}

LoadResult load_records(std::istream& in, InputFormat format) {
  auto result = format == InputFormat::Csv ? load_csv(in) : load_jsonl(in);
  if (result.records.empty()) throw EmptyCorpusError(std::move(result.diagnostics));
  return result;
}

LoadResult load_records(const std::filesystem::path& path, InputFormat format) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read '" + path.string() + "'");
  return load_records(in, format);
}

std::vector<VulnRecord> builtin_corpus() {
  const auto triple = [](double v) { return ScoreTriple{v, v, v}; };
  return {
      {"1", "Robotis RoboPlus motion server: no authentication on the control protocol",
       "CVSS:3.0/AV:N/AC:L/PR:N/UI:N/S:U/C:N/I:H/A:H",
       "RVSS:1.0/AV:ANPR/AC:L/PR:N/UI:N/Y:T/S:U/C:N/I:H/A:H/H:E",
       {"case-study-a", "robot"}, triple(7.7), triple(9.1)},
      {"2", "Vecna VGo telepresence robot: command injection from an adjacent network",
       "CVSS:3.0/AV:A/AC:L/PR:N/UI:N/S:U/C:H/I:H/A:H",
       "RVSS:1.0/AV:AN/AC:L/PR:N/UI:N/Y:O/S:U/C:H/I:H/A:H/H:E",
       {"case-study-b", "robot"}, triple(10.0), triple(8.8)},
      {"3", "Universal Robots controller: stack buffer overflow in the Modbus TCP service",
       "CVSS:3.0/AV:N/AC:L/PR:N/UI:N/S:C/C:H/I:H/A:H",
       "RVSS:1.0/AV:AN/AC:L/PR:N/UI:N/Y:T/S:C/C:H/I:H/A:H/H:H",
       {"case-study-c", "robot"}, triple(10.0), triple(10.0)},
      // Library case: CIA impacts are all None under CVSS; RVSS scores the
      // reasonable worst case through Safety.
      {"4", "ROS 2 middleware (Fast-RTPS, arm64): launch never terminates",
       "CVSS:3.0/AV:N/AC:L/PR:N/UI:N/S:U/C:N/I:N/A:N",
       "RVSS:1.0/AV:AN/AC:L/PR:N/UI:N/Y:O/S:U/C:N/I:N/A:N/H:H",
       {"case-study-d", "library"}, triple(5.9), triple(0.0)},
  };
}

ComparisonResult compare(std::span<const VulnRecord> records) {
  std::vector<std::optional<ComparisonRow>> rows(records.size());
  std::vector<std::optional<Diagnostic>> problems(records.size());

  const auto work = [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      try {
        rows[i] = score_record(records[i]);
      } catch (const VectorError& e) {
        problems[i] = Diagnostic{i + 1, records[i].id, std::string(to_string(e.code())), e.what()};
      }
    }
  };

  const std::size_t threads =
      records.size() < kParallelThreshold
          ? 1
          : std::clamp<std::size_t>(std::thread::hardware_concurrency(), 1, 16);
  if (threads == 1) {
    work(0, records.size());
  } else {
    std::vector<std::jthread> pool;
    const std::size_t chunk = (records.size() + threads - 1) / threads;
    for (std::size_t begin = 0; begin < records.size(); begin += chunk) {
      pool.emplace_back(work, begin, std::min(records.size(), begin + chunk));
    }
  }

  ComparisonResult result;
  for (std::size_t i = 0; i < records.size(); ++i) {
    if (rows[i]) result.rows.push_back(std::move(*rows[i]));
    if (problems[i]) result.diagnostics.push_back(std::move(*problems[i]));
  }
  return result;
}

Json row_to_json(const ComparisonRow& r) {
  return Json{{"id", r.id},
              {"description", r.description},
              {"rvssVector", r.rvss_vector ? Json(*r.rvss_vector) : Json(nullptr)},
              {"cvssVector", r.cvss_vector ? Json(*r.cvss_vector) : Json(nullptr)},
              {"rvss", scheme_scores_json(r.rvss, r.rvss_severity)},
              {"cvss", scheme_scores_json(r.cvss, r.cvss_severity)},
              {"deltaBase", r.delta_base ? Json(*r.delta_base) : Json(nullptr)}};
}

Json diagnostics_to_json(std::span<const Diagnostic> diagnostics) {
  Json out = Json::array();
  for (const auto& d : diagnostics) {
    out.push_back({{"line", d.line}, {"id", d.id}, {"code", d.code}, {"message", d.message}});
  }
  return out;
}

std::string emit_report(std::span<const ComparisonRow> rows, ReportFormat format) {
  switch (format) {
  case ReportFormat::Markdown: return emit_markdown(rows);
  case ReportFormat::Csv: return emit_csv(rows);
  case ReportFormat::Json: {
    Json out = Json::array();
    for (const auto& r : rows) out.push_back(row_to_json(r));
    return out.dump(2) + "\n";
  }
  }
  return {};
}

}  // namespace rvss
