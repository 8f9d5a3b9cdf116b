#pragma once

#include <cstddef>
#include <filesystem>
#include <istream>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "rvss/report.hpp"
#include "rvss/scoring.hpp"

namespace rvss {

struct VulnRecord {
  std::string id;
  std::string description;
  std::optional<std::string> cvss_vector;
  std::optional<std::string> rvss_vector;
  std::vector<std::string> tags;
  // Reference triples; only set on the built-in corpus.
  std::optional<ScoreTriple> expected_rvss;
  std::optional<ScoreTriple> expected_cvss;
};

/// A row- or record-level problem. `line` is the 1-based source line when
/// loading and the 1-based record position when comparing.
struct Diagnostic {
  std::size_t line = 0;
  std::string id;
  std::string code;
  std::string message;
};

enum class InputFormat { JsonLines, Csv };

std::optional<InputFormat> input_format_from_path(const std::filesystem::path& path);

struct LoadResult {
  std::vector<VulnRecord> records;
  std::vector<Diagnostic> diagnostics;
};

/// Raised when a source yields no usable record. Carries the per-row diagnostics.
class EmptyCorpusError : public std::runtime_error {
public:
  explicit EmptyCorpusError(std::vector<Diagnostic> diagnostics);
  const std::vector<Diagnostic>& diagnostics() const noexcept { return diagnostics_; }

private:
  std::vector<Diagnostic> diagnostics_;
};

/// Malformed rows become diagnostics; throws EmptyCorpusError if nothing loads.
LoadResult load_records(std::istream& in, InputFormat format);
/// Throws IoError when the file cannot be opened.
LoadResult load_records(const std::filesystem::path& path, InputFormat format);

/// Validates one JSON record object ({id, description, cvss_vector, rvss_vector, tags}).
/// Returns the problem as a Diagnostic instead of throwing.
std::optional<Diagnostic> record_from_json(const Json& object, std::size_t line, VulnRecord& out);

/// The four reference case studies, with their published (base, temporal,
/// environmental) triples attached.
std::vector<VulnRecord> builtin_corpus();

struct ComparisonRow {
  std::string id;
  std::string description;
  std::optional<std::string> rvss_vector;  // canonical
  std::optional<std::string> cvss_vector;  // canonical
  std::optional<ScoreTriple> rvss;
  std::optional<ScoreTriple> cvss;
  std::optional<SeverityTriple> rvss_severity;
  std::optional<SeverityTriple> cvss_severity;
  std::optional<double> delta_base;  // rvss.base - cvss.base, one decimal
};

struct ComparisonResult {
  std::vector<ComparisonRow> rows;
  std::vector<Diagnostic> diagnostics;
};

/// Scores every record under both schemes. Output order equals input order;
/// records whose vectors fail to parse become diagnostics.
ComparisonResult compare(std::span<const VulnRecord> records);

enum class ReportFormat { Markdown, Csv, Json };

std::string emit_report(std::span<const ComparisonRow> rows, ReportFormat format);

Json row_to_json(const ComparisonRow& row);
Json diagnostics_to_json(std::span<const Diagnostic> diagnostics);

}  // namespace rvss
