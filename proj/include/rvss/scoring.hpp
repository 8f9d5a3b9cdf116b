#pragma once

#include <optional>
#include <string_view>

#include "rvss/vector_codec.hpp"

namespace rvss {

/// Smallest one-decimal value >= x. The input is first quantized to
/// ten-thousandths so float noise (8.6000000001) cannot bump a decile.
double round_up(double x);

enum class Severity { None, Low, Medium, High, Critical };

std::string_view to_string(Severity severity);
Severity severity_rating(double score);

struct ScoreTriple {
  double base = 0.0;
  double temporal = 0.0;
  double environmental = 0.0;

  friend bool operator==(const ScoreTriple&, const ScoreTriple&) = default;
};

struct SeverityTriple {
  Severity base = Severity::None;
  Severity temporal = Severity::None;
  Severity environmental = Severity::None;
};

struct ImpactSubscore {
  double isc = 0.0;
  double impact = 0.0;
};

struct SubScores {
  double exploitability = 0.0;
  double isc_base = 0.0;
  double impact = 0.0;
  std::optional<double> m_exploitability;
  std::optional<double> isc_modified;
  std::optional<double> m_impact;
};

struct ScoreResult {
  ScoreTriple scores;
  SeverityTriple severities;
  SubScores subscores;
};

double exploitability_subscore(const ParsedVector& vector);
ImpactSubscore impact_subscore(const ParsedVector& vector);
double base_score(const ParsedVector& vector);
double temporal_score(const ParsedVector& vector);

/// Modified exploitability and impact with Not Defined metrics inheriting
/// their base counterparts.
struct ModifiedSubscores {
  double exploitability = 0.0;
  double isc = 0.0;
  double impact = 0.0;
};
ModifiedSubscores modified_subscores(const ParsedVector& vector);
double environmental_score(const ParsedVector& vector);

/// True when any Environmental-group metric carries a value other than X.
bool has_environmental_metrics(const ParsedVector& vector);

/// Full evaluation. The modified sub-score triplet is filled when the vector
/// defines an Environmental metric or `include_modified` is set.
ScoreResult score(const ParsedVector& vector, bool include_modified = false);

}  // namespace rvss
