#include "rvss/scoring.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>

namespace rvss {

namespace {

constexpr double kExploitabilityScale = 8.22;
constexpr double kUnchangedImpactScale = 6.42;
constexpr double kChangedScopeFactor = 1.08;
constexpr double kSafetyScale = 1.2;
constexpr double kModifiedIscCap = 0.915;
// (1.0 - 0.04)^15 replaces (ISC - 0.02)^15 once a Safety term pushes ISC past 1.
constexpr double kClampedPowerBase = 1.0 - 0.04;

bool is_rvss(const ParsedVector& v) { return v.scheme() == Scheme::Rvss10; }

double weight(const ParsedVector& v, std::string_view key, bool scope_changed = false) {
  return Catalog::get(v.scheme()).weight(key, v.code_or_default(key), scope_changed);
}

/// Weight of a Modified metric, falling back to its base counterpart on X.
double modified_weight(const ParsedVector& v, std::string_view modified_key,
                       std::string_view base_key, bool scope_changed = false) {
  const auto code = v.code_or_default(modified_key);
  const auto& catalog = Catalog::get(v.scheme());
  if (code == "X") return catalog.weight(base_key, v.code_or_default(base_key), scope_changed);
  return catalog.weight(modified_key, code, scope_changed);
}

bool base_scope_changed(const ParsedVector& v) { return v.code_or_default("S") == "C"; }

bool modified_scope_changed(const ParsedVector& v) {
  const auto ms = v.code_or_default("MS");
  return ms == "X" ? base_scope_changed(v) : ms == "C";
}

double impact_from_isc(double isc, bool scope_changed, bool allow_clamp) {
  if (!scope_changed) return kUnchangedImpactScale * isc;
  const double power_base = (allow_clamp && isc > 1.0) ? kClampedPowerBase : isc - 0.02;
  return 7.52 * (isc - 0.029) - 3.25 * std::pow(power_base, 15);
}

double combine(double impact, double exploitability, bool scope_changed) {
  const double sum = impact + exploitability;
  return round_up(std::min(scope_changed ? kChangedScopeFactor * sum : sum, 10.0));
}

double temporal_multiplier(const ParsedVector& v) {
  return weight(v, "E") * weight(v, "RL") * weight(v, "RC");
}

}  // namespace

double round_up(double x) {
  const std::int64_t units = std::llround(x * 10000.0);
  if (units % 1000 == 0) return static_cast<double>(units) / 10000.0;
  // ceil(units / 1000) for either sign
  const std::int64_t tenths = units > 0 ? units / 1000 + 1 : units / 1000;
  return static_cast<double>(tenths) / 10.0;
}

std::string_view to_string(Severity severity) {
  switch (severity) {
  case Severity::None: return "None";
  case Severity::Low: return "Low";
  case Severity::Medium: return "Medium";
  case Severity::High: return "High";
  case Severity::Critical: return "Critical";
  }
  return "";
}

Severity severity_rating(double score) {
  const auto tenths = std::llround(score * 10.0);
  if (tenths <= 0) return Severity::None;
  if (tenths < 40) return Severity::Low;
  if (tenths < 70) return Severity::Medium;
  if (tenths < 90) return Severity::High;
  return Severity::Critical;
}

double exploitability_subscore(const ParsedVector& v) {
  const bool changed = base_scope_changed(v);
  double e = kExploitabilityScale * v.attack_vector_weight("AV") * weight(v, "AC") *
             weight(v, "PR", changed) * weight(v, "UI");
  if (is_rvss(v)) e *= weight(v, "Y");
  return e;
}

ImpactSubscore impact_subscore(const ParsedVector& v) {
  double isc = 1.0 - (1.0 - weight(v, "C")) * (1.0 - weight(v, "I")) * (1.0 - weight(v, "A"));
  if (is_rvss(v)) isc += kSafetyScale * weight(v, "H");
  return {isc, impact_from_isc(isc, base_scope_changed(v), is_rvss(v))};
}

double base_score(const ParsedVector& v) {
  const auto impact = impact_subscore(v).impact;
  if (impact <= 0.0) return 0.0;
  return combine(impact, exploitability_subscore(v), base_scope_changed(v));
}

double temporal_score(const ParsedVector& v) {
  return round_up(base_score(v) * temporal_multiplier(v));
}

ModifiedSubscores modified_subscores(const ParsedVector& v) {
  const bool changed = modified_scope_changed(v);

  const auto mav = v.code_or_default("MAV") == "X" ? v.attack_vector_weight("AV")
                                                   : v.attack_vector_weight("MAV");
  const auto mpr_code = v.code_or_default("MPR") == "X" ? v.code_or_default("PR")
                                                        : v.code_or_default("MPR");
  const auto mpr = Catalog::get(v.scheme()).weight("PR", mpr_code, changed);
  double exploitability = kExploitabilityScale * mav * modified_weight(v, "MAC", "AC") * mpr *
                          modified_weight(v, "MUI", "UI");
  if (is_rvss(v)) exploitability *= modified_weight(v, "MY", "Y");

  double product = (1.0 - modified_weight(v, "MC", "C") * weight(v, "CR")) *
                   (1.0 - modified_weight(v, "MI", "I") * weight(v, "IR")) *
                   (1.0 - modified_weight(v, "MA", "A") * weight(v, "AR"));
  double safety_term = 0.0;
  if (is_rvss(v)) {
    const double hr = weight(v, "HR");
    if (v.code_or_default("MH") == "X") {
      // Not Defined defers to base Safety's own contribution.
      safety_term = kSafetyScale * weight(v, "H") * hr;
    } else {
      const double mh = weight(v, "MH");
      product *= 1.0 - mh * hr;
      safety_term = kSafetyScale * mh * hr;
    }
  }
  const double isc = std::min(1.0 - product, kModifiedIscCap) + safety_term;
  return {exploitability, isc, impact_from_isc(isc, changed, is_rvss(v))};
}

double environmental_score(const ParsedVector& v) {
  const auto m = modified_subscores(v);
  if (m.impact <= 0.0) return 0.0;
  const double inner = combine(m.impact, m.exploitability, modified_scope_changed(v));
  return round_up(inner * temporal_multiplier(v));
}

bool has_environmental_metrics(const ParsedVector& v) {
  const auto& catalog = Catalog::get(v.scheme());
  return std::any_of(v.assignments().begin(), v.assignments().end(), [&](const Assignment& a) {
    return catalog.find(a.key)->group == MetricGroup::Environmental && value_text(a.value) != "X";
  });
}

ScoreResult score(const ParsedVector& v, bool include_modified) {
  ScoreResult r;
  r.scores = {base_score(v), temporal_score(v), environmental_score(v)};
  r.severities = {severity_rating(r.scores.base), severity_rating(r.scores.temporal),
                  severity_rating(r.scores.environmental)};

  const auto impact = impact_subscore(v);
  r.subscores.exploitability = exploitability_subscore(v);
  r.subscores.isc_base = impact.isc;
  r.subscores.impact = impact.impact;
  if (include_modified || has_environmental_metrics(v)) {
    const auto m = modified_subscores(v);
    r.subscores.m_exploitability = m.exploitability;
    r.subscores.isc_modified = m.isc;
    r.subscores.m_impact = m.impact;
  }
  return r;
}

}  // namespace rvss
