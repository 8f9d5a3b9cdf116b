#include "rvss/catalog.hpp"

#include <algorithm>
#include <utility>

#include "rvss/errors.hpp"

namespace rvss {

std::string_view scheme_id(Scheme scheme) {
  return scheme == Scheme::Cvss30 ? "CVSS_3_0" : "RVSS_1_0";
}

std::string_view scheme_prefix(Scheme scheme) {
  return scheme == Scheme::Cvss30 ? "CVSS:3.0" : "RVSS:1.0";
}

std::string_view scheme_short_name(Scheme scheme) {
  return scheme == Scheme::Cvss30 ? "cvss3" : "rvss1";
}

std::optional<Scheme> scheme_from_short_name(std::string_view name) {
  if (name == "cvss3") return Scheme::Cvss30;
  if (name == "rvss1") return Scheme::Rvss10;
  return std::nullopt;
}

std::string_view to_string(MetricGroup group) {
  switch (group) {
  case MetricGroup::Base: return "Base";
  case MetricGroup::Temporal: return "Temporal";
  case MetricGroup::Environmental: return "Environmental";
  }
  return "";
}

std::string_view to_string(Subgroup subgroup) {
  switch (subgroup) {
  case Subgroup::None: return "none";
  case Subgroup::Exploitability: return "Exploitability";
  case Subgroup::Impact: return "Impact";
  }
  return "";
}

const ValueDefinition* MetricDefinition::find_value(std::string_view code) const {
  for (const auto& value : values) {
    if (value.code == code) return &value;
    if (std::find(value.aliases.begin(), value.aliases.end(), code) != value.aliases.end()) {
      return &value;
    }
  }
  return nullptr;
}

namespace {

using Values = std::vector<ValueDefinition>;

ValueDefinition val(std::string code, std::string name, double weight) {
  return {std::move(code), std::move(name), weight, std::nullopt, {}};
}

ValueDefinition not_defined(double weight = 1.0) { return val("X", "Not Defined", weight); }

Values with_not_defined(Values values, double nd_weight = 1.0) {
  values.insert(values.begin(), not_defined(nd_weight));
  return values;
}

MetricDefinition metric(std::string key, std::string name, MetricGroup group, Subgroup sub,
                        bool mandatory, Values values) {
  return {std::move(key), std::move(name), group, sub, mandatory, std::move(values)};
}

Values cvss_attack_vector() {
  return {val("N", "Network", 0.85), val("A", "Adjacent Network", 0.62),
          val("L", "Local", 0.55), val("P", "Physical", 0.2)};
}

Values rvss_attack_vector() {
  return {val("RN", "Remote Network", 0.85),   val("AN", "Adjacent Network", 0.62),
          val("IN", "Internal Network", 0.4),  val("L", "Local", 0.55),
          val("PP", "Physical Public", 0.62),  val("PR", "Physical Restricted", 0.4),
          val("PI", "Physical Isolated", 0.2)};
}

Values attack_complexity() { return {val("L", "Low", 0.77), val("H", "High", 0.44)}; }

Values privileges_required() {
  Values v{val("N", "None", 0.85), val("L", "Low", 0.62), val("H", "High", 0.27)};
  v[1].weight_scope_changed = 0.68;
  v[2].weight_scope_changed = 0.50;
  return v;
}

Values user_interaction() { return {val("N", "None", 0.85), val("R", "Required", 0.62)}; }

// Scope only selects a formula branch.
Values scope() { return {val("U", "Unchanged", 0.0), val("C", "Changed", 0.0)}; }

Values cia_impact() {
  return {val("H", "High", 0.56), val("L", "Low", 0.22), val("N", "None", 0.0)};
}

// Age. Some renditions of this table give T = 1.3 (and one worked case uses
// 1.1); 1.2 is the value that reproduces the reference case-study scores.
Values age() {
  return {val("Z", "Zero Day", 1.0), val("O", "1 year or less", 1.1),
          val("T", "Less than 3 years", 1.2), val("M", "More than 3 years", 1.5),
          val("U", "Unknown", 1.0)};
}

Values safety(double environmental, double human) {
  Values v{val("U", "Unknown", 0.0), val("N", "None", 0.0),
           val("E", "Environmental", environmental), val("H", "Human", human)};
  v[3].aliases = {"HU"};
  return v;
}

Values exploit_maturity() {
  return with_not_defined({val("H", "High", 1.0), val("F", "Functional", 0.97),
                           val("P", "Proof of Concept", 0.94), val("U", "Unproven", 0.91)});
}

Values remediation_level() {
  return with_not_defined({val("U", "Unavailable", 1.0), val("W", "Workaround", 0.97),
                           val("T", "Temporary Fix", 0.96), val("O", "Official Fix", 0.95)});
}

Values report_confidence() {
  return with_not_defined(
      {val("C", "Confirmed", 1.0), val("R", "Reasonable", 0.96), val("U", "Unknown", 0.92)});
}

Values requirement() {
  return with_not_defined({val("L", "Low", 0.5), val("M", "Medium", 1.0), val("H", "High", 1.5)});
}

constexpr auto B = MetricGroup::Base;
constexpr auto T = MetricGroup::Temporal;
constexpr auto E = MetricGroup::Environmental;
constexpr auto XP = Subgroup::Exploitability;
constexpr auto IM = Subgroup::Impact;
constexpr auto NO = Subgroup::None;

std::vector<MetricDefinition> temporal_metrics() {
  return {
      metric("E", "Exploit Code Maturity", T, NO, false, exploit_maturity()),
      metric("RL", "Remediation Level", T, NO, false, remediation_level()),
      metric("RC", "Report Confidence", T, NO, false, report_confidence()),
  };
}

std::vector<MetricDefinition> cvss_metrics() {
  std::vector<MetricDefinition> m{
      metric("AV", "Attack Vector", B, XP, true, cvss_attack_vector()),
      metric("AC", "Attack Complexity", B, XP, true, attack_complexity()),
      metric("PR", "Privileges Required", B, XP, true, privileges_required()),
      metric("UI", "User Interaction", B, XP, true, user_interaction()),
      metric("S", "Scope", B, XP, true, scope()),
      metric("C", "Confidentiality", B, IM, true, cia_impact()),
      metric("I", "Integrity", B, IM, true, cia_impact()),
      metric("A", "Availability", B, IM, true, cia_impact()),
  };
  for (auto& t : temporal_metrics()) m.push_back(std::move(t));
  m.push_back(metric("CR", "Confidentiality Requirement", E, NO, false, requirement()));
  m.push_back(metric("IR", "Integrity Requirement", E, NO, false, requirement()));
  m.push_back(metric("AR", "Availability Requirement", E, NO, false, requirement()));
  m.push_back(metric("MAV", "Modified Attack Vector", E, XP, false,
                     with_not_defined(cvss_attack_vector())));
  m.push_back(metric("MAC", "Modified Attack Complexity", E, XP, false,
                     with_not_defined(attack_complexity())));
  m.push_back(metric("MPR", "Modified Privileges Required", E, XP, false,
                     with_not_defined(privileges_required())));
  m.push_back(metric("MUI", "Modified User Interaction", E, XP, false,
                     with_not_defined(user_interaction())));
  m.push_back(metric("MS", "Modified Scope", E, IM, false, with_not_defined(scope())));
  m.push_back(metric("MC", "Modified Confidentiality", E, IM, false, with_not_defined(cia_impact())));
  m.push_back(metric("MI", "Modified Integrity", E, IM, false, with_not_defined(cia_impact())));
  m.push_back(metric("MA", "Modified Availability", E, IM, false, with_not_defined(cia_impact())));
  return m;
}

std::vector<MetricDefinition> rvss_metrics() {
  std::vector<MetricDefinition> m{
      metric("AV", "Attack Vector", B, XP, true, rvss_attack_vector()),
      metric("AC", "Attack Complexity", B, XP, true, attack_complexity()),
      metric("PR", "Privileges Required", B, XP, true, privileges_required()),
      metric("UI", "User Interaction", B, XP, true, user_interaction()),
      metric("Y", "Age", B, XP, true, age()),
      metric("S", "Scope", B, XP, true, scope()),
      metric("C", "Confidentiality", B, IM, true, cia_impact()),
      metric("I", "Integrity", B, IM, true, cia_impact()),
      metric("A", "Availability", B, IM, true, cia_impact()),
      metric("H", "Safety", B, IM, true, safety(0.15, 0.35)),
  };
  for (auto& t : temporal_metrics()) m.push_back(std::move(t));
  m.push_back(metric("CR", "Confidentiality Requirement", E, NO, false, requirement()));
  m.push_back(metric("IR", "Integrity Requirement", E, NO, false, requirement()));
  m.push_back(metric("AR", "Availability Requirement", E, NO, false, requirement()));
  m.push_back(metric("HR", "Safety Requirement", E, NO, false, requirement()));
  // Composite MAV values (e.g. ANPI) are handled by the codec on top of these tokens.
  m.push_back(metric("MAV", "Modified Attack Vector", E, XP, false,
                     with_not_defined(rvss_attack_vector())));
  m.push_back(metric("MAC", "Modified Attack Complexity", E, XP, false,
                     with_not_defined(attack_complexity())));
  m.push_back(metric("MPR", "Modified Privileges Required", E, XP, false,
                     with_not_defined(privileges_required())));
  m.push_back(metric("MUI", "Modified User Interaction", E, XP, false,
                     with_not_defined(user_interaction())));
  m.push_back(metric("MY", "Modified Age", E, XP, false, with_not_defined(age())));
  m.push_back(metric("MS", "Modified Scope", E, IM, false, with_not_defined(scope())));
  m.push_back(metric("MC", "Modified Confidentiality", E, IM, false, with_not_defined(cia_impact())));
  m.push_back(metric("MI", "Modified Integrity", E, IM, false, with_not_defined(cia_impact())));
  m.push_back(metric("MA", "Modified Availability", E, IM, false, with_not_defined(cia_impact())));
  // MH:X is a sentinel meaning "defer to base Safety"; its 1.0 is never multiplied in.
  m.push_back(metric("MH", "Modified Safety", E, IM, false, with_not_defined(safety(0.56, 0.8))));
  return m;
}

}  // namespace

Catalog::Catalog(Scheme scheme, std::vector<MetricDefinition> metrics)
    : scheme_(scheme), metrics_(std::move(metrics)) {}

const Catalog& Catalog::get(Scheme scheme) {
  static const Catalog cvss{Scheme::Cvss30, cvss_metrics()};
  static const Catalog rvss{Scheme::Rvss10, rvss_metrics()};
  return scheme == Scheme::Cvss30 ? cvss : rvss;
}

const MetricDefinition* Catalog::find(std::string_view key) const {
  for (const auto& m : metrics_) {
    if (m.key == key) return &m;
  }
  return nullptr;
}

std::size_t Catalog::index_of(std::string_view key) const {
  for (std::size_t i = 0; i < metrics_.size(); ++i) {
    if (metrics_[i].key == key) return i;
  }
  throw VectorError(ErrorCode::UnknownMetric, std::string(key),
                    "unknown metric '" + std::string(key) + "'");
}

double Catalog::weight(std::string_view key, std::string_view code, bool scope_changed) const {
  const auto& def = metrics_[index_of(key)];
  const auto* value = def.find_value(code);
  if (value == nullptr) {
    throw VectorError(ErrorCode::UnknownValue, std::string(code),
                      "unknown value '" + std::string(code) + "' for metric " + def.key);
  }
  if (scope_changed && value->weight_scope_changed) return *value->weight_scope_changed;
  return value->weight;
}

std::optional<std::string> Catalog::default_code(std::string_view key) const {
  const auto& def = metrics_[index_of(key)];
  if (def.mandatory) return std::nullopt;
  return std::string("X");
}

std::span<const MetricDefinition> list_metrics(Scheme scheme) {
  return Catalog::get(scheme).metrics();
}

double lookup_weight(Scheme scheme, std::string_view key, std::string_view code,
                     bool scope_changed) {
  return Catalog::get(scheme).weight(key, code, scope_changed);
}

std::optional<std::string> default_assignment(Scheme scheme, std::string_view key) {
  return Catalog::get(scheme).default_code(key);
}

}  // namespace rvss
