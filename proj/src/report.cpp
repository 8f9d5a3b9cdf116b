#include "rvss/report.hpp"

#include <cmath>

namespace rvss {

double round_to(double value, int decimals) {
  const double scale = std::pow(10.0, decimals);
  return static_cast<double>(std::llround(value * scale)) / scale;
}

Json to_json(const ScoreTriple& triple) {
  return Json{{"base", round_to(triple.base, 1)},
              {"temporal", round_to(triple.temporal, 1)},
              {"environmental", round_to(triple.environmental, 1)}};
}

Json to_json(const SeverityTriple& s) {
  return Json{{"base", to_string(s.base)},
              {"temporal", to_string(s.temporal)},
              {"environmental", to_string(s.environmental)}};
}

Json to_json(const SubScores& s) {
  Json out{{"exploitability", round_to(s.exploitability, 6)},
           {"iscBase", round_to(s.isc_base, 6)},
           {"impact", round_to(s.impact, 6)}};
  if (s.m_exploitability) out["mExploitability"] = round_to(*s.m_exploitability, 6);
  if (s.isc_modified) out["iscModified"] = round_to(*s.isc_modified, 6);
  if (s.m_impact) out["mImpact"] = round_to(*s.m_impact, 6);
  return out;
}

Json score_report(const ParsedVector& vector, bool with_subscores) {
  const auto result = score(vector);
  Json out{{"scheme", scheme_id(vector.scheme())},
           {"vector", vector.source_text().empty() ? serialize(vector) : vector.source_text()},
           {"canonicalVector", serialize(vector)},
           {"scores", to_json(result.scores)},
           {"severities", to_json(result.severities)}};
  if (with_subscores) out["subscores"] = to_json(result.subscores);
  return out;
}

namespace {

Json value_json(const ValueDefinition& v) {
  Json out{{"code", v.code}, {"name", v.name}, {"weight", v.weight}};
  if (v.weight_scope_changed) out["weightScopeChanged"] = *v.weight_scope_changed;
  if (!v.aliases.empty()) out["aliases"] = v.aliases;
  return out;
}

}  // namespace

Json catalog_export(Scheme scheme) {
  Json metrics = Json::array();
  for (const auto& m : list_metrics(scheme)) {
    Json values = Json::array();
    for (const auto& v : m.values) values.push_back(value_json(v));
    Json entry{{"key", m.key},
               {"name", m.name},
               {"group", to_string(m.group)},
               {"subgroup", to_string(m.subgroup)},
               {"mandatory", m.mandatory},
               {"values", std::move(values)}};
    if (scheme == Scheme::Rvss10 && (m.key == "AV" || m.key == "MAV")) {
      Json combos = Json::array();
      for (const auto& av : all_attack_vectors()) {
        if (av.network && av.physical) {
          combos.push_back({{"code", av.to_string()}, {"weight", round_to(av.weight(), 6)}});
        }
      }
      entry["combinations"] = std::move(combos);
    }
    metrics.push_back(std::move(entry));
  }
  return Json{{"scheme", scheme_id(scheme)},
              {"prefix", scheme_prefix(scheme)},
              {"metrics", std::move(metrics)}};
}

}  // namespace rvss
