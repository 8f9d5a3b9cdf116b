#pragma once

#include <json.hpp>

#include "rvss/catalog.hpp"
#include "rvss/scoring.hpp"

namespace rvss {

using Json = nlohmann::ordered_json;

/// Scores are emitted at one decimal, sub-scores at six.
double round_to(double value, int decimals);

Json to_json(const ScoreTriple& triple);
Json to_json(const SeverityTriple& severities);
Json to_json(const SubScores& subscores);

/// {scheme, vector, canonicalVector, scores, severities[, subscores]}
/// The same object backs `score --json` and POST /api/v1/score.
Json score_report(const ParsedVector& vector, bool with_subscores);

/// {scheme, prefix, metrics:[{key, name, group, subgroup, mandatory, values:[...]}]}
/// RVSS AV/MAV additionally list their legal `combinations`.
Json catalog_export(Scheme scheme);

}  // namespace rvss
