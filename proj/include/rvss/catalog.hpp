#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace rvss {

enum class Scheme { Cvss30, Rvss10 };

inline constexpr Scheme kAllSchemes[] = {Scheme::Cvss30, Scheme::Rvss10};

/// "CVSS_3_0" / "RVSS_1_0".
std::string_view scheme_id(Scheme scheme);
/// Vector prefix: "CVSS:3.0" / "RVSS:1.0".
std::string_view scheme_prefix(Scheme scheme);
/// Short name used by the CLI and the HTTP routes: "cvss3" / "rvss1".
std::string_view scheme_short_name(Scheme scheme);
std::optional<Scheme> scheme_from_short_name(std::string_view name);

enum class MetricGroup { Base, Temporal, Environmental };
enum class Subgroup { None, Exploitability, Impact };

std::string_view to_string(MetricGroup group);
std::string_view to_string(Subgroup subgroup);

struct ValueDefinition {
  std::string code;
  std::string name;
  double weight = 0.0;
  // Only PR/MPR Low and High carry a changed-scope variant.
  std::optional<double> weight_scope_changed;
  std::vector<std::string> aliases;
};

struct MetricDefinition {
  std::string key;
  std::string name;
  MetricGroup group = MetricGroup::Base;
  Subgroup subgroup = Subgroup::None;
  bool mandatory = false;
  std::vector<ValueDefinition> values;

  /// Resolves canonical codes and aliases; nullptr if the code is not legal.
  const ValueDefinition* find_value(std::string_view code) const;
};

/// Immutable per-scheme metric catalog. Metrics are held in canonical vector
/// order: mandatory Base metrics first, then Temporal, then Environmental.
class Catalog {
public:
  static const Catalog& get(Scheme scheme);

  Scheme scheme() const noexcept { return scheme_; }
  std::span<const MetricDefinition> metrics() const noexcept { return metrics_; }

  const MetricDefinition* find(std::string_view key) const;
  /// Position of `key` in canonical order; throws UnknownMetric.
  std::size_t index_of(std::string_view key) const;

  /// Throws VectorError(UnknownMetric | UnknownValue).
  double weight(std::string_view key, std::string_view code, bool scope_changed) const;

  /// "X" for optional metrics, nullopt for mandatory ones. Throws UnknownMetric.
  std::optional<std::string> default_code(std::string_view key) const;

private:
  Catalog(Scheme scheme, std::vector<MetricDefinition> metrics);

  Scheme scheme_;
  std::vector<MetricDefinition> metrics_;
};

std::span<const MetricDefinition> list_metrics(Scheme scheme);
double lookup_weight(Scheme scheme, std::string_view key, std::string_view code,
                     bool scope_changed);
std::optional<std::string> default_assignment(Scheme scheme, std::string_view key);

}  // namespace rvss
