#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "rvss/catalog.hpp"

namespace rvss {

enum class NetworkToken { Remote, Adjacent, Internal };   // RN, AN, IN
enum class PhysicalToken { Public, Restricted, Isolated };  // PP, PR, PI

std::string_view to_code(NetworkToken token);
std::string_view to_code(PhysicalToken token);

/// RVSS attack vector: a single token, or one network token followed by one
/// physical token. Its weight is the product of the component weights.
struct CompositeAV {
  std::optional<NetworkToken> network;
  std::optional<PhysicalToken> physical;
  bool local = false;

  double weight() const;
  std::string to_string() const;

  friend bool operator==(const CompositeAV&, const CompositeAV&) = default;
};

/// Splits an RVSS attack-vector value ("ANPI", "L", "RN", ...).
/// Throws VectorError(IllegalComposition) for anything outside the grammar.
CompositeAV tokenize_av(std::string_view value_text);

/// Every legal composite value in canonical token order (singles, then pairs).
std::vector<CompositeAV> all_attack_vectors();

using MetricValue = std::variant<std::string, CompositeAV>;

std::string value_text(const MetricValue& value);

struct Assignment {
  std::string key;
  MetricValue value;

  friend bool operator==(const Assignment&, const Assignment&) = default;
};

/// A decoded vector. Assignments are stored in canonical catalog order with
/// canonical value codes (aliases resolved). Equality ignores `source_text`.
class ParsedVector {
public:
  ParsedVector(Scheme scheme, std::vector<Assignment> assignments, std::string source_text = {});

  Scheme scheme() const noexcept { return scheme_; }
  const std::vector<Assignment>& assignments() const noexcept { return assignments_; }
  const std::string& source_text() const noexcept { return source_text_; }

  const Assignment* find(std::string_view key) const;
  /// Code for simple metrics; "X" when an optional metric is absent.
  /// Composite AV values are returned in their textual form.
  std::string code_or_default(std::string_view key) const;
  /// Effective attack vector; works for both schemes' AV and MAV (not X).
  double attack_vector_weight(std::string_view key) const;

  friend bool operator==(const ParsedVector& a, const ParsedVector& b) {
    return a.scheme_ == b.scheme_ && a.assignments_ == b.assignments_;
  }

private:
  Scheme scheme_;
  std::vector<Assignment> assignments_;
  std::string source_text_;
};

/// Parses "<PREFIX>/KEY:VALUE/...". Throws VectorError.
ParsedVector parse(std::string_view text);

/// Canonical vector string: catalog key order, canonical codes, explicit X kept.
std::string serialize(const ParsedVector& vector);

}  // namespace rvss
