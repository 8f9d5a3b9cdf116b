#include "rvss/vector_codec.hpp"

#include <algorithm>
#include <array>
#include <utility>

#include "rvss/errors.hpp"

namespace rvss {

namespace {

constexpr std::array<std::pair<std::string_view, NetworkToken>, 3> kNetworkCodes{{
    {"RN", NetworkToken::Remote},
    {"AN", NetworkToken::Adjacent},
    {"IN", NetworkToken::Internal},
}};

constexpr std::array<std::pair<std::string_view, PhysicalToken>, 3> kPhysicalCodes{{
    {"PP", PhysicalToken::Public},
    {"PR", PhysicalToken::Restricted},
    {"PI", PhysicalToken::Isolated},
}};

enum class TokenKind { Network, Physical, Local };

struct Token {
  TokenKind kind;
  NetworkToken network{};
  PhysicalToken physical{};
};

std::optional<Token> match_token(std::string_view text) {
  if (text.starts_with('L')) return Token{TokenKind::Local};
  if (text.size() < 2) return std::nullopt;
  const auto head = text.substr(0, 2);
  for (const auto& [code, token] : kNetworkCodes) {
    if (head == code) return Token{TokenKind::Network, token};
  }
  for (const auto& [code, token] : kPhysicalCodes) {
    if (head == code) return Token{TokenKind::Physical, {}, token};
  }
  return std::nullopt;
}

std::size_t token_length(const Token& token) { return token.kind == TokenKind::Local ? 1 : 2; }

[[noreturn]] void illegal_composition(std::string_view text, std::string_view why) {
  throw VectorError(ErrorCode::IllegalComposition, std::string(text),
                    "illegal attack vector composition '" + std::string(text) + "': " +
                        std::string(why));
}

bool is_attack_vector_key(std::string_view key) { return key == "AV" || key == "MAV"; }

}  // namespace

std::string_view to_code(NetworkToken token) {
  for (const auto& [code, t] : kNetworkCodes) {
    if (t == token) return code;
  }
  return "";
}

std::string_view to_code(PhysicalToken token) {
  for (const auto& [code, t] : kPhysicalCodes) {
    if (t == token) return code;
  }
  return "";
}

double CompositeAV::weight() const {
  const auto& catalog = Catalog::get(Scheme::Rvss10);
  if (local) return catalog.weight("AV", "L", false);
  double w = 1.0;
  if (network) w *= catalog.weight("AV", to_code(*network), false);
  if (physical) w *= catalog.weight("AV", to_code(*physical), false);
  return w;
}

std::string CompositeAV::to_string() const {
  if (local) return "L";
  std::string out;
  if (network) out += to_code(*network);
  if (physical) out += to_code(*physical);
  return out;
}

CompositeAV tokenize_av(std::string_view value_text) {
  if (value_text.empty()) illegal_composition(value_text, "empty value");

  std::vector<Token> tokens;
  for (std::size_t pos = 0; pos < value_text.size();) {
    const auto token = match_token(value_text.substr(pos));
    if (!token) illegal_composition(value_text, "unrecognized token");
    tokens.push_back(*token);
    pos += token_length(*token);
  }

  CompositeAV av;
  if (tokens.size() == 1) {
    const auto& t = tokens.front();
    switch (t.kind) {
    case TokenKind::Local: av.local = true; break;
    case TokenKind::Network: av.network = t.network; break;
    case TokenKind::Physical: av.physical = t.physical; break;
    }
    return av;
  }
  if (tokens.size() == 2 && tokens[0].kind == TokenKind::Network &&
      tokens[1].kind == TokenKind::Physical) {
    av.network = tokens[0].network;
    av.physical = tokens[1].physical;
    return av;
  }
  illegal_composition(value_text, "expected one network token optionally followed by one "
                                  "physical token, or L alone");
}

std::vector<CompositeAV> all_attack_vectors() {
  std::vector<CompositeAV> out;
  for (const auto& [code, n] : kNetworkCodes) out.push_back({n, std::nullopt, false});
  out.push_back({std::nullopt, std::nullopt, true});
  for (const auto& [code, p] : kPhysicalCodes) out.push_back({std::nullopt, p, false});
  for (const auto& [nc, n] : kNetworkCodes) {
    for (const auto& [pc, p] : kPhysicalCodes) out.push_back({n, p, false});
  }
  return out;
}

std::string value_text(const MetricValue& value) {
  if (const auto* code = std::get_if<std::string>(&value)) return *code;
  return std::get<CompositeAV>(value).to_string();
}

ParsedVector::ParsedVector(Scheme scheme, std::vector<Assignment> assignments,
                           std::string source_text)
    : scheme_(scheme), assignments_(std::move(assignments)), source_text_(std::move(source_text)) {
  const auto& catalog = Catalog::get(scheme_);
  std::stable_sort(assignments_.begin(), assignments_.end(),
                   [&](const Assignment& a, const Assignment& b) {
                     return catalog.index_of(a.key) < catalog.index_of(b.key);
                   });
}

const Assignment* ParsedVector::find(std::string_view key) const {
  for (const auto& a : assignments_) {
    if (a.key == key) return &a;
  }
  return nullptr;
}

std::string ParsedVector::code_or_default(std::string_view key) const {
  if (const auto* a = find(key)) return value_text(a->value);
  return "X";
}

double ParsedVector::attack_vector_weight(std::string_view key) const {
  const auto* a = find(key);
  if (a == nullptr) {
    throw VectorError(ErrorCode::UnknownValue, std::string(key),
                      "attack vector '" + std::string(key) + "' is not assigned");
  }
  if (const auto* av = std::get_if<CompositeAV>(&a->value)) return av->weight();
  return Catalog::get(scheme_).weight(key, std::get<std::string>(a->value), false);
}

ParsedVector parse(std::string_view text) {
  std::optional<Scheme> scheme;
  std::string_view rest;
  for (auto candidate : kAllSchemes) {
    const auto prefix = scheme_prefix(candidate);
    if (text.starts_with(prefix) &&
        (text.size() == prefix.size() || text[prefix.size()] == '/')) {
      scheme = candidate;
      rest = text.substr(prefix.size());
      break;
    }
  }
  if (!scheme) {
    const auto head = std::string(text.substr(0, text.find('/')));
    throw VectorError(ErrorCode::BadPrefix, head,
                      "vector must start with CVSS:3.0 or RVSS:1.0, got '" + head + "'");
  }

  const auto& catalog = Catalog::get(*scheme);
  std::vector<Assignment> assignments;
  std::vector<bool> seen(catalog.metrics().size(), false);

  std::size_t index = 0;
  while (!rest.empty()) {
    rest.remove_prefix(1);  // '/'
    ++index;
    const auto end = rest.find('/');
    const auto segment = rest.substr(0, end);
    rest = end == std::string_view::npos ? std::string_view{} : rest.substr(end);

    const auto colon = segment.find(':');
    if (colon == std::string_view::npos || colon == 0 || colon + 1 == segment.size() ||
        segment.find(':', colon + 1) != std::string_view::npos) {
      throw VectorError(ErrorCode::BadSegment, std::string(segment),
                        "segment " + std::to_string(index) + " is not KEY:VALUE: '" +
                            std::string(segment) + "'",
                        index);
    }
    const auto key = segment.substr(0, colon);
    const auto value = segment.substr(colon + 1);

    const auto* def = catalog.find(key);
    if (def == nullptr) {
      throw VectorError(ErrorCode::UnknownMetric, std::string(key),
                        "unknown metric '" + std::string(key) + "' for " +
                            std::string(scheme_prefix(*scheme)),
                        index);
    }
    const auto slot = catalog.index_of(key);
    if (seen[slot]) {
      throw VectorError(ErrorCode::DuplicateMetric, std::string(key),
                        "metric " + std::string(key) + " assigned more than once", index);
    }
    seen[slot] = true;

    if (*scheme == Scheme::Rvss10 && is_attack_vector_key(key) && value != "X") {
      if (!match_token(value)) {
        throw VectorError(ErrorCode::UnknownValue, std::string(value),
                          "unknown value '" + std::string(value) + "' for metric " +
                              std::string(key),
                          index);
      }
      assignments.push_back({std::string(key), tokenize_av(value)});
      continue;
    }

    const auto* v = def->find_value(value);
    if (v == nullptr) {
      throw VectorError(ErrorCode::UnknownValue, std::string(value),
                        "unknown value '" + std::string(value) + "' for metric " +
                            std::string(key),
                        index);
    }
    assignments.push_back({std::string(key), v->code});
  }

  std::string missing;
  const auto metrics = catalog.metrics();
  for (std::size_t i = 0; i < metrics.size(); ++i) {
    if (metrics[i].mandatory && !seen[i]) {
      if (!missing.empty()) missing += ',';
      missing += metrics[i].key;
    }
  }
  if (!missing.empty()) {
    throw VectorError(ErrorCode::MissingMandatory, missing,
                      "missing mandatory metric(s): " + missing);
  }

  return ParsedVector(*scheme, std::move(assignments), std::string(text));
}

std::string serialize(const ParsedVector& vector) {
  std::string out(scheme_prefix(vector.scheme()));
  for (const auto& a : vector.assignments()) {
    out += '/';
    out += a.key;
    out += ':';
    out += value_text(a.value);
  }
  return out;
}

}  // namespace rvss
