#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace rvss {

enum class ErrorCode {
  BadPrefix,
  BadSegment,
  UnknownMetric,
  UnknownValue,
  DuplicateMetric,
  MissingMandatory,
  IllegalComposition,
};

/// Stable machine name, shared by the CLI and the HTTP API.
std::string_view to_string(ErrorCode code);

/// Raised by the catalog and the vector codec. `token` names the offending
/// input (a key, a value code, a composite AV text, or a comma-separated key
/// list for MissingMandatory).
class VectorError : public std::runtime_error {
public:
  VectorError(ErrorCode code, std::string token, std::string detail,
              std::optional<std::size_t> segment = std::nullopt);

  ErrorCode code() const noexcept { return code_; }
  const std::string& token() const noexcept { return token_; }
  std::optional<std::size_t> segment() const noexcept { return segment_; }

private:
  ErrorCode code_;
  std::string token_;
  std::optional<std::size_t> segment_;
};

/// A source (file or stream) could not be read.
class IoError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

}  // namespace rvss
