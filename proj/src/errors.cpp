#include "rvss/errors.hpp"

#include <utility>

namespace rvss {

std::string_view to_string(ErrorCode code) {
  switch (code) {
  case ErrorCode::BadPrefix: return "BadPrefix";
  case ErrorCode::BadSegment: return "BadSegment";
  case ErrorCode::UnknownMetric: return "UnknownMetric";
  case ErrorCode::UnknownValue: return "UnknownValue";
  case ErrorCode::DuplicateMetric: return "DuplicateMetric";
  case ErrorCode::MissingMandatory: return "MissingMandatory";
  case ErrorCode::IllegalComposition: return "IllegalComposition";
  }
  return "Unknown";
}

VectorError::VectorError(ErrorCode code, std::string token, std::string detail,
                         std::optional<std::size_t> segment)
    : std::runtime_error(std::move(detail)),
      code_(code),
      token_(std::move(token)),
      segment_(segment) {}

}  // namespace rvss
