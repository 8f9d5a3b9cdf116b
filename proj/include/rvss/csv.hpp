#pragma once

#include <cstddef>
#include <istream>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace rvss::csv {

struct Row {
  std::size_t line = 0;  // 1-based line on which the record starts
  std::vector<std::string> fields;
};

/// RFC 4180 reader: quoted fields, doubled quotes, embedded newlines, CRLF.
class Reader {
public:
  explicit Reader(std::istream& in) : in_(in) {}

  /// nullopt at end of input. Throws std::runtime_error on an unterminated quote.
  std::optional<Row> next();

private:
  std::istream& in_;
  std::size_t line_ = 1;
};

/// Quotes a field only when it contains a comma, quote, CR or LF.
std::string escape(std::string_view field);

std::string join(const std::vector<std::string>& fields);

}  // namespace rvss::csv
