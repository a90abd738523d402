#pragma once

// Delimiter-separated values: RFC 4180 style quoting with a configurable delimiter.

#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace xindex::dsv {

using Row = std::vector<std::string>;

class Reader {
 public:
  /// Leading lines that start with '#' (config echoes) are skipped before the header.
  explicit Reader(std::istream& in, char delimiter = ',');

  /// Next record, or nullopt at end of stream. Quoted fields may span lines.
  /// Sets `malformed()` when the record has an unterminated quote.
  std::optional<Row> next();

  /// Line number (1-based) where the last returned record started.
  std::size_t line() const { return record_line_; }
  bool malformed() const { return malformed_; }

 private:
  std::istream& in_;
  char delim_;
  std::size_t line_no_ = 0;
  std::size_t record_line_ = 0;
  bool at_start_ = true;
  bool malformed_ = false;
};

/// Quotes the field only when it contains the delimiter, a quote or a line break.
std::string escape(std::string_view field, char delimiter = ',');

void write_row(std::ostream& out, const Row& row, char delimiter = ',');

/// Splits on `sep` without any quoting rules.
std::vector<std::string> split(std::string_view text, char sep);

std::string_view trim(std::string_view s);

}  // namespace xindex::dsv
