#include "xindex/dsv.hpp"

namespace xindex::dsv {

Reader::Reader(std::istream& in, char delimiter) : in_(in), delim_(delimiter) {}

std::optional<Row> Reader::next() {
  std::string line;
  malformed_ = false;
  for (;;) {
    if (!std::getline(in_, line)) return std::nullopt;
    ++line_no_;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (at_start_ && !line.empty() && line[0] == '#') continue;
    if (line.empty()) continue;
    break;
  }
  at_start_ = false;
  record_line_ = line_no_;

  Row row;
  std::string field;
  bool quoted = false;
  std::size_t i = 0;
  for (;;) {
    if (i == line.size()) {
      if (!quoted) break;
      // quoted field continues on the next physical line
      std::string more;
      if (!std::getline(in_, more)) {
        malformed_ = true;
        break;
      }
      ++line_no_;
      if (!more.empty() && more.back() == '\r') more.pop_back();
      field += '\n';
      line = std::move(more);
      i = 0;
      continue;
    }
    const char c = line[i++];
    if (quoted) {
      if (c == '"') {
        if (i < line.size() && line[i] == '"') {
          field += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field += c;
      }
    } else if (c == '"' && field.empty()) {
      quoted = true;
    } else if (c == delim_) {
      row.push_back(std::move(field));
      field.clear();
    } else {
      field += c;
    }
  }
  row.push_back(std::move(field));
  return row;
}

std::string escape(std::string_view field, char delimiter) {
  if (field.find_first_of(std::string{delimiter, '"', '\n', '\r'}) == std::string_view::npos &&
      (field.empty() || field[0] != '#')) {
    return std::string(field);
  }
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

void write_row(std::ostream& out, const Row& row, char delimiter) {
  for (std::size_t i = 0; i < row.size(); ++i) {
    if (i) out << delimiter;
    out << escape(row[i], delimiter);
  }
  out << '\n';
}

std::vector<std::string> split(std::string_view text, char sep) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  for (;;) {
    const auto pos = text.find(sep, start);
    parts.emplace_back(text.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

std::string_view trim(std::string_view s) {
  const auto ws = " \t\r\n\f\v";
  const auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

}  // namespace xindex::dsv
