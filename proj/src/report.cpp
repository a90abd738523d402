#include "xindex/report.hpp"

#include <fstream>
#include <ostream>

#include "json.hpp"

#include "xindex/dsv.hpp"

namespace xindex {

namespace {

void write_echo(std::ostream& out, const std::vector<std::string>& echo) {
  for (const auto& line : echo) out << "# " << line << '\n';
}

std::string annotated(const EvalReport& report, const std::string& author) {
  const auto it = report.annotations.find(author);
  if (it == report.annotations.end()) return author;
  return author + " " + std::string(winner_mark(it->second));
}

std::string value_string(const Rational& v, Indicator ind) {
  return ind == Indicator::acnpp ? to_fraction_string(v) : to_decimal_string(v, 0);
}

nlohmann::json cell(const Rational& r) {
  return {{"exact", to_fraction_string(r)}, {"value", to_double(r)}};
}

std::ofstream open_for_write(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  return out;
}

void finish(std::ofstream& out, const std::filesystem::path& path) {
  out.flush();
  if (!out) throw IoError("failed writing " + path.string());
}

}  // namespace

void write_eval_table(std::ostream& out, const EvalReport& report, const EvalTable& table,
                      const std::vector<std::string>& echo) {
  write_echo(out, echo);
  dsv::Row header{"metric"};
  for (auto ind : report.indicators) header.emplace_back(indicator_label(ind));
  dsv::write_row(out, header);
  if (report.indicators.empty()) return;
  for (std::size_t j = 0; j < report.cutoffs.size(); ++j) {
    dsv::Row row{"P@" + std::to_string(report.cutoffs[j])};
    for (std::size_t i = 0; i < report.indicators.size(); ++i) {
      row.push_back(to_decimal_string(table.precision[i][j], 4));
    }
    dsv::write_row(out, row);
  }
  dsv::Row ap{"AP"};
  for (const auto& v : table.average_precision) ap.push_back(to_decimal_string(v, 4));
  dsv::write_row(out, ap);
}

void write_listing(std::ostream& out, const EvalReport& report,
                   const std::vector<std::string>& echo) {
  write_echo(out, echo);
  dsv::write_row(out, {"rank", "x_author", "x_index", "h_author", "h_index"});
  for (const auto& row : report.listing) {
    dsv::write_row(out, {std::to_string(row.rank), annotated(report, row.by_x.author),
                         value_string(row.by_x.value, Indicator::x),
                         annotated(report, row.by_h.author),
                         value_string(row.by_h.value, Indicator::h)});
  }
}

void write_report_json(std::ostream& out, const EvalReport& report,
                       const std::vector<std::string>& echo) {
  nlohmann::ordered_json doc;
  doc["config"] = echo;
  doc["indicators"] = nlohmann::json::array();
  for (auto ind : report.indicators) doc["indicators"].push_back(indicator_key(ind));
  doc["cutoffs"] = report.cutoffs;
  doc["tables"] = nlohmann::json::array();
  for (const auto& table : report.tables) {
    nlohmann::ordered_json t;
    t["gold"] = table.gold_label;
    t["gold_size"] = table.gold_size;
    nlohmann::ordered_json cells = nlohmann::ordered_json::object();
    for (std::size_t i = 0; i < report.indicators.size(); ++i) {
      nlohmann::ordered_json column;
      for (std::size_t j = 0; j < report.cutoffs.size(); ++j) {
        column["P@" + std::to_string(report.cutoffs[j])] = cell(table.precision[i][j]);
      }
      column["AP"] = cell(table.average_precision[i]);
      cells[std::string(indicator_key(report.indicators[i]))] = column;
    }
    t["cells"] = cells;
    doc["tables"].push_back(t);
  }
  doc["listing"] = nlohmann::json::array();
  for (const auto& row : report.listing) {
    nlohmann::ordered_json r;
    r["rank"] = row.rank;
    r["x_author"] = row.by_x.author;
    r["x_index"] = value_string(row.by_x.value, Indicator::x);
    r["h_author"] = row.by_h.author;
    r["h_index"] = value_string(row.by_h.value, Indicator::h);
    for (const auto* name : {&row.by_x.author, &row.by_h.author}) {
      const auto it = report.annotations.find(*name);
      if (it != report.annotations.end()) r["winners"][*name] = to_string(it->second);
    }
    doc["listing"].push_back(r);
  }
  out << doc.dump(2) << '\n';
}

std::string label_stem(const std::string& label) {
  std::string stem;
  for (char c : label) {
    const bool keep = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
                      (c >= '0' && c <= '9') || c == '-' || c == '.';
    stem += keep ? c : '_';
  }
  return stem.empty() ? "gold" : stem;
}

std::vector<std::filesystem::path> emit_report(const EvalReport& report,
                                               const std::filesystem::path& dir,
                                               const std::vector<std::string>& echo) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());

  std::vector<std::filesystem::path> written;
  for (const auto& table : report.tables) {
    const auto path = dir / ("table_" + label_stem(table.gold_label) + ".csv");
    auto out = open_for_write(path);
    write_eval_table(out, report, table, echo);
    finish(out, path);
    written.push_back(path);
  }
  {
    const auto path = dir / "listing.csv";
    auto out = open_for_write(path);
    write_listing(out, report, echo);
    finish(out, path);
    written.push_back(path);
  }
  {
    const auto path = dir / "report.json";
    auto out = open_for_write(path);
    write_report_json(out, report, echo);
    finish(out, path);
    written.push_back(path);
  }
  return written;
}

void write_ranked(std::ostream& out, const RankedList& ranked, Indicator indicator,
                  const std::vector<std::string>& echo) {
  write_echo(out, echo);
  dsv::write_row(out, {"rank", "author", std::string(indicator_key(indicator)), "tcn"});
  for (const auto& e : ranked) {
    dsv::write_row(out, {std::to_string(e.rank), e.author, value_string(e.value, indicator),
                         std::to_string(e.tcn)});
  }
}

}  // namespace xindex
