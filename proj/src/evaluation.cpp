#include "xindex/evaluation.hpp"

#include <algorithm>
#include <cctype>
#include <istream>
#include <numeric>
#include <unordered_map>

#include "xindex/corpus.hpp"
#include "xindex/dsv.hpp"

namespace xindex {

namespace {

Category merge(Category a, Category b) { return a == b ? a : Category::both; }

std::optional<Category> parse_category(std::string_view text) {
  std::string s(dsv::trim(text));
  for (auto& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (s == "nobel") return Category::nobel;
  if (s == "major_prize" || s == "major") return Category::major_prize;
  if (s == "both") return Category::both;
  return std::nullopt;
}

Rational indicator_value(const AuthorScore& s, Indicator ind) {
  switch (ind) {
    case Indicator::x: return Rational(s.x);
    case Indicator::h: return Rational(s.h);
    case Indicator::acnpp: return s.acnpp;
    case Indicator::tcn: return Rational(s.tcn);
    case Indicator::tpn: return Rational(s.tpn);
  }
  return Rational(0);
}

RankedList rank_any(const IndicatorScores& scores, Indicator indicator) {
  RankedList ranked;
  ranked.reserve(scores.size());
  for (const auto& s : scores) ranked.push_back({0, s.author, indicator_value(s, indicator), s.tcn});
  std::sort(ranked.begin(), ranked.end(), [](const RankedEntry& a, const RankedEntry& b) {
    if (a.value != b.value) return a.value > b.value;
    if (a.tcn != b.tcn) return a.tcn > b.tcn;
    return a.author < b.author;
  });
  for (std::size_t i = 0; i < ranked.size(); ++i) ranked[i].rank = i + 1;
  return ranked;
}

}  // namespace

std::string_view to_string(Category c) {
  switch (c) {
    case Category::nobel: return "nobel";
    case Category::major_prize: return "major_prize";
    case Category::both: return "both";
  }
  return "";
}

std::string_view winner_mark(Category c) {
  switch (c) {
    case Category::nobel: return "*";
    case Category::major_prize: return "#";
    case Category::both: return "*#";
  }
  return "";
}

Indicator parse_indicator(std::string_view name) {
  std::string s(dsv::trim(name));
  for (auto& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (s == "x" || s == "x-index" || s == "x_index") return Indicator::x;
  if (s == "h" || s == "h-index" || s == "h_index") return Indicator::h;
  if (s == "acnpp") return Indicator::acnpp;
  if (s == "tcn") return Indicator::tcn;
  if (s == "tpn") return Indicator::tpn;
  throw ConfigError("unknown indicator: '" + std::string(name) + "'");
}

std::string_view indicator_key(Indicator ind) {
  switch (ind) {
    case Indicator::x: return "x";
    case Indicator::h: return "h";
    case Indicator::acnpp: return "acnpp";
    case Indicator::tcn: return "tcn";
    case Indicator::tpn: return "tpn";
  }
  return "";
}

std::string_view indicator_label(Indicator ind) {
  switch (ind) {
    case Indicator::x: return "x-index";
    case Indicator::h: return "h-index";
    case Indicator::acnpp: return "ACNPP";
    case Indicator::tcn: return "TCN";
    case Indicator::tpn: return "TPN";
  }
  return "";
}

void GoldStandard::add(std::string_view name, Category category) {
  auto canonical = canonicalize_name(name);
  auto [it, inserted] = members_.emplace(std::move(canonical), category);
  if (!inserted) it->second = merge(it->second, category);
}

std::optional<Category> GoldStandard::category(std::string_view canonical_name) const {
  const auto it = members_.find(canonical_name);
  if (it == members_.end()) return std::nullopt;
  return it->second;
}

GoldStandard GoldStandard::nobel_only() const {
  GoldStandard out(label_);
  for (const auto& [name, cat] : members_) {
    if (cat != Category::major_prize) out.members_.emplace(name, cat);
  }
  return out;
}

GoldStandard load_gold_standard(std::istream& in, std::string label, char delimiter) {
  GoldStandard gold(std::move(label));
  dsv::Reader reader(in, delimiter);
  bool first = true;
  while (auto row = reader.next()) {
    if (first) {
      first = false;
      if (!row->empty() && dsv::trim((*row)[0]) == "name") continue;
    }
    if (reader.malformed() || row->size() < 2) {
      ++gold.malformed_;
      continue;
    }
    const auto cat = parse_category((*row)[1]);
    if (!cat) {
      ++gold.malformed_;
      continue;
    }
    try {
      gold.add((*row)[0], *cat);
    } catch (const NameError&) {
      ++gold.malformed_;
    }
  }
  if (in.bad()) throw IoError("failed reading gold-standard stream");
  return gold;
}

RankedList rank_authors(const IndicatorScores& scores, Indicator indicator) {
  if (scores.empty()) throw ArgumentError("cannot rank an empty score set");
  return rank_any(scores, indicator);
}

Rational precision_at_n(const RankedList& ranked, const GoldStandard& gold, std::uint64_t n) {
  if (n == 0) throw ArgumentError("P@N needs N >= 1");
  const std::size_t top = std::min<std::uint64_t>(n, ranked.size());
  std::uint64_t hits = 0;
  for (std::size_t i = 0; i < top; ++i) {
    if (gold.contains(ranked[i].author)) ++hits;
  }
  return Rational(hits, n);
}

Rational average_precision(const RankedList& ranked, const GoldStandard& gold) {
  if (gold.empty()) throw ArgumentError("average precision needs a non-empty gold set");
  Rational sum = 0;
  std::uint64_t hits = 0;
  for (std::size_t i = 0; i < ranked.size() && hits < gold.size(); ++i) {
    if (gold.contains(ranked[i].author)) {
      ++hits;
      sum += Rational(hits, i + 1);
    }
  }
  return sum / gold.size();
}

EvalReport evaluate(const IndicatorScores& scores, const std::vector<GoldStandard>& gold_sets,
                    const std::vector<Indicator>& indicators,
                    const std::vector<std::uint64_t>& cutoffs, std::uint64_t top_k) {
  EvalReport report;
  report.indicators = indicators;
  report.cutoffs = cutoffs;
  for (const auto& gold : gold_sets) {
    for (const auto& [name, cat] : gold.members()) {
      auto [it, inserted] = report.annotations.emplace(name, cat);
      if (!inserted) it->second = merge(it->second, cat);
    }
  }

  std::vector<RankedList> rankings;
  rankings.reserve(indicators.size());
  for (auto ind : indicators) rankings.push_back(rank_any(scores, ind));

  for (const auto& gold : gold_sets) {
    EvalTable table;
    table.gold_label = gold.label();
    table.gold_size = gold.size();
    for (const auto& ranked : rankings) {
      std::vector<Rational> row;
      row.reserve(cutoffs.size());
      for (auto n : cutoffs) row.push_back(precision_at_n(ranked, gold, n));
      table.precision.push_back(std::move(row));
      table.average_precision.push_back(gold.empty() ? Rational(0)
                                                     : average_precision(ranked, gold));
    }
    report.tables.push_back(std::move(table));
  }

  if (!indicators.empty()) {
    const auto by_x = rank_any(scores, Indicator::x);
    const auto by_h = rank_any(scores, Indicator::h);
    const std::size_t k = std::min<std::uint64_t>(top_k, scores.size());
    for (std::size_t i = 0; i < k; ++i) report.listing.push_back({i + 1, by_x[i], by_h[i]});
  }
  return report;
}

}  // namespace xindex
