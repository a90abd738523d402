#pragma once

// Ranking authors by an indicator and scoring rankings against prize-winner lists.

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "xindex/common.hpp"
#include "xindex/indicators.hpp"

namespace xindex {

enum class Category { nobel, major_prize, both };

std::string_view to_string(Category c);

enum class Indicator { x, h, acnpp, tcn, tpn };

/// Accepts "x", "h", "acnpp", "tcn", "tpn" (and the "-index" spellings).
/// Throws ConfigError otherwise.
Indicator parse_indicator(std::string_view name);
/// Short key used on the command line and in file names: "x", "h", ...
std::string_view indicator_key(Indicator ind);
/// Column label used in report tables: "x-index", "h-index", "ACNPP", ...
std::string_view indicator_label(Indicator ind);

class GoldStandard {
 public:
  GoldStandard() = default;
  explicit GoldStandard(std::string label) : label_(std::move(label)) {}

  /// Canonicalizes `name`; a repeated name with a different category becomes `both`.
  void add(std::string_view name, Category category);

  bool contains(std::string_view canonical_name) const {
    return members_.find(canonical_name) != members_.end();
  }
  std::optional<Category> category(std::string_view canonical_name) const;
  std::size_t size() const { return members_.size(); }
  bool empty() const { return members_.empty(); }
  const std::map<std::string, Category, std::less<>>& members() const { return members_; }

  const std::string& label() const { return label_; }
  void set_label(std::string label) { label_ = std::move(label); }

  /// Members that won a Nobel prize (category nobel or both).
  GoldStandard nobel_only() const;

  std::size_t malformed_rows() const { return malformed_; }

 private:
  friend GoldStandard load_gold_standard(std::istream&, std::string, char);

  std::string label_;
  std::map<std::string, Category, std::less<>> members_;
  std::size_t malformed_ = 0;
};

/// Reads `name,category` rows (category nobel or major_prize). Malformed rows are
/// counted and skipped.
GoldStandard load_gold_standard(std::istream& in, std::string label = {}, char delimiter = ',');

struct RankedEntry {
  std::uint64_t rank = 0;  // 1-based
  std::string author;
  Rational value;
  std::uint64_t tcn = 0;
};

using RankedList = std::vector<RankedEntry>;

/// Sorted by indicator descending, then TCN descending, then name ascending.
/// Throws ArgumentError on empty scores.
RankedList rank_authors(const IndicatorScores& scores, Indicator indicator);

/// |top min(n, len) ∩ gold| / n. Throws ArgumentError for n == 0.
Rational precision_at_n(const RankedList& ranked, const GoldStandard& gold, std::uint64_t n);

/// Mean over all gold members of the precision at the member's rank; members
/// missing from the ranking contribute 0. Throws ArgumentError for an empty gold set.
Rational average_precision(const RankedList& ranked, const GoldStandard& gold);

inline const std::vector<std::uint64_t> kDefaultCutoffs = {10, 20, 30, 40, 50, 100};

struct EvalTable {
  std::string gold_label;
  std::size_t gold_size = 0;
  /// precision[i][j]: indicator i, cutoff j.
  std::vector<std::vector<Rational>> precision;
  std::vector<Rational> average_precision;
};

struct ListingRow {
  std::uint64_t rank = 0;
  RankedEntry by_x;
  RankedEntry by_h;
};

struct EvalReport {
  std::vector<Indicator> indicators;
  std::vector<std::uint64_t> cutoffs;
  std::vector<EvalTable> tables;
  /// Top-k by x-index and by h-index side by side.
  std::vector<ListingRow> listing;
  /// Winner categories used to annotate the listing, merged across gold sets.
  std::map<std::string, Category> annotations;
};

EvalReport evaluate(const IndicatorScores& scores, const std::vector<GoldStandard>& gold_sets,
                    const std::vector<Indicator>& indicators,
                    const std::vector<std::uint64_t>& cutoffs = kDefaultCutoffs,
                    std::uint64_t top_k = 20);

/// "*" for nobel, "#" for major_prize, "*#" for both.
std::string_view winner_mark(Category c);

}  // namespace xindex
