#pragma once

// Per-author bibliometric indicators: TPN, TCN, ACNPP, h-index and x-index.
//
// The x-index of an author is the largest integer x such that at least x of the
// author's papers each receive at least x citations from papers whose influence
// (mean ACNPP of the citing paper's authors) is at least x.

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "xindex/common.hpp"
#include "xindex/corpus.hpp"

namespace xindex {

struct AuthorStats {
  std::uint64_t tpn = 0;
  std::uint64_t tcn = 0;
  Rational acnpp;  // tcn / tpn, exact

  bool operator==(const AuthorStats&) const = default;
};

AuthorStats author_stats(const CitationGraph& graph, AuthorIndex author);
/// Throws NotFoundError for an unknown canonical name.
AuthorStats author_stats(const CitationGraph& graph, std::string_view author);

/// Stats for every author, indexed by AuthorIndex.
std::vector<AuthorStats> all_author_stats(const CitationGraph& graph, unsigned workers = 1);

/// Mean ACNPP over the paper's distinct authors; 0 for an authorless paper.
Rational paper_influence(const CitationGraph& graph, std::span<const AuthorStats> stats,
                         PaperIndex paper);

/// Largest h such that at least h of the counts are >= h.
std::uint64_t h_index(std::vector<std::uint64_t> counts);

/// Per-paper influence values plus, for every cited paper, its citers' influence
/// floors sorted descending. Since x is an integer, influence >= x iff
/// floor(influence) >= x, so an influential-citation count is one binary search.
class InfluenceIndex {
 public:
  InfluenceIndex() = default;
  InfluenceIndex(const CitationGraph& graph, std::span<const AuthorStats> stats,
                 unsigned workers = 1);

  const Rational& influence(PaperIndex p) const { return influence_[p]; }
  std::uint64_t influence_floor(PaperIndex p) const { return floor_[p]; }
  std::size_t paper_count() const { return influence_.size(); }

  /// Number of citers of `p` whose influence is >= x.
  std::uint32_t influential_citation_count(PaperIndex p, std::uint64_t x) const;

 private:
  std::vector<Rational> influence_;
  std::vector<std::uint64_t> floor_;
  std::vector<std::uint32_t> offsets_;
  std::vector<std::uint64_t> sorted_citer_floors_;
};

/// Throws NotFoundError for an unknown paper id.
std::uint32_t influential_citation_count(const CitationGraph& graph,
                                         const InfluenceIndex& influences,
                                         std::string_view paper_id, std::uint64_t x);

/// Binary search over x in [0, h]; the qualifying predicate is monotone in x.
std::uint64_t x_index(const CitationGraph& graph, const InfluenceIndex& influences,
                      AuthorIndex author);
/// Throws NotFoundError for an unknown canonical name.
std::uint64_t x_index(const CitationGraph& graph, const InfluenceIndex& influences,
                      std::string_view author);
/// Same result as x_index, by scanning x upward from 0.
std::uint64_t x_index_linear(const CitationGraph& graph, const InfluenceIndex& influences,
                             AuthorIndex author);

/// h-index of an author from the graph's citation counts.
std::uint64_t author_h_index(const CitationGraph& graph, AuthorIndex author);

struct AuthorScore {
  std::string author;
  std::uint64_t x = 0;
  std::uint64_t h = 0;
  Rational acnpp;
  std::uint64_t tcn = 0;
  std::uint64_t tpn = 0;

  bool operator==(const AuthorScore&) const = default;
};

/// One record per author, in canonical-name order.
using IndicatorScores = std::vector<AuthorScore>;

/// Scores every author. `workers` = 0 uses all hardware threads; the result does
/// not depend on the worker count.
IndicatorScores compute_all(const CitationGraph& graph, unsigned workers = 0);

/// Scores table: author,x_index,h_index,acnpp,tcn,tpn,acnpp_decimal.
/// `echo` lines are written first, each prefixed with "# ".
void write_scores(std::ostream& out, const IndicatorScores& scores,
                  const std::vector<std::string>& echo = {});
/// Throws CorpusError on a malformed row.
IndicatorScores read_scores(std::istream& in);

}  // namespace xindex
