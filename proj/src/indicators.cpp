#include "xindex/indicators.hpp"

#include <algorithm>
#include <charconv>
#include <functional>
#include <istream>
#include <ostream>

#include "xindex/dsv.hpp"
#include "xindex/parallel.hpp"

namespace xindex {

namespace {

bool qualifies(const CitationGraph& graph, const InfluenceIndex& influences, AuthorIndex author,
               std::uint64_t x) {
  if (x == 0) return true;
  std::uint64_t papers = 0;
  for (auto p : graph.author_papers(author)) {
    if (influences.influential_citation_count(p, x) >= x && ++papers >= x) return true;
  }
  return false;
}

std::uint64_t parse_u64(const std::string& s, std::size_t line, const char* what) {
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) {
    throw CorpusError("scores line " + std::to_string(line) + ": bad " + what);
  }
  return v;
}

}  // namespace

AuthorStats author_stats(const CitationGraph& graph, AuthorIndex author) {
  AuthorStats s;
  for (auto p : graph.author_papers(author)) {
    ++s.tpn;
    s.tcn += graph.citation_count(p);
  }
  s.acnpp = s.tpn == 0 ? Rational(0) : Rational(s.tcn, s.tpn);
  return s;
}

AuthorStats author_stats(const CitationGraph& graph, std::string_view author) {
  return author_stats(graph, graph.author_index(author));
}

std::vector<AuthorStats> all_author_stats(const CitationGraph& graph, unsigned workers) {
  std::vector<AuthorStats> stats(graph.author_count());
  parallel_for(stats.size(), workers, [&](std::size_t begin, std::size_t end) {
    for (auto a = begin; a < end; ++a) stats[a] = author_stats(graph, static_cast<AuthorIndex>(a));
  });
  return stats;
}

Rational paper_influence(const CitationGraph& graph, std::span<const AuthorStats> stats,
                         PaperIndex paper) {
  const auto authors = graph.paper_authors(paper);
  if (authors.empty()) return Rational(0);
  Rational sum = 0;
  for (auto a : authors) sum += stats[a].acnpp;
  return sum / authors.size();
}

std::uint64_t h_index(std::vector<std::uint64_t> counts) {
  std::sort(counts.begin(), counts.end(), std::greater<>());
  std::uint64_t h = 0;
  while (h < counts.size() && counts[h] >= h + 1) ++h;
  return h;
}

InfluenceIndex::InfluenceIndex(const CitationGraph& graph, std::span<const AuthorStats> stats,
                               unsigned workers) {
  const std::size_t n = graph.paper_count();
  influence_.resize(n);
  floor_.resize(n);
  parallel_for(n, workers, [&](std::size_t begin, std::size_t end) {
    for (auto p = begin; p < end; ++p) {
      influence_[p] = paper_influence(graph, stats, static_cast<PaperIndex>(p));
      floor_[p] = floor_to_u64(influence_[p]);
    }
  });

  offsets_.resize(n + 1);
  offsets_[0] = 0;
  for (std::size_t p = 0; p < n; ++p) {
    offsets_[p + 1] = offsets_[p] + graph.citation_count(static_cast<PaperIndex>(p));
  }
  sorted_citer_floors_.resize(offsets_[n]);
  parallel_for(n, workers, [&](std::size_t begin, std::size_t end) {
    for (auto p = begin; p < end; ++p) {
      auto out = sorted_citer_floors_.begin() + offsets_[p];
      const auto citers = graph.citers(static_cast<PaperIndex>(p));
      for (std::size_t i = 0; i < citers.size(); ++i) out[i] = floor_[citers[i]];
      std::sort(out, out + citers.size(), std::greater<>());
    }
  });
}

std::uint32_t InfluenceIndex::influential_citation_count(PaperIndex p, std::uint64_t x) const {
  const auto first = sorted_citer_floors_.begin() + offsets_[p];
  const auto last = sorted_citer_floors_.begin() + offsets_[p + 1];
  const auto cut = std::partition_point(first, last, [x](std::uint64_t f) { return f >= x; });
  return static_cast<std::uint32_t>(cut - first);
}

std::uint32_t influential_citation_count(const CitationGraph& graph,
                                         const InfluenceIndex& influences,
                                         std::string_view paper_id, std::uint64_t x) {
  return influences.influential_citation_count(graph.paper_index(paper_id), x);
}

std::uint64_t author_h_index(const CitationGraph& graph, AuthorIndex author) {
  std::vector<std::uint64_t> counts;
  const auto papers = graph.author_papers(author);
  counts.reserve(papers.size());
  for (auto p : papers) counts.push_back(graph.citation_count(p));
  return h_index(std::move(counts));
}

std::uint64_t x_index(const CitationGraph& graph, const InfluenceIndex& influences,
                      AuthorIndex author) {
  // qualifies() is true at 0 and monotone non-increasing, and x <= h always
  std::uint64_t lo = 0;
  std::uint64_t hi = author_h_index(graph, author);
  while (lo < hi) {
    const std::uint64_t mid = lo + (hi - lo + 1) / 2;
    if (qualifies(graph, influences, author, mid)) {
      lo = mid;
    } else {
      hi = mid - 1;
    }
  }
  return lo;
}

std::uint64_t x_index(const CitationGraph& graph, const InfluenceIndex& influences,
                      std::string_view author) {
  return x_index(graph, influences, graph.author_index(author));
}

std::uint64_t x_index_linear(const CitationGraph& graph, const InfluenceIndex& influences,
                             AuthorIndex author) {
  std::uint64_t x = 0;
  while (qualifies(graph, influences, author, x + 1)) ++x;
  return x;
}

IndicatorScores compute_all(const CitationGraph& graph, unsigned workers) {
  const auto stats = all_author_stats(graph, workers);
  const InfluenceIndex influences(graph, stats, workers);
  IndicatorScores scores(graph.author_count());
  parallel_for(scores.size(), workers, [&](std::size_t begin, std::size_t end) {
    for (auto i = begin; i < end; ++i) {
      const auto a = static_cast<AuthorIndex>(i);
      auto& s = scores[i];
      s.author = graph.author_name(a);
      s.h = author_h_index(graph, a);
      s.x = x_index(graph, influences, a);
      s.acnpp = stats[a].acnpp;
      s.tcn = stats[a].tcn;
      s.tpn = stats[a].tpn;
    }
  });
  return scores;
}

void write_scores(std::ostream& out, const IndicatorScores& scores,
                  const std::vector<std::string>& echo) {
  for (const auto& line : echo) out << "# " << line << '\n';
  dsv::write_row(out, {"author", "x_index", "h_index", "acnpp", "tcn", "tpn", "acnpp_decimal"});
  for (const auto& s : scores) {
    dsv::write_row(out, {s.author, std::to_string(s.x), std::to_string(s.h),
                         to_fraction_string(s.acnpp), std::to_string(s.tcn),
                         std::to_string(s.tpn), to_decimal_string(s.acnpp, 4)});
  }
}

IndicatorScores read_scores(std::istream& in) {
  dsv::Reader reader(in);
  IndicatorScores scores;
  const auto header = reader.next();
  if (!header) return scores;
  if (header->size() < 6 || (*header)[0] != "author") {
    throw CorpusError("scores header must start with author,x_index,h_index,acnpp,tcn,tpn");
  }
  while (auto row = reader.next()) {
    if (reader.malformed() || row->size() < 6) {
      throw CorpusError("scores line " + std::to_string(reader.line()) + ": missing columns");
    }
    AuthorScore s;
    s.author = (*row)[0];
    s.x = parse_u64((*row)[1], reader.line(), "x_index");
    s.h = parse_u64((*row)[2], reader.line(), "h_index");
    try {
      s.acnpp = parse_fraction((*row)[3]);
    } catch (const ArgumentError&) {
      throw CorpusError("scores line " + std::to_string(reader.line()) + ": bad acnpp");
    }
    s.tcn = parse_u64((*row)[4], reader.line(), "tcn");
    s.tpn = parse_u64((*row)[5], reader.line(), "tpn");
    scores.push_back(std::move(s));
  }
  return scores;
}

}  // namespace xindex
