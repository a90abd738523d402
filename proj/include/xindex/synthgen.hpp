#pragma once

// Seeded synthetic citation corpora.
//
// Papers are generated in publication order and cite only earlier papers, so the
// citation graph is acyclic. A citation target is drawn with probability
// proportional to (in-degree + 1)^preferential_exponent, multiplied by elite_boost
// when one of the target's authors belongs to the elite cohort.
//
// Randomness comes from std::mt19937_64 alone (its output sequence is fixed by the
// C++ standard: x[i] = x[i-312] ^ twist(...), seeded by the standard's
// initialization recurrence). Range reduction and real-valued draws are done here,
// not through <random> distributions, whose algorithms are implementation-defined.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "xindex/corpus.hpp"
#include "xindex/evaluation.hpp"

namespace xindex {

struct IntRange {
  std::uint32_t min = 0;
  std::uint32_t max = 0;
};

struct GenParams {
  std::uint32_t n_papers = 1000;
  std::uint32_t n_authors = 200;
  IntRange authors_per_paper{1, 4};
  IntRange citations_per_paper{0, 10};
  double preferential_exponent = 1.0;
  double elite_fraction = 0.05;
  double elite_boost = 4.0;
  std::uint64_t seed = 1;
  int first_year = 1893;
  int last_year = 2009;
};

/// Throws ConfigError for empty ranges, zero counts or out-of-range reals.
void validate(const GenParams& params);

struct GenDiagnostics {
  /// Papers whose drawn author count exceeded n_authors.
  std::size_t clamped_author_draws = 0;
  /// Papers whose drawn citation count exceeded the number of earlier papers.
  std::size_t clamped_citation_draws = 0;
};

struct GeneratedCorpus {
  std::vector<PaperRecord> papers;
  std::vector<CitationPair> edges;
  GenDiagnostics diagnostics;
};

GeneratedCorpus generate(const GenParams& params);

/// Full name of synthetic author `index`; distinct indices canonicalize to distinct names.
std::string synthetic_author_name(std::uint32_t index);

/// Number of authors in the elite cohort (the lowest author indices).
std::uint32_t elite_count(const GenParams& params);

/// The elite cohort as a gold standard: even indices nobel, odd major_prize,
/// every third both.
GoldStandard synthetic_gold(const GenParams& params);

void write_metadata(std::ostream& out, const std::vector<PaperRecord>& papers,
                    const std::vector<std::string>& echo = {});
void write_citations(std::ostream& out, const std::vector<CitationPair>& edges,
                     const std::vector<std::string>& echo = {});
void write_gold(std::ostream& out, const GoldStandard& gold,
                const std::vector<std::string>& echo = {});

}  // namespace xindex
