#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>
#include <sstream>

#include "fixtures.hpp"
#include "xindex/corpus.hpp"
#include "xindex/synthgen.hpp"

using namespace xindex;
using namespace xindex::testing;

TEST(CanonicalizeName, AbbreviatesFirstNameKeepsLastToken) {
  EXPECT_EQ(canonicalize_name("John C. Mather"), "J. Mather");
  EXPECT_EQ(canonicalize_name("J. Mather"), "J. Mather");
  EXPECT_EQ(canonicalize_name("Maria Goeppert-Mayer"), "M. Goeppert-Mayer");
}

TEST(CanonicalizeName, StripsGenerationalSuffixes) {
  EXPECT_EQ(canonicalize_name("Robert F. Kennedy Jr."), "R. Kennedy");
  EXPECT_EQ(canonicalize_name("John Smith, Jr."), "J. Smith");
  EXPECT_EQ(canonicalize_name("Henry Ford III"), "H. Ford");
  EXPECT_EQ(canonicalize_name("Carl Sr. IV"), "Carl");
}

TEST(CanonicalizeName, SingleTokenKeptWhole) {
  EXPECT_EQ(canonicalize_name("Madonna"), "Madonna");
  EXPECT_EQ(canonicalize_name("  Plato  "), "Plato");
}

TEST(CanonicalizeName, InitialSkipsPunctuationAndUppercases) {
  EXPECT_EQ(canonicalize_name("'t Hooft Gerard"), "T. Gerard");
  EXPECT_EQ(canonicalize_name("paul dirac"), "P. dirac");
  EXPECT_EQ(canonicalize_name("Émile Borel"), "É. Borel");
  EXPECT_EQ(canonicalize_name("Pieter van der Berg"), "P. Berg");
}

TEST(CanonicalizeName, RejectsBlank) {
  EXPECT_THROW(canonicalize_name(""), NameError);
  EXPECT_THROW(canonicalize_name(" \t "), NameError);
  EXPECT_THROW(canonicalize_name(" , "), NameError);
}

TEST(CanonicalizeName, IdempotentAndDeterministicOnRandomStrings) {
  const std::vector<std::string> pieces = {
      "a", "B", "Jr.", "II", "iv", "Sr", ".", ",", "-", "'", "x-y", "\xC3\xA9", "Zo\xC3\xAB",
      "1", "van", "de", "Q."};
  std::mt19937_64 rng(20240611);
  int checked = 0;
  for (int trial = 0; trial < 5000; ++trial) {
    std::string raw;
    const int tokens = 1 + static_cast<int>(rng() % 5);
    for (int t = 0; t < tokens; ++t) {
      raw += std::string(rng() % 3, ' ');
      const int parts = 1 + static_cast<int>(rng() % 3);
      for (int k = 0; k < parts; ++k) raw += pieces[rng() % pieces.size()];
      raw += rng() % 4 == 0 ? "\t" : " ";
    }
    std::string once;
    try {
      once = canonicalize_name(raw);
    } catch (const NameError&) {
      continue;
    }
    EXPECT_EQ(canonicalize_name(raw), once) << raw;
    EXPECT_EQ(canonicalize_name(once), once) << "raw: [" << raw << "]";
    ++checked;
  }
  EXPECT_GT(checked, 4000);
}

TEST(ParseCorpus, ReadsRecordsInInputOrder) {
  std::istringstream meta(kPentadMetadata);
  std::istringstream cites(kPentadCitations);
  const auto corpus = parse_corpus(meta, cites);
  ASSERT_EQ(corpus.papers.size(), 5u);
  EXPECT_EQ(corpus.papers[3].paper_id, "P4");
  EXPECT_EQ(corpus.papers[3].raw_authors, (std::vector<std::string>{"B", "C"}));
  EXPECT_EQ(corpus.papers[3].year, 2004);
  ASSERT_EQ(corpus.edges.size(), 7u);
  EXPECT_EQ(corpus.edges[0], (CitationPair{"P3", "P1"}));
  EXPECT_EQ(corpus.diagnostics.malformed_metadata, 0u);
}

TEST(ParseCorpus, SkipsAndCountsMalformedLines) {
  std::istringstream meta(
      "paper_id,title,authors,year,journal\n"
      "P1,Ok,Alice Smith|Bob Jones,1999,PRL\n"
      ",Missing id,Carol,2000,PRB\n"
      "P3,Bad year,Dan,nineteen,PR\n"
      "P4,Short row\n"
      "P5,\"Title, with comma\",,2001,RMP\n");
  std::istringstream cites("citing_id,cited_id\nP5,P1\nP4\n,P1\n");
  const auto corpus = parse_corpus(meta, cites);
  ASSERT_EQ(corpus.papers.size(), 2u);
  EXPECT_EQ(corpus.papers[1].title, "Title, with comma");
  EXPECT_TRUE(corpus.papers[1].raw_authors.empty());
  EXPECT_EQ(corpus.diagnostics.malformed_metadata, 3u);
  EXPECT_EQ(corpus.diagnostics.malformed_citations, 2u);
  EXPECT_EQ(corpus.edges.size(), 1u);
  EXPECT_FALSE(corpus.diagnostics.samples.empty());
}

TEST(ParseCorpus, MissingIdColumnCountsOneMalformed) {
  std::istringstream meta("paper_id,title,authors,year\n,T,A,2000\nP2,T,B,2001\n");
  std::istringstream cites("citing_id,cited_id\n");
  const auto corpus = parse_corpus(meta, cites);
  EXPECT_EQ(corpus.papers.size(), 1u);
  EXPECT_EQ(corpus.diagnostics.malformed_metadata, 1u);
}

TEST(ParseCorpus, RejectsHeaderWithoutRequiredColumns) {
  std::istringstream meta("id,title\nP1,T\n");
  std::istringstream cites("citing_id,cited_id\n");
  EXPECT_THROW(parse_corpus(meta, cites), CorpusError);
}

TEST(LoadCorpus, UnreadableFileIsIoError) {
  EXPECT_THROW(load_corpus("/nonexistent/meta.csv", "/nonexistent/cites.csv"), IoError);
}

TEST(BuildGraph, PentadInDegrees) {
  const auto g = pentad_graph();
  ASSERT_EQ(g.paper_count(), 5u);
  EXPECT_EQ(g.edge_count(), 7u);
  const std::vector<std::uint32_t> expected = {3, 2, 2, 0, 0};
  for (int i = 0; i < 5; ++i) {
    const auto p = g.paper_index("P" + std::to_string(i + 1));
    EXPECT_EQ(g.citation_count(p), expected[i]) << "P" << i + 1;
  }
  const auto p1 = g.paper_index("P1");
  std::vector<std::string> citers;
  for (auto q : g.citers(p1)) citers.push_back(g.paper(q).paper_id);
  EXPECT_EQ(citers, (std::vector<std::string>{"P3", "P4", "P5"}));
  EXPECT_EQ(g.author_names().size(), 3u);
  EXPECT_EQ(g.author_papers(g.author_index("C")).size(), 2u);
}

TEST(BuildGraph, DeduplicatesEdges) {
  auto edges = pentad_edges();
  edges.push_back({"P3", "P1"});
  const auto g = build_graph(pentad_papers(), edges);
  EXPECT_EQ(g, pentad_graph());
  EXPECT_EQ(g.diagnostics().duplicate_edges, 1u);
}

TEST(BuildGraph, DropsDanglingAndSelfEdges) {
  auto edges = pentad_edges();
  edges.push_back({"P9", "P1"});
  edges.push_back({"P2", "P2"});
  const auto g = build_graph(pentad_papers(), edges);
  EXPECT_EQ(g, pentad_graph());
  EXPECT_EQ(g.diagnostics().dangling_edges, 1u);
  EXPECT_EQ(g.diagnostics().self_loops, 1u);
}

TEST(BuildGraph, RefusesDuplicatePaperIds) {
  auto papers = pentad_papers();
  papers.push_back({"P2", "Again", {"Z"}, 2010});
  EXPECT_THROW(build_graph(papers, pentad_edges()), CorpusError);
}

TEST(BuildGraph, AuthorListedTwiceCountsPaperOnce) {
  const std::vector<PaperRecord> papers = {
      {"X1", "t", {"John Smith", "J. Smith", "Jane Smith"}, 2000},
      {"X2", "t", {}, 2001},
  };
  const auto g = build_graph(papers, {{"X2", "X1"}});
  ASSERT_EQ(g.author_count(), 1u);
  EXPECT_EQ(g.author_name(0), "J. Smith");
  EXPECT_EQ(g.author_papers(0).size(), 1u);
  EXPECT_EQ(g.paper_authors(g.paper_index("X1")).size(), 1u);
  EXPECT_TRUE(g.paper_authors(g.paper_index("X2")).empty());
  EXPECT_EQ(g.diagnostics().authorless_papers, 1u);
  EXPECT_EQ(g.citation_count(g.paper_index("X1")), 1u);
}

TEST(BuildGraph, UnknownLookupsThrow) {
  const auto g = pentad_graph();
  EXPECT_THROW(g.paper_index("P6"), NotFoundError);
  EXPECT_THROW(g.author_index("Z"), NotFoundError);
  EXPECT_FALSE(g.find_paper("P0"));
}

TEST(BuildGraph, InDegreesSumToEdgeCountAndOrderDoesNotMatter) {
  GenParams params;
  params.n_papers = 300;
  params.n_authors = 60;
  params.citations_per_paper = {0, 12};
  std::mt19937_64 rng(5);
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    params.seed = seed;
    auto corpus = generate(params);
    // add some dirt
    corpus.edges.push_back(corpus.edges.front());
    corpus.edges.push_back({"nope", corpus.papers.front().paper_id});
    const auto g = build_graph(corpus.papers, corpus.edges);
    std::size_t total = 0;
    for (PaperIndex p = 0; p < g.paper_count(); ++p) total += g.citation_count(p);
    EXPECT_EQ(total, g.edge_count());

    auto shuffled_edges = corpus.edges;
    auto shuffled_papers = corpus.papers;
    std::shuffle(shuffled_edges.begin(), shuffled_edges.end(), rng);
    std::shuffle(shuffled_papers.begin(), shuffled_papers.end(), rng);
    const auto h = build_graph(shuffled_papers, shuffled_edges);
    EXPECT_EQ(g, h);
    std::ostringstream a, b;
    g.dump(a);
    h.dump(b);
    EXPECT_EQ(a.str(), b.str());
  }
}

TEST(GraphDump, RoundTripsToAnEqualGraph) {
  auto papers = pentad_papers();
  papers.push_back({"P6", "Tabs\tand\nnewlines \\ here", {"Ann\tLee", "Bo Ng"}, 1999});
  auto edges = pentad_edges();
  edges.push_back({"P6", "P1"});
  const auto g = build_graph(papers, edges);
  std::stringstream buf;
  g.dump(buf);
  const auto parsed = parse_graph_dump(buf);
  const auto rebuilt = build_graph(parsed.papers, parsed.edges);
  EXPECT_EQ(rebuilt, g);
  std::ostringstream again;
  rebuilt.dump(again);
  EXPECT_EQ(again.str(), buf.str());
}

TEST(GraphDump, RejectsGarbage) {
  std::istringstream in("X\tfoo\n");
  EXPECT_THROW(parse_graph_dump(in), CorpusError);
}
