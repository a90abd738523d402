#pragma once

// Corpus ingestion: paper metadata, citation pairs, author canonicalization and
// the immutable citation graph every indicator is computed from.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "xindex/common.hpp"

namespace xindex {

struct PaperRecord {
  std::string paper_id;
  std::string title;
  std::vector<std::string> raw_authors;
  int year = 0;

  bool operator==(const PaperRecord&) const = default;
};

struct CitationPair {
  std::string citing;
  std::string cited;

  bool operator==(const CitationPair&) const = default;
};

struct ParseDiagnostics {
  std::size_t malformed_metadata = 0;
  std::size_t malformed_citations = 0;
  /// First few malformed lines, "file:line: reason".
  std::vector<std::string> samples;
};

struct ParsedCorpus {
  std::vector<PaperRecord> papers;
  std::vector<CitationPair> edges;
  ParseDiagnostics diagnostics;
};

/// Abbreviates a full name to "<I>. <Last>".
///
/// The initial is the first alphabetic character of the first token (ASCII letters
/// are uppercased; a non-ASCII UTF-8 sequence counts as alphabetic and is kept as is).
/// The last name is the final token once trailing generational suffixes
/// (Jr., Sr., II, III, IV) are dropped. Trailing commas on tokens are ignored.
/// A single remaining token is returned whole. Idempotent.
///
/// Throws NameError for empty or whitespace-only input.
std::string canonicalize_name(std::string_view raw);

/// Parses the metadata table (header with at least paper_id,title,authors,year).
/// Malformed rows are skipped and counted into `diag.malformed_metadata`.
std::vector<PaperRecord> parse_metadata(std::istream& in, ParseDiagnostics& diag,
                                        char delimiter = ',');

/// Parses the citations table (header citing_id,cited_id).
std::vector<CitationPair> parse_citations(std::istream& in, ParseDiagnostics& diag,
                                          char delimiter = ',');

ParsedCorpus parse_corpus(std::istream& metadata, std::istream& citations, char delimiter = ',');

/// Opens both files; throws IoError when either cannot be read.
ParsedCorpus load_corpus(const std::filesystem::path& metadata,
                         const std::filesystem::path& citations, char delimiter = ',');

struct IngestDiagnostics {
  std::size_t dangling_edges = 0;
  std::size_t duplicate_edges = 0;
  std::size_t self_loops = 0;
  std::size_t rejected_names = 0;
  std::size_t authorless_papers = 0;
};

using PaperIndex = std::uint32_t;
using AuthorIndex = std::uint32_t;

class CitationGraph;

/// Builds the graph. Dangling, duplicate and self-citing edges are dropped and counted.
/// Throws CorpusError on a duplicate paper_id.
CitationGraph build_graph(std::vector<PaperRecord> papers, const std::vector<CitationPair>& edges);

/// Immutable citation graph.
///
/// Papers are stored sorted by paper_id, so a paper's index order is its id order.
/// Authors are stored sorted by canonical name. All adjacency lists are sorted by index.
class CitationGraph {
 public:
  CitationGraph() = default;

  std::size_t paper_count() const { return papers_.size(); }
  std::size_t author_count() const { return author_names_.size(); }
  std::size_t edge_count() const { return citer_ids_.size(); }

  const PaperRecord& paper(PaperIndex p) const { return papers_[p]; }
  std::span<const PaperRecord> papers() const { return papers_; }
  std::optional<PaperIndex> find_paper(std::string_view paper_id) const;
  /// Throws NotFoundError.
  PaperIndex paper_index(std::string_view paper_id) const;

  /// Papers citing `p`, ascending by paper_id.
  std::span<const PaperIndex> citers(PaperIndex p) const {
    return {citer_ids_.data() + citer_offsets_[p], citer_ids_.data() + citer_offsets_[p + 1]};
  }
  std::uint32_t citation_count(PaperIndex p) const {
    return citer_offsets_[p + 1] - citer_offsets_[p];
  }

  const std::string& author_name(AuthorIndex a) const { return author_names_[a]; }
  std::span<const std::string> author_names() const { return author_names_; }
  std::optional<AuthorIndex> find_author(std::string_view canonical_name) const;
  /// Throws NotFoundError.
  AuthorIndex author_index(std::string_view canonical_name) const;

  std::span<const PaperIndex> author_papers(AuthorIndex a) const {
    return {author_paper_ids_.data() + author_paper_offsets_[a],
            author_paper_ids_.data() + author_paper_offsets_[a + 1]};
  }
  /// Distinct canonical authors of `p`, ascending by name.
  std::span<const AuthorIndex> paper_authors(PaperIndex p) const {
    return {paper_author_ids_.data() + paper_author_offsets_[p],
            paper_author_ids_.data() + paper_author_offsets_[p + 1]};
  }

  const IngestDiagnostics& diagnostics() const { return diagnostics_; }

  /// Line-oriented dump; stable ordering, so identical graphs dump identically.
  void dump(std::ostream& out) const;

  /// Structural equality (diagnostics are not part of a graph's identity).
  bool operator==(const CitationGraph& other) const;

 private:
  friend CitationGraph build_graph(std::vector<PaperRecord>, const std::vector<CitationPair>&);

  std::vector<PaperRecord> papers_;
  std::vector<std::uint32_t> citer_offsets_{0};
  std::vector<PaperIndex> citer_ids_;
  std::vector<std::string> author_names_;
  std::vector<std::uint32_t> author_paper_offsets_{0};
  std::vector<PaperIndex> author_paper_ids_;
  std::vector<std::uint32_t> paper_author_offsets_{0};
  std::vector<AuthorIndex> paper_author_ids_;
  IngestDiagnostics diagnostics_;
};

/// Reads a dump written by CitationGraph::dump back into records and edges.
ParsedCorpus parse_graph_dump(std::istream& in);

}  // namespace xindex
