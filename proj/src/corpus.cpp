#include "xindex/corpus.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <fstream>
#include <istream>
#include <limits>
#include <numeric>
#include <ostream>
#include <unordered_map>

#include "xindex/dsv.hpp"

namespace xindex {

namespace {

constexpr std::size_t kMaxSamples = 20;

bool is_suffix(std::string_view token) {
  static constexpr std::array<std::string_view, 7> kSuffixes = {"jr.", "jr", "sr.", "sr",
                                                               "ii",  "iii", "iv"};
  std::string lower(token);
  for (auto& c : lower) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return std::find(kSuffixes.begin(), kSuffixes.end(), lower) != kSuffixes.end();
}

bool is_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

// Length of the UTF-8 sequence starting with lead byte `c` (1 for invalid leads).
std::size_t utf8_length(unsigned char c) {
  if (c >= 0xF0) return 4;
  if (c >= 0xE0) return 3;
  if (c >= 0xC0) return 2;
  return 1;
}

std::string initial_of(std::string_view token) {
  for (std::size_t i = 0; i < token.size();) {
    const auto c = static_cast<unsigned char>(token[i]);
    if (c < 0x80) {
      if (std::isalpha(c)) return std::string(1, static_cast<char>(std::toupper(c)));
      ++i;
    } else if (c >= 0xC0) {
      return std::string(token.substr(i, utf8_length(c)));
    } else {
      ++i;  // stray continuation byte
    }
  }
  // no letter at all: fall back to the first code unit sequence
  return std::string(token.substr(0, utf8_length(static_cast<unsigned char>(token[0]))));
}

void note(ParseDiagnostics& diag, std::string_view where, std::size_t line,
          std::string_view why) {
  if (diag.samples.size() < kMaxSamples) {
    diag.samples.push_back(std::string(where) + ":" + std::to_string(line) + ": " +
                           std::string(why));
  }
}

std::optional<std::size_t> column(const dsv::Row& header, std::string_view name) {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (dsv::trim(header[i]) == name) return i;
  }
  return std::nullopt;
}

std::optional<int> parse_int(std::string_view s) {
  s = dsv::trim(s);
  int value = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) return std::nullopt;
  return value;
}

std::string escape_dump(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '\\': out += "\\\\"; break;
      case '\t': out += "\\t"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      default: out += c;
    }
  }
  return out;
}

std::string unescape_dump(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] != '\\' || i + 1 == s.size()) {
      out += s[i];
      continue;
    }
    switch (s[++i]) {
      case 't': out += '\t'; break;
      case 'n': out += '\n'; break;
      case 'r': out += '\r'; break;
      default: out += s[i];
    }
  }
  return out;
}

template <typename T>
std::vector<std::uint32_t> offsets_from_counts(const std::vector<T>& counts) {
  std::vector<std::uint32_t> offsets(counts.size() + 1, 0);
  for (std::size_t i = 0; i < counts.size(); ++i) {
    offsets[i + 1] = offsets[i] + static_cast<std::uint32_t>(counts[i]);
  }
  return offsets;
}

}  // namespace

std::string canonicalize_name(std::string_view raw) {
  std::vector<std::string_view> tokens;
  for (std::size_t i = 0; i < raw.size();) {
    while (i < raw.size() && is_space(raw[i])) ++i;
    std::size_t j = i;
    while (j < raw.size() && !is_space(raw[j])) ++j;
    std::string_view tok = raw.substr(i, j - i);
    while (!tok.empty() && tok.back() == ',') tok.remove_suffix(1);
    if (!tok.empty()) tokens.push_back(tok);
    i = j;
  }
  if (tokens.empty()) throw NameError("empty author name");
  while (tokens.size() > 1 && is_suffix(tokens.back())) tokens.pop_back();
  if (tokens.size() == 1) return std::string(tokens.front());
  return initial_of(tokens.front()) + ". " + std::string(tokens.back());
}

std::vector<PaperRecord> parse_metadata(std::istream& in, ParseDiagnostics& diag,
                                        char delimiter) {
  dsv::Reader reader(in, delimiter);
  std::vector<PaperRecord> papers;
  auto header = reader.next();
  if (!header) {
    if (in.bad()) throw IoError("failed reading metadata stream");
    return papers;
  }
  const auto id_col = column(*header, "paper_id");
  const auto title_col = column(*header, "title");
  const auto authors_col = column(*header, "authors");
  const auto year_col = column(*header, "year");
  if (!id_col || !title_col || !authors_col || !year_col) {
    throw CorpusError("metadata header must name paper_id,title,authors,year");
  }
  const std::size_t needed = std::max({*id_col, *title_col, *authors_col, *year_col}) + 1;

  while (auto row = reader.next()) {
    const auto reject = [&](std::string_view why) {
      ++diag.malformed_metadata;
      note(diag, "metadata", reader.line(), why);
    };
    if (reader.malformed()) {
      reject("unterminated quote");
      continue;
    }
    if (row->size() < needed) {
      reject("missing columns");
      continue;
    }
    PaperRecord rec;
    rec.paper_id = std::string(dsv::trim((*row)[*id_col]));
    if (rec.paper_id.empty()) {
      reject("empty paper_id");
      continue;
    }
    const auto year = parse_int((*row)[*year_col]);
    if (!year) {
      reject("year is not an integer");
      continue;
    }
    rec.year = *year;
    rec.title = std::move((*row)[*title_col]);
    const std::string& authors = (*row)[*authors_col];
    if (!dsv::trim(authors).empty()) {
      for (const auto& piece : dsv::split(authors, '|')) {
        const auto name = dsv::trim(piece);
        if (!name.empty()) rec.raw_authors.emplace_back(name);
      }
    }
    papers.push_back(std::move(rec));
  }
  if (in.bad()) throw IoError("failed reading metadata stream");
  return papers;
}

std::vector<CitationPair> parse_citations(std::istream& in, ParseDiagnostics& diag,
                                          char delimiter) {
  dsv::Reader reader(in, delimiter);
  std::vector<CitationPair> edges;
  auto header = reader.next();
  if (!header) {
    if (in.bad()) throw IoError("failed reading citations stream");
    return edges;
  }
  const auto citing_col = column(*header, "citing_id");
  const auto cited_col = column(*header, "cited_id");
  if (!citing_col || !cited_col) {
    throw CorpusError("citations header must name citing_id,cited_id");
  }
  const std::size_t needed = std::max(*citing_col, *cited_col) + 1;
  while (auto row = reader.next()) {
    if (reader.malformed() || row->size() < needed) {
      ++diag.malformed_citations;
      note(diag, "citations", reader.line(), "missing columns");
      continue;
    }
    CitationPair e{std::string(dsv::trim((*row)[*citing_col])),
                   std::string(dsv::trim((*row)[*cited_col]))};
    if (e.citing.empty() || e.cited.empty()) {
      ++diag.malformed_citations;
      note(diag, "citations", reader.line(), "empty id");
      continue;
    }
    edges.push_back(std::move(e));
  }
  if (in.bad()) throw IoError("failed reading citations stream");
  return edges;
}

ParsedCorpus parse_corpus(std::istream& metadata, std::istream& citations, char delimiter) {
  ParsedCorpus corpus;
  corpus.papers = parse_metadata(metadata, corpus.diagnostics, delimiter);
  corpus.edges = parse_citations(citations, corpus.diagnostics, delimiter);
  return corpus;
}

ParsedCorpus load_corpus(const std::filesystem::path& metadata,
                         const std::filesystem::path& citations, char delimiter) {
  std::ifstream meta(metadata, std::ios::binary);
  if (!meta) throw IoError("cannot open metadata file: " + metadata.string());
  std::ifstream cites(citations, std::ios::binary);
  if (!cites) throw IoError("cannot open citations file: " + citations.string());
  return parse_corpus(meta, cites, delimiter);
}

CitationGraph build_graph(std::vector<PaperRecord> papers, const std::vector<CitationPair>& edges) {
  CitationGraph g;
  IngestDiagnostics& diag = g.diagnostics_;

  std::sort(papers.begin(), papers.end(),
            [](const PaperRecord& a, const PaperRecord& b) { return a.paper_id < b.paper_id; });
  for (std::size_t i = 1; i < papers.size(); ++i) {
    if (papers[i].paper_id == papers[i - 1].paper_id) {
      throw CorpusError("duplicate paper_id: " + papers[i].paper_id);
    }
  }
  if (papers.size() >= std::numeric_limits<PaperIndex>::max()) {
    throw CorpusError("too many papers");
  }
  g.papers_ = std::move(papers);
  const auto n = static_cast<PaperIndex>(g.papers_.size());

  // edges, keyed (cited, citing) so the CSR rows come out sorted
  {
    std::unordered_map<std::string_view, PaperIndex> index;
    index.reserve(n);
    for (PaperIndex p = 0; p < n; ++p) index.emplace(g.papers_[p].paper_id, p);

    std::vector<std::uint64_t> keyed;
    keyed.reserve(edges.size());
    for (const auto& e : edges) {
      const auto from = index.find(e.citing);
      const auto to = index.find(e.cited);
      if (from == index.end() || to == index.end()) {
        ++diag.dangling_edges;
        continue;
      }
      if (from->second == to->second) {
        ++diag.self_loops;
        continue;
      }
      keyed.push_back((std::uint64_t{to->second} << 32) | from->second);
    }
    std::sort(keyed.begin(), keyed.end());
    const auto last = std::unique(keyed.begin(), keyed.end());
    diag.duplicate_edges = static_cast<std::size_t>(keyed.end() - last);
    keyed.erase(last, keyed.end());

    std::vector<std::uint32_t> counts(n, 0);
    g.citer_ids_.reserve(keyed.size());
    for (auto k : keyed) {
      ++counts[k >> 32];
      g.citer_ids_.push_back(static_cast<PaperIndex>(k & 0xFFFFFFFFu));
    }
    g.citer_offsets_ = offsets_from_counts(counts);
  }

  // authors
  std::vector<std::vector<std::string>> canonical(n);
  std::vector<std::string> all_names;
  for (PaperIndex p = 0; p < n; ++p) {
    for (const auto& raw : g.papers_[p].raw_authors) {
      try {
        canonical[p].push_back(canonicalize_name(raw));
      } catch (const NameError&) {
        ++diag.rejected_names;
      }
    }
    if (canonical[p].empty()) ++diag.authorless_papers;
    all_names.insert(all_names.end(), canonical[p].begin(), canonical[p].end());
  }
  std::sort(all_names.begin(), all_names.end());
  all_names.erase(std::unique(all_names.begin(), all_names.end()), all_names.end());
  g.author_names_ = std::move(all_names);

  std::vector<std::uint32_t> per_paper(n, 0);
  std::vector<std::uint32_t> per_author(g.author_names_.size(), 0);
  for (PaperIndex p = 0; p < n; ++p) {
    std::vector<AuthorIndex> ids;
    ids.reserve(canonical[p].size());
    for (const auto& name : canonical[p]) ids.push_back(*g.find_author(name));
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    per_paper[p] = static_cast<std::uint32_t>(ids.size());
    for (auto a : ids) ++per_author[a];
    g.paper_author_ids_.insert(g.paper_author_ids_.end(), ids.begin(), ids.end());
  }
  g.paper_author_offsets_ = offsets_from_counts(per_paper);

  g.author_paper_offsets_ = offsets_from_counts(per_author);
  g.author_paper_ids_.resize(g.paper_author_ids_.size());
  std::vector<std::uint32_t> cursor(g.author_paper_offsets_.begin(),
                                    g.author_paper_offsets_.end() - 1);
  // papers are visited in index order, so each author's list is already sorted
  for (PaperIndex p = 0; p < n; ++p) {
    for (auto a : g.paper_authors(p)) g.author_paper_ids_[cursor[a]++] = p;
  }
  return g;
}

std::optional<PaperIndex> CitationGraph::find_paper(std::string_view paper_id) const {
  const auto it = std::lower_bound(
      papers_.begin(), papers_.end(), paper_id,
      [](const PaperRecord& rec, std::string_view id) { return rec.paper_id < id; });
  if (it == papers_.end() || it->paper_id != paper_id) return std::nullopt;
  return static_cast<PaperIndex>(it - papers_.begin());
}

PaperIndex CitationGraph::paper_index(std::string_view paper_id) const {
  if (auto p = find_paper(paper_id)) return *p;
  throw NotFoundError("unknown paper: " + std::string(paper_id));
}

std::optional<AuthorIndex> CitationGraph::find_author(std::string_view canonical_name) const {
  const auto it = std::lower_bound(author_names_.begin(), author_names_.end(), canonical_name);
  if (it == author_names_.end() || *it != canonical_name) return std::nullopt;
  return static_cast<AuthorIndex>(it - author_names_.begin());
}

AuthorIndex CitationGraph::author_index(std::string_view canonical_name) const {
  if (auto a = find_author(canonical_name)) return *a;
  throw NotFoundError("unknown author: " + std::string(canonical_name));
}

void CitationGraph::dump(std::ostream& out) const {
  out << "# xindex graph dump v1\n";
  out << "# papers " << paper_count() << " edges " << edge_count() << " authors "
      << author_count() << "\n";
  for (const auto& rec : papers_) {
    out << "P\t" << escape_dump(rec.paper_id) << '\t' << rec.year << '\t'
        << escape_dump(rec.title);
    for (const auto& a : rec.raw_authors) out << '\t' << escape_dump(a);
    out << '\n';
  }
  for (PaperIndex p = 0; p < paper_count(); ++p) {
    for (auto q : citers(p)) {
      out << "E\t" << escape_dump(papers_[q].paper_id) << '\t'
          << escape_dump(papers_[p].paper_id) << '\n';
    }
  }
}

bool CitationGraph::operator==(const CitationGraph& other) const {
  return papers_ == other.papers_ && citer_offsets_ == other.citer_offsets_ &&
         citer_ids_ == other.citer_ids_ && author_names_ == other.author_names_ &&
         author_paper_offsets_ == other.author_paper_offsets_ &&
         author_paper_ids_ == other.author_paper_ids_ &&
         paper_author_offsets_ == other.paper_author_offsets_ &&
         paper_author_ids_ == other.paper_author_ids_;
}

ParsedCorpus parse_graph_dump(std::istream& in) {
  ParsedCorpus corpus;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    const auto fields = dsv::split(line, '\t');
    if (fields[0] == "P" && fields.size() >= 4) {
      const auto year = parse_int(fields[2]);
      if (!year) throw CorpusError("dump line " + std::to_string(line_no) + ": bad year");
      PaperRecord rec{unescape_dump(fields[1]), unescape_dump(fields[3]), {}, *year};
      for (std::size_t i = 4; i < fields.size(); ++i) {
        rec.raw_authors.push_back(unescape_dump(fields[i]));
      }
      corpus.papers.push_back(std::move(rec));
    } else if (fields[0] == "E" && fields.size() == 3) {
      corpus.edges.push_back({unescape_dump(fields[1]), unescape_dump(fields[2])});
    } else {
      throw CorpusError("dump line " + std::to_string(line_no) + ": unrecognized record");
    }
  }
  if (in.bad()) throw IoError("failed reading graph dump");
  return corpus;
}

}  // namespace xindex
