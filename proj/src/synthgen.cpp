#include "xindex/synthgen.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <ostream>
#include <random>

#include "xindex/dsv.hpp"

namespace xindex {

namespace {

// Per-paper weight cap keeps the Fenwick totals far from uint64 overflow.
constexpr std::uint64_t kMaxWeight = std::uint64_t{1} << 40;
constexpr double kWeightScale = 1024.0;

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform in [0, n) by rejection; n > 0.
  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t threshold = (0 - n) % n;
    for (;;) {
      const std::uint64_t r = engine_();
      if (r >= threshold) return r % n;
    }
  }

  std::uint32_t in_range(IntRange r) {
    return r.min + static_cast<std::uint32_t>(below(std::uint64_t{r.max} - r.min + 1));
  }

 private:
  std::mt19937_64 engine_;
};

// Fenwick tree over integer weights: exact totals, no floating drift.
class WeightTree {
 public:
  explicit WeightTree(std::size_t n) : tree_(n + 1, 0) {
    while ((top_bit_ << 1) <= n) top_bit_ <<= 1;
  }

  void add(std::size_t i, std::int64_t delta) {
    for (++i; i < tree_.size(); i += i & (~i + 1)) tree_[i] += static_cast<std::uint64_t>(delta);
    total_ += static_cast<std::uint64_t>(delta);
  }

  std::uint64_t total() const { return total_; }

  /// Smallest index whose inclusive prefix sum exceeds `target` (< total()).
  std::size_t find(std::uint64_t target) const {
    std::size_t pos = 0;
    for (std::size_t step = top_bit_; step != 0; step >>= 1) {
      const std::size_t next = pos + step;
      if (next < tree_.size() && tree_[next] <= target) {
        pos = next;
        target -= tree_[next];
      }
    }
    return pos;
  }

 private:
  std::vector<std::uint64_t> tree_;
  std::size_t top_bit_ = 1;
  std::uint64_t total_ = 0;
};

std::string paper_id(std::uint32_t index, std::size_t width) {
  std::string digits = std::to_string(index);
  return "SYN" + std::string(width - std::min(width, digits.size()), '0') + digits;
}

}  // namespace

void validate(const GenParams& p) {
  if (p.n_papers == 0) throw ConfigError("n_papers must be positive");
  if (p.n_authors == 0) throw ConfigError("n_authors must be positive");
  if (p.authors_per_paper.min > p.authors_per_paper.max) {
    throw ConfigError("authors_per_paper range is empty");
  }
  if (p.citations_per_paper.min > p.citations_per_paper.max) {
    throw ConfigError("citations_per_paper range is empty");
  }
  if (!(p.preferential_exponent >= 0.0) || !std::isfinite(p.preferential_exponent)) {
    throw ConfigError("preferential_exponent must be a finite non-negative number");
  }
  if (!(p.elite_fraction >= 0.0 && p.elite_fraction <= 1.0)) {
    throw ConfigError("elite_fraction must lie in [0, 1]");
  }
  if (!(p.elite_boost > 0.0) || !std::isfinite(p.elite_boost)) {
    throw ConfigError("elite_boost must be positive");
  }
  if (p.first_year > p.last_year) throw ConfigError("first_year is after last_year");
}

std::string synthetic_author_name(std::uint32_t index) {
  static constexpr std::array<const char*, 16> kGiven = {
      "Anna",  "Boris",  "Chen",  "Dana",   "Emil",  "Farah", "Goran", "Hiro",
      "Ines",  "Jonas",  "Kavya", "Lucia",  "Marek", "Nadia", "Oskar", "Priya"};
  static constexpr std::array<const char*, 20> kSyllables = {
      "ba", "ko", "ri", "ten", "sa", "mu", "lin", "da", "vo", "ne",
      "ha", "zu", "pe", "go", "mar", "ti", "los", "fe", "ru", "wen"};
  // base-20 digits of index + 20 (so at least two syllables); every syllable is
  // prefix-free against the others, so the spelling decodes back to the index
  std::string surname;
  std::uint64_t v = std::uint64_t{index} + kSyllables.size();
  while (v > 0) {
    surname += kSyllables[v % kSyllables.size()];
    v /= kSyllables.size();
  }
  surname[0] = static_cast<char>(surname[0] - 'a' + 'A');
  // middle initial exercises the canonicalizer; it never reaches the canonical form
  const char middle = static_cast<char>('A' + index % 26);
  return std::string(kGiven[index % kGiven.size()]) + " " + middle + ". " + surname;
}

std::uint32_t elite_count(const GenParams& params) {
  return static_cast<std::uint32_t>(std::llround(params.elite_fraction * params.n_authors));
}

GeneratedCorpus generate(const GenParams& params) {
  validate(params);
  GeneratedCorpus out;
  Rng rng(params.seed);
  const std::uint32_t n = params.n_papers;
  const std::uint32_t elites = elite_count(params);
  const std::size_t id_width = std::max<std::size_t>(6, std::to_string(n - 1).size());
  const int year_span = params.last_year - params.first_year + 1;

  std::vector<std::string> ids(n);
  for (std::uint32_t i = 0; i < n; ++i) ids[i] = paper_id(i, id_width);

  std::vector<std::uint32_t> in_degree(n, 0);
  std::vector<bool> elite_paper(n, false);
  std::vector<std::uint64_t> weight(n, 0);
  std::vector<double> pow_cache;
  const auto weight_for = [&](std::uint32_t p) {
    const std::uint32_t d = in_degree[p];
    while (pow_cache.size() <= d) {
      pow_cache.push_back(std::pow(static_cast<double>(pow_cache.size() + 1),
                                   params.preferential_exponent));
    }
    const double w = pow_cache[d] * kWeightScale * (elite_paper[p] ? params.elite_boost : 1.0);
    if (w >= static_cast<double>(kMaxWeight)) return kMaxWeight;
    return std::max<std::uint64_t>(1, static_cast<std::uint64_t>(std::llround(w)));
  };

  WeightTree tree(n);
  out.papers.reserve(n);
  std::vector<std::uint32_t> authors;
  std::vector<std::uint32_t> chosen;
  for (std::uint32_t i = 0; i < n; ++i) {
    PaperRecord rec;
    rec.paper_id = ids[i];
    rec.title = "Synthetic paper " + std::to_string(i);
    rec.year = params.first_year +
               static_cast<int>(std::uint64_t{i} * static_cast<std::uint64_t>(year_span) / n);

    // authors: Floyd's sampling of k distinct indices
    std::uint32_t k = rng.in_range(params.authors_per_paper);
    if (k > params.n_authors) {
      ++out.diagnostics.clamped_author_draws;
      k = params.n_authors;
    }
    authors.clear();
    for (std::uint32_t j = params.n_authors - k; j < params.n_authors; ++j) {
      const auto t = static_cast<std::uint32_t>(rng.below(std::uint64_t{j} + 1));
      authors.push_back(std::find(authors.begin(), authors.end(), t) == authors.end() ? t : j);
    }
    for (auto a : authors) {
      rec.raw_authors.push_back(synthetic_author_name(a));
      if (a < elites) elite_paper[i] = true;
    }
    out.papers.push_back(std::move(rec));

    // citations to distinct earlier papers; a drawn target is removed from the
    // tree until this paper is done
    std::uint32_t c = rng.in_range(params.citations_per_paper);
    if (c > i) {
      ++out.diagnostics.clamped_citation_draws;
      c = i;
    }
    chosen.clear();
    if (c == i) {
      for (std::uint32_t t = 0; t < i; ++t) chosen.push_back(t);
    } else {
      for (std::uint32_t draw = 0; draw < c; ++draw) {
        const auto t = static_cast<std::uint32_t>(tree.find(rng.below(tree.total())));
        chosen.push_back(t);
        tree.add(t, -static_cast<std::int64_t>(weight[t]));
      }
      for (auto t : chosen) tree.add(t, static_cast<std::int64_t>(weight[t]));
    }
    for (auto t : chosen) {
      out.edges.push_back({ids[i], ids[t]});
      ++in_degree[t];
      const auto w = weight_for(t);
      tree.add(t, static_cast<std::int64_t>(w) - static_cast<std::int64_t>(weight[t]));
      weight[t] = w;
    }
    weight[i] = weight_for(i);
    tree.add(i, static_cast<std::int64_t>(weight[i]));
  }
  return out;
}

GoldStandard synthetic_gold(const GenParams& params) {
  GoldStandard gold("synthetic");
  const std::uint32_t elites = std::min(elite_count(params), params.n_authors);
  for (std::uint32_t a = 0; a < elites; ++a) {
    const auto name = synthetic_author_name(a);
    if (a % 3 == 0) {
      gold.add(name, Category::nobel);
      gold.add(name, Category::major_prize);
    } else {
      gold.add(name, a % 2 == 0 ? Category::nobel : Category::major_prize);
    }
  }
  return gold;
}

void write_metadata(std::ostream& out, const std::vector<PaperRecord>& papers,
                    const std::vector<std::string>& echo) {
  for (const auto& line : echo) out << "# " << line << '\n';
  dsv::write_row(out, {"paper_id", "title", "authors", "year"});
  std::string joined;
  for (const auto& p : papers) {
    joined.clear();
    for (std::size_t i = 0; i < p.raw_authors.size(); ++i) {
      if (i) joined += '|';
      joined += p.raw_authors[i];
    }
    dsv::write_row(out, {p.paper_id, p.title, joined, std::to_string(p.year)});
  }
}

void write_citations(std::ostream& out, const std::vector<CitationPair>& edges,
                     const std::vector<std::string>& echo) {
  for (const auto& line : echo) out << "# " << line << '\n';
  dsv::write_row(out, {"citing_id", "cited_id"});
  for (const auto& e : edges) dsv::write_row(out, {e.citing, e.cited});
}

void write_gold(std::ostream& out, const GoldStandard& gold,
                const std::vector<std::string>& echo) {
  for (const auto& line : echo) out << "# " << line << '\n';
  dsv::write_row(out, {"name", "category"});
  for (const auto& [name, cat] : gold.members()) {
    if (cat != Category::major_prize) dsv::write_row(out, {name, "nobel"});
    if (cat != Category::nobel) dsv::write_row(out, {name, "major_prize"});
  }
}

}  // namespace xindex
