#include "xindex/cli.hpp"

#include <charconv>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "xindex/corpus.hpp"
#include "xindex/dsv.hpp"
#include "xindex/evaluation.hpp"
#include "xindex/indicators.hpp"
#include "xindex/report.hpp"
#include "xindex/synthgen.hpp"

namespace xindex::cli {

namespace fs = std::filesystem;

namespace {

class InvariantError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

struct Options {
  std::string metadata;
  std::string citations;
  std::string scores;
  std::vector<std::string> gold;
  std::string indicators = "x,h,acnpp,tcn,tpn";
  std::string at = "10,20,30,40,50,100";
  std::string gold_views = "nobel,all";
  std::uint64_t top_k = 20;
  std::string out = "out";
  std::string delimiter = ",";
  unsigned threads = 0;
  bool dump_graph = false;

  GenParams gen;
  std::string authors_per_paper = "1..4";
  std::string citations_per_paper = "0..10";
};

IntRange parse_range(const std::string& text, const char* what) {
  auto parse_u32 = [&](std::string_view s) {
    s = dsv::trim(s);
    std::uint32_t v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size()) {
      throw ConfigError(std::string("bad ") + what + " range: '" + text + "'");
    }
    return v;
  };
  const auto dots = text.find("..");
  if (dots == std::string::npos) {
    const auto v = parse_u32(text);
    return {v, v};
  }
  return {parse_u32(std::string_view(text).substr(0, dots)),
          parse_u32(std::string_view(text).substr(dots + 2))};
}

std::vector<Indicator> parse_indicators(const std::string& text) {
  std::vector<Indicator> out;
  for (const auto& part : dsv::split(text, ',')) {
    if (!dsv::trim(part).empty()) out.push_back(parse_indicator(part));
  }
  return out;
}

std::vector<std::uint64_t> parse_cutoffs(const std::string& text) {
  std::vector<std::uint64_t> out;
  for (const auto& part : dsv::split(text, ',')) {
    const auto s = dsv::trim(part);
    if (s.empty()) continue;
    std::uint64_t v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size() || v == 0) {
      throw ConfigError("--at expects positive integers, got '" + std::string(s) + "'");
    }
    out.push_back(v);
  }
  return out;
}

char delimiter_of(const Options& o) {
  if (o.delimiter == "\\t" || o.delimiter == "tab") return '\t';
  if (o.delimiter.size() != 1) throw ConfigError("--delimiter must be a single character");
  return o.delimiter[0];
}

void require_file(const std::string& path, const char* flag) {
  if (path.empty()) throw ConfigError(std::string(flag) + " is required");
  std::error_code ec;
  if (!fs::is_regular_file(path, ec)) {
    throw NotFoundError(std::string(flag) + ": no such file: " + path);
  }
}

std::ofstream open_out(const fs::path& path) {
  std::error_code ec;
  fs::create_directories(path.parent_path(), ec);
  if (ec) throw IoError("cannot create " + path.parent_path().string() + ": " + ec.message());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  return out;
}

void close_out(std::ofstream& out, const fs::path& path) {
  out.close();
  if (!out) throw IoError("failed writing " + path.string());
}

void write_config(const fs::path& dir, const std::vector<std::string>& echo) {
  const auto path = dir / "config.json";
  auto out = open_out(path);
  nlohmann::ordered_json doc;
  doc["tool"] = "xindex";
  doc["version"] = kVersion;
  doc["config"] = echo;
  out << doc.dump(2) << '\n';
  close_out(out, path);
}

class Runner {
 public:
  Runner(const Options& o, std::ostream& log) : o_(o), log_(log) {}

  // Config echo: everything that determines output content. The output directory
  // and thread count do not, so they are left out.
  std::vector<std::string> echo(const std::string& command,
                                const std::vector<std::pair<std::string, std::string>>& items) {
    std::vector<std::string> lines{std::string("xindex ") + kVersion, "command: " + command};
    for (const auto& [k, v] : items) lines.push_back(k + ": " + v);
    return lines;
  }

  std::vector<std::pair<std::string, std::string>> gen_items() const {
    const auto& g = o_.gen;
    std::ostringstream exp, frac, boost;
    exp << g.preferential_exponent;
    frac << g.elite_fraction;
    boost << g.elite_boost;
    return {{"seed", std::to_string(g.seed)},
            {"papers", std::to_string(g.n_papers)},
            {"authors", std::to_string(g.n_authors)},
            {"authors_per_paper", o_.authors_per_paper},
            {"citations_per_paper", o_.citations_per_paper},
            {"preferential_exponent", exp.str()},
            {"elite_fraction", frac.str()},
            {"elite_boost", boost.str()}};
  }

  GenParams gen_params() const {
    GenParams p = o_.gen;
    p.authors_per_paper = parse_range(o_.authors_per_paper, "--authors-per-paper");
    p.citations_per_paper = parse_range(o_.citations_per_paper, "--citations-per-paper");
    validate(p);
    return p;
  }

  void gen(const fs::path& dir, const std::vector<std::string>& echo_lines) {
    const auto params = gen_params();
    const auto corpus = generate(params);
    const auto write = [&](const char* name, auto&& body) {
      const auto path = dir / name;
      auto out = open_out(path);
      body(out);
      close_out(out, path);
    };
    write("metadata.csv", [&](std::ostream& os) { write_metadata(os, corpus.papers, echo_lines); });
    write("citations.csv", [&](std::ostream& os) { write_citations(os, corpus.edges, echo_lines); });
    write("gold.csv", [&](std::ostream& os) { write_gold(os, synthetic_gold(params), echo_lines); });
    log_ << "gen: " << corpus.papers.size() << " papers, " << corpus.edges.size()
         << " citations";
    if (corpus.diagnostics.clamped_citation_draws || corpus.diagnostics.clamped_author_draws) {
      log_ << " (clamped draws: " << corpus.diagnostics.clamped_citation_draws
           << " citation, " << corpus.diagnostics.clamped_author_draws << " author)";
    }
    log_ << " -> " << dir.string() << '\n';
  }

  IndicatorScores compute(const std::string& metadata, const std::string& citations,
                          const fs::path& dir, const std::vector<std::string>& echo_lines) {
    auto parsed = load_corpus(metadata, citations, delimiter_of(o_));
    const auto graph = build_graph(std::move(parsed.papers), parsed.edges);
    auto scores = compute_all(graph, o_.threads);
    for (const auto& s : scores) {
      if (!(s.x <= s.h && s.h <= s.tpn)) {
        throw InvariantError("x <= h <= tpn violated for " + s.author);
      }
    }

    const auto scores_path = dir / "scores.csv";
    auto out = open_out(scores_path);
    write_scores(out, scores, echo_lines);
    close_out(out, scores_path);

    const auto& pd = parsed.diagnostics;
    const auto& gd = graph.diagnostics();
    nlohmann::ordered_json diag;
    diag["config"] = echo_lines;
    diag["papers"] = graph.paper_count();
    diag["edges"] = graph.edge_count();
    diag["authors"] = graph.author_count();
    std::size_t cited_authors = 0;
    for (const auto& s : scores) cited_authors += s.tcn > 0 ? 1 : 0;
    diag["cited_authors"] = cited_authors;
    diag["malformed_metadata"] = pd.malformed_metadata;
    diag["malformed_citations"] = pd.malformed_citations;
    diag["malformed_samples"] = pd.samples;
    diag["dangling_edges"] = gd.dangling_edges;
    diag["duplicate_edges"] = gd.duplicate_edges;
    diag["self_loops"] = gd.self_loops;
    diag["rejected_names"] = gd.rejected_names;
    diag["authorless_papers"] = gd.authorless_papers;
    const auto diag_path = dir / "diagnostics.json";
    auto dout = open_out(diag_path);
    dout << diag.dump(2) << '\n';
    close_out(dout, diag_path);

    if (o_.dump_graph) {
      const auto dump_path = dir / "graph.dump";
      auto gout = open_out(dump_path);
      graph.dump(gout);
      close_out(gout, dump_path);
    }
    log_ << "compute: " << graph.paper_count() << " papers, " << graph.edge_count()
         << " edges, " << graph.author_count() << " authors";
    if (pd.malformed_metadata || pd.malformed_citations) {
      log_ << ", skipped " << pd.malformed_metadata << " metadata and "
           << pd.malformed_citations << " citation rows";
    }
    log_ << " -> " << scores_path.string() << '\n';
    return scores;
  }

  void rank(const IndicatorScores& scores, const std::vector<Indicator>& indicators,
            const fs::path& dir, const std::vector<std::string>& echo_lines) {
    for (auto ind : indicators) {
      const auto ranked = rank_authors(scores, ind);
      const auto path = dir / ("ranked_" + std::string(indicator_key(ind)) + ".csv");
      auto out = open_out(path);
      write_ranked(out, ranked, ind, echo_lines);
      close_out(out, path);
    }
    log_ << "rank: " << indicators.size() << " rankings of " << scores.size() << " authors -> "
         << dir.string() << '\n';
  }

  void evaluate_to(const IndicatorScores& scores, const std::vector<std::string>& gold_files,
                   const fs::path& dir, const std::vector<std::string>& echo_lines) {
    const auto indicators = parse_indicators(o_.indicators);
    const auto cutoffs = parse_cutoffs(o_.at);
    std::vector<std::string> views;
    for (const auto& v : dsv::split(o_.gold_views, ',')) {
      const auto t = std::string(dsv::trim(v));
      if (t.empty()) continue;
      if (t != "nobel" && t != "all") throw ConfigError("--gold-views accepts nobel and all");
      views.push_back(t);
    }
    std::vector<GoldStandard> gold_sets;
    for (const auto& file : gold_files) {
      std::ifstream in(file, std::ios::binary);
      if (!in) throw IoError("cannot open gold file: " + file);
      const auto stem = fs::path(file).stem().string();
      auto gold = load_gold_standard(in, stem, delimiter_of(o_));
      if (gold.malformed_rows()) {
        log_ << "evaluate: " << file << ": skipped " << gold.malformed_rows()
             << " malformed rows\n";
      }
      for (const auto& view : views) {
        auto set = view == "nobel" ? gold.nobel_only() : gold;
        std::string label = stem;
        if (views.size() > 1) label = gold_files.size() == 1 ? view : stem + "-" + view;
        set.set_label(label);
        gold_sets.push_back(std::move(set));
      }
    }
    const auto report = evaluate(scores, gold_sets, indicators, cutoffs, o_.top_k);
    emit_report(report, dir, echo_lines);
    log_ << "evaluate: " << gold_sets.size() << " gold sets x " << indicators.size()
         << " indicators -> " << dir.string() << '\n';
  }

  IndicatorScores load_scores() {
    std::ifstream in(o_.scores, std::ios::binary);
    if (!in) throw IoError("cannot open scores file: " + o_.scores);
    return read_scores(in);
  }

 private:
  const Options& o_;
  std::ostream& log_;
};

void add_gen_flags(CLI::App* sub, Options& o) {
  sub->add_option("--seed", o.gen.seed, "Generator seed");
  sub->add_option("--papers", o.gen.n_papers, "Number of papers")->check(CLI::PositiveNumber);
  sub->add_option("--authors", o.gen.n_authors, "Number of distinct authors")
      ->check(CLI::PositiveNumber);
  sub->add_option("--authors-per-paper", o.authors_per_paper, "Range MIN..MAX");
  sub->add_option("--citations-per-paper", o.citations_per_paper, "Range MIN..MAX");
  sub->add_option("--pref-exp", o.gen.preferential_exponent,
                  "Preferential attachment exponent (0 = uniform)");
  sub->add_option("--elite-fraction", o.gen.elite_fraction, "Fraction of elite authors");
  sub->add_option("--elite-boost", o.gen.elite_boost, "Attractiveness multiplier for elites");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"xindex: x-index and h-index author indicators over citation graphs", "xindex"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kVersion));

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--out", o.out, "Output directory");
    sub->add_option("--delimiter", o.delimiter, "Input field delimiter (\\t for tab)");
  };
  auto add_eval = [&](CLI::App* sub, bool gold_required) {
    auto* gold = sub->add_option("--gold", o.gold, "Gold-standard file (name,category); repeatable");
    if (gold_required) gold->required();
    sub->add_option("--indicators", o.indicators, "Comma list of x,h,acnpp,tcn,tpn");
    sub->add_option("--at", o.at, "Comma list of P@N cutoffs");
    sub->add_option("--top-k", o.top_k, "Rows in the x/h top-k listing");
    sub->add_option("--gold-views", o.gold_views, "Gold subsets to score: nobel,all");
  };

  auto* compute = app.add_subcommand("compute", "Corpus files -> scores.csv");
  compute->add_option("--metadata", o.metadata, "Metadata file")->required();
  compute->add_option("--citations", o.citations, "Citations file")->required();
  compute->add_option("--threads", o.threads, "Worker threads (0 = all cores)");
  compute->add_flag("--dump-graph", o.dump_graph, "Also write graph.dump");
  add_common(compute);

  auto* rank = app.add_subcommand("rank", "scores.csv -> ranked_<indicator>.csv");
  rank->add_option("--scores", o.scores, "Scores file")->required();
  rank->add_option("--indicators", o.indicators, "Comma list of x,h,acnpp,tcn,tpn");
  add_common(rank);

  auto* evaluate_cmd = app.add_subcommand("evaluate", "scores.csv + gold sets -> P@N/AP tables");
  evaluate_cmd->add_option("--scores", o.scores, "Scores file")->required();
  add_eval(evaluate_cmd, true);
  add_common(evaluate_cmd);

  auto* gen = app.add_subcommand("gen", "Synthetic corpus -> metadata.csv, citations.csv, gold.csv");
  add_gen_flags(gen, o);
  add_common(gen);

  auto* pipeline = app.add_subcommand(
      "pipeline", "compute, rank and evaluate (generating a corpus when none is given)");
  pipeline->add_option("--metadata", o.metadata, "Metadata file");
  pipeline->add_option("--citations", o.citations, "Citations file");
  pipeline->add_option("--threads", o.threads, "Worker threads (0 = all cores)");
  pipeline->add_flag("--dump-graph", o.dump_graph, "Also write graph.dump");
  add_eval(pipeline, false);
  add_gen_flags(pipeline, o);
  add_common(pipeline);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  if (!reversed.empty()) reversed.pop_back();  // program name
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    const auto* failed = app.get_subcommands().empty() ? &app : app.get_subcommands().front();
    err << failed->help();
    return kUsage;
  }

  Runner runner(o, err);
  const fs::path dir = o.out;
  try {
    if (*compute) {
      require_file(o.metadata, "--metadata");
      require_file(o.citations, "--citations");
      const auto echo = runner.echo("compute", {{"metadata", o.metadata},
                                                {"citations", o.citations},
                                                {"delimiter", o.delimiter}});
      runner.compute(o.metadata, o.citations, dir, echo);
      write_config(dir, echo);
    } else if (*rank) {
      require_file(o.scores, "--scores");
      const auto indicators = parse_indicators(o.indicators);
      const auto echo = runner.echo("rank", {{"scores", o.scores}, {"indicators", o.indicators}});
      runner.rank(runner.load_scores(), indicators, dir, echo);
      write_config(dir, echo);
    } else if (*evaluate_cmd) {
      require_file(o.scores, "--scores");
      for (const auto& g : o.gold) require_file(g, "--gold");
      parse_indicators(o.indicators);
      parse_cutoffs(o.at);
      std::vector<std::pair<std::string, std::string>> items{{"scores", o.scores}};
      for (const auto& g : o.gold) items.emplace_back("gold", g);
      items.insert(items.end(), {{"indicators", o.indicators},
                                 {"at", o.at},
                                 {"top_k", std::to_string(o.top_k)},
                                 {"gold_views", o.gold_views}});
      const auto echo = runner.echo("evaluate", items);
      runner.evaluate_to(runner.load_scores(), o.gold, dir, echo);
      write_config(dir, echo);
    } else if (*gen) {
      runner.gen_params();
      const auto echo = runner.echo("gen", runner.gen_items());
      runner.gen(dir, echo);
      write_config(dir, echo);
    } else if (*pipeline) {
      const bool generated = o.metadata.empty() && o.citations.empty();
      if (!generated) {
        require_file(o.metadata, "--metadata");
        require_file(o.citations, "--citations");
      } else {
        runner.gen_params();
      }
      for (const auto& g : o.gold) require_file(g, "--gold");
      const auto indicators = parse_indicators(o.indicators);
      parse_cutoffs(o.at);

      std::vector<std::pair<std::string, std::string>> items;
      if (generated) {
        items = runner.gen_items();
      } else {
        items = {{"metadata", o.metadata}, {"citations", o.citations}, {"delimiter", o.delimiter}};
      }
      for (const auto& g : o.gold) items.emplace_back("gold", g);
      items.insert(items.end(), {{"indicators", o.indicators},
                                 {"at", o.at},
                                 {"top_k", std::to_string(o.top_k)},
                                 {"gold_views", o.gold_views}});
      const auto echo = runner.echo("pipeline", items);

      std::string metadata = o.metadata;
      std::string citations = o.citations;
      std::vector<std::string> gold_files = o.gold;
      if (generated) {
        runner.gen(dir / "corpus", echo);
        metadata = (dir / "corpus" / "metadata.csv").string();
        citations = (dir / "corpus" / "citations.csv").string();
        if (gold_files.empty()) gold_files.push_back((dir / "corpus" / "gold.csv").string());
      }
      const auto scores = runner.compute(metadata, citations, dir, echo);
      runner.rank(scores, indicators, dir / "ranked", echo);
      if (!gold_files.empty()) {
        runner.evaluate_to(scores, gold_files, dir / "evaluation", echo);
      } else {
        err << "pipeline: no --gold given, evaluation skipped\n";
      }
      write_config(dir, echo);
    }
  } catch (const InvariantError& e) {
    err << "internal error: " << e.what() << '\n';
    return kInternal;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const NotFoundError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const CorpusError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const ArgumentError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kInternal;
  }
  return kOk;
}

int run(int argc, char** argv) {
  return run(std::vector<std::string>(argv, argv + argc), std::cout, std::cerr);
}

}  // namespace xindex::cli
