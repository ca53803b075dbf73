#pragma once

// Command-line front end. Kept in a header so tests can run commands
// in-process; hetkg_cli.cpp only forwards argv.
//
// Exit codes: 0 success (including empty results), 1 usage or config error,
// 2 data error, 3 provider error.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "hetkg/hetkg.hpp"

namespace hetkg::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitData = 2;
inline constexpr int kExitProvider = 3;

struct Options {
  std::string config_file;
  std::vector<std::string> overrides;
  bool print_config = false;

  // shared
  std::string corpus;
  std::string format;
  std::optional<std::size_t> threads;

  // ingest / synth
  std::string out_dir;
  std::optional<std::size_t> papers;
  std::optional<std::size_t> authors;
  std::optional<std::size_t> vocab;
  std::optional<std::uint64_t> seed;

  // search
  std::string query;
  std::string query_file;
  std::string kind = "question";
  std::vector<std::string> reference_titles;
  std::string mode = "papers";
  std::optional<std::size_t> k;
  std::string importance;
};

/// Defaults, then the config file, then --set, then dedicated flags.
inline Config effective_config(const Options& o) {
  nlohmann::json tree = to_json_tree(Config{});
  if (!o.config_file.empty()) {
    nlohmann::json file = read_config_file(o.config_file);
    detail::check_known_keys(file, tree, "");
    tree.merge_patch(file);
  }
  for (const auto& s : o.overrides) apply_override(tree, s);
  if (!o.corpus.empty()) tree["corpus"] = o.corpus;
  if (!o.format.empty()) tree["output_format"] = o.format;
  if (o.threads) tree["threads"] = *o.threads;
  if (o.k) tree["ranking"]["k"] = *o.k;
  if (!o.importance.empty()) tree["propagation"]["importance_mode"] = o.importance;
  if (o.papers) tree["synth"]["paper_count"] = *o.papers;
  if (o.authors) tree["synth"]["author_count"] = *o.authors;
  if (o.vocab) tree["synth"]["keyword_vocab_size"] = *o.vocab;
  if (o.seed) tree["synth"]["rng_seed"] = *o.seed;
  if (tree.contains("propagation") && tree["propagation"].contains("importance_mode")) {
    const auto& m = tree["propagation"]["importance_mode"];
    if (!m.is_string() || (m != "quality" && m != "relevance")) {
      throw ConfigError("propagation.importance_mode must be 'quality' or 'relevance'");
    }
  }
  return config_from_json(tree);
}

inline int do_print_config(const Config& c, std::ostream& out) {
  out << to_json_tree(c).dump(2) << "\n";
  return kExitOk;
}

inline int do_ingest(const Options& o, const Config& c, std::ostream& out) {
  if (c.corpus.empty()) throw ConfigError("ingest needs --corpus");
  auto [graph, report] = ingest(c.corpus, c);
  if (!o.out_dir.empty()) write_corpus(*graph, o.out_dir);
  out << to_json(report).dump(2) << "\n";
  return kExitOk;
}

inline int do_synth(const Options& o, const Config& c, std::ostream& out) {
  if (o.out_dir.empty()) throw ConfigError("synth needs --out");
  HashingEmbedder embedder(c.embedding.dimension, c.embedding.ngram_min, c.embedding.ngram_max);
  PropertyGraph g = generate_synthetic(c.synth, embedder);
  write_corpus(g, o.out_dir);
  out << "wrote " << g.node_count() << " nodes and " << g.edge_count() << " edges to "
      << o.out_dir << "\n";
  return kExitOk;
}

inline int do_search(const Options& o, const Config& c, std::ostream& out, std::ostream& err) {
  if (c.corpus.empty()) throw ConfigError("search needs --corpus");
  QueryInput q;
  auto kind = query_kind_from_string(o.kind);
  if (!kind) throw ConfigError("unknown query kind '" + o.kind + "'");
  q.kind = *kind;
  if (!o.query_file.empty()) {
    std::ifstream in(o.query_file, std::ios::binary);
    if (!in) throw ConfigError("cannot read query file " + o.query_file);
    std::stringstream ss;
    ss << in.rdbuf();
    q.text = ss.str();
  } else {
    q.text = o.query;
  }
  if (trim_ascii(q.text).empty()) throw ConfigError("query text is empty");
  q.reference_titles = o.reference_titles;
  SearchMode mode = o.mode == "authors" ? SearchMode::Authors : SearchMode::Papers;

  auto [graph, report] = ingest(c.corpus, c);
  if (report.dropped_total() > 0) {
    err << "warning: " << report.dropped_total() << " corpus records were dropped\n";
  }
  SearchEngine engine(graph, c);
  SearchResponse res = engine.search(q, mode);
  out << (c.output_format == "jsonl" ? render_jsonl(res, *graph) : render_table(res, *graph));
  return kExitOk;
}

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Heterogeneous scholarly graph search"};
  app.require_subcommand(0, 1);
  app.fallthrough();  // global options may follow the subcommand
  app.add_option("--config", o.config_file, "JSON config file")->check(CLI::ExistingFile);
  app.add_option("--set", o.overrides, "Override a config value, e.g. ranking.k=10");
  app.add_flag("--print-config", o.print_config, "Print the effective config and exit");

  auto* print_cmd = app.add_subcommand("print-config", "Print the effective config");

  auto* ingest_cmd = app.add_subcommand("ingest", "Load and validate a corpus directory");
  ingest_cmd->add_option("--corpus", o.corpus, "Corpus directory");
  ingest_cmd->add_option("--out", o.out_dir, "Write a normalized snapshot here");

  auto* synth_cmd = app.add_subcommand("synth", "Generate a synthetic corpus");
  synth_cmd->add_option("--out", o.out_dir, "Output directory")->required();
  synth_cmd->add_option("--papers", o.papers, "Number of papers");
  synth_cmd->add_option("--authors", o.authors, "Number of authors");
  synth_cmd->add_option("--vocab", o.vocab, "Keyword vocabulary size");
  synth_cmd->add_option("--seed", o.seed, "Random seed");

  auto* search_cmd = app.add_subcommand("search", "Search a corpus");
  search_cmd->add_option("--corpus", o.corpus, "Corpus directory");
  auto* q_opt = search_cmd->add_option("-q,--query", o.query, "Query text");
  auto* qf_opt =
      search_cmd->add_option("--query-file", o.query_file, "Read the query text from a file");
  q_opt->excludes(qf_opt);
  search_cmd->add_option("--kind", o.kind, "keywords|question|abstract|idea|full_paper")
      ->check(CLI::IsMember({"keywords", "question", "abstract", "idea", "full_paper"}));
  search_cmd->add_option("--ref-title", o.reference_titles, "Known reference title (repeatable)");
  search_cmd->add_option("--mode", o.mode, "papers|authors")
      ->check(CLI::IsMember({"papers", "authors"}));
  search_cmd->add_option("--format", o.format, "table|jsonl")
      ->check(CLI::IsMember({"table", "jsonl"}));
  search_cmd->add_option("-k", o.k, "Number of results");
  search_cmd->add_option("--threads", o.threads, "Worker threads for the recall paths");
  search_cmd->add_option("--importance", o.importance, "quality|relevance")
      ->check(CLI::IsMember({"quality", "relevance"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    Config config = effective_config(o);
    if (o.print_config || print_cmd->parsed()) return do_print_config(config, out);
    if (ingest_cmd->parsed()) return do_ingest(o, config, out);
    if (synth_cmd->parsed()) return do_synth(o, config, out);
    if (search_cmd->parsed()) return do_search(o, config, out, err);
    err << app.help();
    return kExitUsage;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ProviderError& e) {
    err << "provider error: " << e.what() << "\n";
    return kExitProvider;
  } catch (const std::exception& e) {
    err << "data error: " << e.what() << "\n";
    return kExitData;
  }
}

}  // namespace hetkg::cli
