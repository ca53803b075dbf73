#pragma once

// End-to-end search over a frozen graph.

#include <future>
#include <memory>
#include <string>
#include <vector>

#include "hetkg/config.hpp"
#include "hetkg/embedding.hpp"
#include "hetkg/graph_store.hpp"
#include "hetkg/http_providers.hpp"
#include "hetkg/propagation.hpp"
#include "hetkg/query_analysis.hpp"
#include "hetkg/ranking.hpp"
#include "hetkg/seed_matching.hpp"

namespace hetkg {

enum class SearchMode { Papers, Authors };

struct Providers {
  std::shared_ptr<const EmbeddingProvider> embedder;
  std::shared_ptr<const Reranker> reranker;           // null: retrieval order
  std::shared_ptr<const KeywordExtractor> keywords;   // null: fallback
  std::shared_ptr<const TitleExtractor> titles;       // null: fallback
};

/// Providers selected by the config; "fallback" slots use the built-ins.
inline Providers make_providers(const Config& config) {
  Providers p;
  const auto& emb = config.embedding;
  if (emb.provider.kind == "http") {
    p.embedder = std::make_shared<HttpEmbeddingProvider>(emb.provider, emb.dimension);
  } else {
    p.embedder = std::make_shared<HashingEmbedder>(emb.dimension, emb.ngram_min, emb.ngram_max);
  }
  if (config.matching.reranker.kind == "http") {
    p.reranker = std::make_shared<HttpReranker>(config.matching.reranker);
  } else {
    p.reranker = std::make_shared<EmbeddingReranker>(p.embedder);
  }
  if (config.query.keyword_provider.kind == "http") {
    p.keywords = std::make_shared<HttpKeywordExtractor>(config.query.keyword_provider);
  }
  if (config.query.title_provider.kind == "http") {
    p.titles = std::make_shared<HttpTitleExtractor>(config.query.title_provider);
  }
  return p;
}

struct SearchResponse {
  SearchMode mode = SearchMode::Papers;
  std::vector<ExtractedKeyword> keywords;
  std::vector<ExtractedTitle> titles;
  std::vector<KeywordSeed> keyword_seeds;
  std::vector<PaperSeed> paper_seeds;
  std::vector<RankedResult> results;
  std::size_t subgraph_nodes = 0;
  std::size_t subgraph_edges = 0;
  int iterations = 0;
  double final_delta = 0.0;
  bool empty_recall = false;
  Diagnostics diagnostics;
};

class SearchEngine {
 public:
  SearchEngine(GraphHandle graph, Config config, Providers providers)
      : graph_(std::move(graph)), config_(std::move(config)), providers_(std::move(providers)) {
    if (!graph_) throw Error("search engine requires a graph");
    if (!providers_.embedder) throw Error("search engine requires an embedding provider");
    if (providers_.embedder->dimension() != graph_->dimension()) {
      throw DimensionMismatch("embedder dimension " +
                              std::to_string(providers_.embedder->dimension()) +
                              " differs from graph dimension " +
                              std::to_string(graph_->dimension()));
    }
  }

  SearchEngine(GraphHandle graph, Config config)
      : SearchEngine(std::move(graph), config, make_providers(config)) {}

  const PropertyGraph& graph() const { return *graph_; }
  const Config& config() const { return config_; }

  SearchResponse search(const QueryInput& query, SearchMode mode = SearchMode::Papers) const {
    const PropertyGraph& g = *graph_;
    SearchResponse out;
    out.mode = mode;

    std::string embed_text = query_embedding_text(query, config_.query, out.diagnostics);
    EmbeddingVector e_q = providers_.embedder->embed(embed_text);
    out.keywords =
        extract_keywords(query, providers_.keywords.get(), config_.query, out.diagnostics);
    out.titles = extract_titles(query, providers_.titles.get(), config_.query, out.diagnostics);

    Diagnostics sem_diag;
    auto keyword_path = [&] {
      return match_keywords(out.keywords, g, *providers_.embedder, config_.matching);
    };
    auto semantic_path = [&] {
      return match_semantic(e_q, embed_text, g, providers_.reranker.get(), config_.matching,
                            sem_diag);
    };
    auto title_path = [&] { return match_titles(out.titles, g, config_.matching); };

    std::vector<SemanticCandidate> semantic;
    std::vector<TitleCandidate> title_hits;
    if (config_.threads > 1) {
      auto f_kw = std::async(std::launch::async, keyword_path);
      auto f_sem = std::async(std::launch::async, semantic_path);
      title_hits = title_path();
      out.keyword_seeds = f_kw.get();
      semantic = f_sem.get();
    } else {
      out.keyword_seeds = keyword_path();
      semantic = semantic_path();
      title_hits = title_path();
    }
    out.diagnostics.merge(sem_diag);

    out.paper_seeds =
        merge_candidates(semantic, title_hits, e_q, g, config_.matching, out.diagnostics);
    if (out.keyword_seeds.empty() && out.paper_seeds.empty()) {
      out.empty_recall = true;
      return out;
    }

    WeightedSubgraph sub =
        expand_subgraph(out.keyword_seeds, out.paper_seeds, g, config_.propagation);
    seed_teleport(sub, out.keyword_seeds, out.paper_seeds, g, config_.propagation,
                  out.diagnostics);
    RwrResult rwr = rwr_solve(sub, config_.propagation);
    out.subgraph_nodes = sub.size;
    out.subgraph_edges = sub.edges.size();
    out.iterations = rwr.iterations;
    out.final_delta = rwr.final_delta;

    out.results = mode == SearchMode::Papers
                      ? rank_papers(sub, rwr, out.paper_seeds, g, config_.ranking,
                                    config_.propagation.importance_mode)
                      : rank_authors(sub, rwr, g, config_.ranking);
    Transitions transitions(sub);
    for (auto& r : out.results) {
      r.paths = explain(r.node, sub, transitions, g, config_.ranking.max_paths);
    }
    return out;
  }

 private:
  GraphHandle graph_;
  Config config_;
  Providers providers_;
};

}  // namespace hetkg
