#pragma once

// Tri-path recall: keyword seeds, semantic paper candidates, title paper
// candidates, and the merge into one pre-graph score per paper.

#include <algorithm>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "hetkg/config.hpp"
#include "hetkg/embedding.hpp"
#include "hetkg/graph_store.hpp"
#include "hetkg/query_analysis.hpp"
#include "hetkg/text.hpp"

namespace hetkg {

struct KeywordSeed {
  NodeIndex node;
  double weight = 0.0;
};

enum class TitleHit { None, Fuzzy, Exact };

inline constexpr std::string_view to_string(TitleHit h) {
  switch (h) {
    case TitleHit::Exact: return "exact";
    case TitleHit::Fuzzy: return "fuzzy";
    case TitleHit::None: return "none";
  }
  return "none";
}

struct SemanticCandidate {
  NodeIndex node;
  double score = 0.0;  // channel-weighted rerank score
  std::optional<double> title_channel;
  std::optional<double> abstract_channel;
};

struct TitleCandidate {
  NodeIndex node;
  double score = 0.0;
  TitleHit hit = TitleHit::None;
};

struct PaperSeed {
  NodeIndex node;
  double s_pre = 0.0;
  TitleHit title_hit = TitleHit::None;
  double emb_raw = 0.0;     // recomputed channel-weighted cosine
  double title_raw = 0.0;   // 0 when the paper had no title match
  double emb_norm = 0.0;
  double title_norm = 0.0;
  double bonus = 0.0;
};

namespace seed_detail {

inline auto id_less(const PropertyGraph& g) {
  return [&g](NodeIndex a, NodeIndex b) { return g.id(a) < g.id(b); };
}

}  // namespace seed_detail

// ---------------------------------------------------------------------------
// Keyword path
// ---------------------------------------------------------------------------

/// Exact hits score the keyword importance; vector hits at or above
/// theta_kw score importance times similarity (top `keyword_vector_top` per
/// keyword). Each node keeps the maximum over all events. Ordered by weight
/// descending, then id.
inline std::vector<KeywordSeed> match_keywords(std::span<const ExtractedKeyword> keywords,
                                               const PropertyGraph& graph,
                                               const EmbeddingProvider& embedder,
                                               const MatchingConfig& config) {
  std::unordered_map<NodeIndex, double> best;
  auto record = [&](NodeIndex n, double w) {
    if (!(w > 0.0)) return;
    auto [it, inserted] = best.try_emplace(n, w);
    if (!inserted) it->second = std::max(it->second, w);
  };
  for (const auto& kw : keywords) {
    std::string text = normalize_text(kw.text);
    if (text.empty()) continue;
    for (NodeIndex n : graph.lookup_exact(NodeKind::Keyword, text)) record(n, kw.importance);
    if (config.keyword_vector_top == 0) continue;
    EmbeddingVector e = embedder.embed(text);
    for (const auto& hit : graph.vector_search(VectorField::KeywordText, e.span(),
                                               config.keyword_vector_top)) {
      if (hit.score >= config.theta_kw) record(hit.node, kw.importance * hit.score);
    }
  }
  std::vector<KeywordSeed> out;
  out.reserve(best.size());
  for (auto [n, w] : best) out.push_back({n, w});
  auto less = seed_detail::id_less(graph);
  std::sort(out.begin(), out.end(), [&](const KeywordSeed& a, const KeywordSeed& b) {
    if (a.weight != b.weight) return a.weight > b.weight;
    return less(a.node, b.node);
  });
  return out;
}

// ---------------------------------------------------------------------------
// Semantic path
// ---------------------------------------------------------------------------

/// (w_t * s_t + w_a * s_a) / (w_t * [s_t present] + w_a * [s_a present]);
/// 0 when neither channel is present.
inline double combine_channels(std::optional<double> title, std::optional<double> abstract,
                               const MatchingConfig& config) {
  double num = 0.0;
  double den = 0.0;
  if (title) {
    num += config.channel_weight_title * *title;
    den += config.channel_weight_title;
  }
  if (abstract) {
    num += config.channel_weight_abstract * *abstract;
    den += config.channel_weight_abstract;
  }
  return den > 0.0 ? num / den : 0.0;
}

/// Vector retrieval per channel, reranked and truncated. A failing reranker
/// (or none) falls back to the retrieval cosine order; the fallback is
/// recorded in `diag`.
inline std::vector<SemanticCandidate> match_semantic(const EmbeddingVector& e_q,
                                                     std::string_view query_text,
                                                     const PropertyGraph& graph,
                                                     const Reranker* reranker,
                                                     const MatchingConfig& config,
                                                     Diagnostics& diag) {
  auto less = seed_detail::id_less(graph);
  std::map<NodeIndex, SemanticCandidate> merged;
  bool reranker_failed = false;

  auto run_channel = [&](VectorField field) {
    auto hits = graph.vector_search(field, e_q.span(), config.semantic_top);
    if (hits.empty()) return;
    std::vector<RerankCandidate> cands;
    std::vector<double> cosines;
    cands.reserve(hits.size());
    for (const auto& h : hits) {
      const PaperNode& p = graph.paper(h.node);
      cands.push_back({h.node, p.title, p.abstract});
      cosines.push_back(h.score);
    }
    std::vector<RerankScore> ranked;
    if (reranker != nullptr && !reranker_failed) {
      try {
        ranked = rerank(*reranker, query_text, cands, less);
      } catch (const std::exception& e) {
        reranker_failed = true;
        diag.fallback("rerank", e.what());
      }
    }
    if (ranked.empty()) ranked = order_rerank_scores(cands, cosines, less);
    if (ranked.size() > config.rerank_keep) ranked.resize(config.rerank_keep);
    for (const auto& r : ranked) {
      auto& c = merged.try_emplace(r.node, SemanticCandidate{r.node, 0.0, std::nullopt, std::nullopt}).first->second;
      (field == VectorField::PaperTitle ? c.title_channel : c.abstract_channel) = r.score;
    }
  };
  run_channel(VectorField::PaperTitle);
  run_channel(VectorField::PaperAbstract);

  std::vector<SemanticCandidate> out;
  out.reserve(merged.size());
  for (auto& [n, c] : merged) {
    c.score = combine_channels(c.title_channel, c.abstract_channel, config);
    out.push_back(c);
  }
  std::sort(out.begin(), out.end(), [&](const auto& a, const auto& b) {
    if (a.score != b.score) return a.score > b.score;
    return less(a.node, b.node);
  });
  return out;
}

// ---------------------------------------------------------------------------
// Title path
// ---------------------------------------------------------------------------

/// Length of the longest common subsequence of two code-point strings.
inline std::size_t lcs_length(std::u32string_view a, std::u32string_view b) {
  if (a.size() < b.size()) std::swap(a, b);
  std::vector<std::size_t> row(b.size() + 1, 0);
  for (char32_t ca : a) {
    std::size_t diag = 0;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      std::size_t up = row[j];
      row[j] = ca == b[j - 1] ? diag + 1 : std::max(row[j], row[j - 1]);
      diag = up;
    }
  }
  return row[b.size()];
}

/// Jaccard overlap of whitespace token sets.
inline double token_jaccard(std::string_view a, std::string_view b) {
  auto ta = split_tokens(a);
  auto tb = split_tokens(b);
  std::unordered_set<std::string_view> sa(ta.begin(), ta.end());
  std::unordered_set<std::string_view> sb(tb.begin(), tb.end());
  if (sa.empty() && sb.empty()) return 0.0;
  std::size_t inter = 0;
  for (auto t : sa) inter += sb.contains(t) ? 1 : 0;
  return static_cast<double>(inter) / static_cast<double>(sa.size() + sb.size() - inter);
}

/// Similarity of two normalized titles: 1 iff equal, otherwise a weighted
/// sum of the LCS ratio and token Jaccard. Empty input scores 0.
inline double fuzzy_title_score(std::string_view a, std::string_view b,
                                double seq_weight = 0.65, double token_weight = 0.35) {
  if (a.empty() || b.empty()) return 0.0;
  if (a == b) return 1.0;
  std::u32string ca = to_code_points(a);
  std::u32string cb = to_code_points(b);
  double seq = 2.0 * static_cast<double>(lcs_length(ca, cb)) /
               static_cast<double>(ca.size() + cb.size());
  double m = seq_weight * seq + token_weight * token_jaccard(a, b);
  // Unequal strings never reach 1 even if rounding says otherwise.
  return std::min(m, std::nextafter(1.0, 0.0));
}

/// Exact-key hits plus the `fuzzy_pool_cap` papers with the highest token
/// Jaccard from the inverted title-token index (ties by id).
inline std::vector<NodeIndex> fuzzy_candidate_pool(std::string_view title,
                                                   const PropertyGraph& graph,
                                                   const MatchingConfig& config) {
  auto less = seed_detail::id_less(graph);
  std::vector<NodeIndex> exact = graph.lookup_title_key(title);

  auto tokens = split_tokens(title);
  std::unordered_set<std::string_view> query_tokens(tokens.begin(), tokens.end());
  std::unordered_map<NodeIndex, std::size_t> shared;
  for (auto t : query_tokens) {
    for (NodeIndex p : graph.title_token_postings(t)) ++shared[p];
  }
  std::unordered_set<NodeIndex> exact_set(exact.begin(), exact.end());
  struct Ranked {
    NodeIndex node;
    double jaccard;
  };
  std::vector<Ranked> ranked;
  ranked.reserve(shared.size());
  for (auto [p, inter] : shared) {
    if (exact_set.contains(p)) continue;
    auto ptoks = split_tokens(graph.title_key(p));
    std::unordered_set<std::string_view> distinct(ptoks.begin(), ptoks.end());
    double uni = static_cast<double>(query_tokens.size() + distinct.size() - inter);
    ranked.push_back({p, static_cast<double>(inter) / uni});
  }
  std::size_t cap = std::min(config.fuzzy_pool_cap, ranked.size());
  auto better = [&](const Ranked& a, const Ranked& b) {
    if (a.jaccard != b.jaccard) return a.jaccard > b.jaccard;
    return less(a.node, b.node);
  };
  std::partial_sort(ranked.begin(), ranked.begin() + static_cast<std::ptrdiff_t>(cap),
                    ranked.end(), better);
  ranked.resize(cap);

  std::vector<NodeIndex> pool = std::move(exact);
  for (const auto& r : ranked) pool.push_back(r.node);
  return pool;
}

/// Per title: exact hits score c, fuzzy hits with m >= theta_title score
/// c*m, top `title_top_per_query` kept. Per paper: max over titles; the hit
/// is exact if any contributing match was exact.
inline std::vector<TitleCandidate> match_titles(std::span<const ExtractedTitle> titles,
                                                const PropertyGraph& graph,
                                                const MatchingConfig& config) {
  auto less = seed_detail::id_less(graph);
  std::unordered_map<NodeIndex, TitleCandidate> best;
  for (const auto& t : titles) {
    std::string key = normalize_title(t.text);
    if (key.empty()) continue;
    std::vector<TitleCandidate> hits;
    for (NodeIndex p : fuzzy_candidate_pool(key, graph, config)) {
      const std::string& pkey = graph.title_key(p);
      bool exact = pkey == key;
      double m = exact ? 1.0
                       : fuzzy_title_score(key, pkey, config.fuzzy_seq_weight,
                                           config.fuzzy_token_weight);
      if (!exact && m < config.theta_title) continue;
      hits.push_back({p, t.confidence * m, exact ? TitleHit::Exact : TitleHit::Fuzzy});
    }
    std::sort(hits.begin(), hits.end(), [&](const auto& a, const auto& b) {
      if (a.score != b.score) return a.score > b.score;
      if (a.hit != b.hit) return a.hit > b.hit;
      return less(a.node, b.node);
    });
    if (hits.size() > config.title_top_per_query) hits.resize(config.title_top_per_query);
    for (const auto& h : hits) {
      auto [it, inserted] = best.try_emplace(h.node, h);
      if (!inserted) {
        it->second.score = std::max(it->second.score, h.score);
        it->second.hit = std::max(it->second.hit, h.hit);
      }
    }
  }
  std::vector<TitleCandidate> out;
  out.reserve(best.size());
  for (auto& [n, c] : best) out.push_back(c);
  std::sort(out.begin(), out.end(), [&](const auto& a, const auto& b) {
    if (a.score != b.score) return a.score > b.score;
    return less(a.node, b.node);
  });
  return out;
}

// ---------------------------------------------------------------------------
// Merge
// ---------------------------------------------------------------------------

/// Channel-weighted cosine of the query against the paper's stored
/// embeddings; nullopt when the paper has neither.
inline std::optional<double> stored_similarity(const EmbeddingVector& e_q, NodeIndex paper,
                                               const PropertyGraph& graph,
                                               const MatchingConfig& config) {
  std::optional<double> t;
  std::optional<double> a;
  if (auto v = graph.embedding(VectorField::PaperTitle, paper)) t = cosine(e_q.span(), *v);
  if (auto v = graph.embedding(VectorField::PaperAbstract, paper)) a = cosine(e_q.span(), *v);
  if (!t && !a) return std::nullopt;
  return combine_channels(t, a, config);
}

/// Unified pre-graph scores over the union of both paper paths, ordered by
/// s_pre descending, then id.
inline std::vector<PaperSeed> merge_candidates(std::span<const SemanticCandidate> semantic,
                                               std::span<const TitleCandidate> titles,
                                               const EmbeddingVector& e_q,
                                               const PropertyGraph& graph,
                                               const MatchingConfig& config, Diagnostics& diag) {
  std::map<NodeIndex, PaperSeed> pool;
  for (const auto& s : semantic) pool.try_emplace(s.node, PaperSeed{s.node});
  for (const auto& t : titles) {
    auto& seed = pool.try_emplace(t.node, PaperSeed{t.node}).first->second;
    seed.title_raw = t.score;
    seed.title_hit = t.hit;
  }
  if (pool.empty()) return {};

  std::vector<PaperSeed> out;
  out.reserve(pool.size());
  for (auto& [n, seed] : pool) {
    if (auto sim = stored_similarity(e_q, n, graph, config)) {
      seed.emb_raw = *sim;
    } else {
      diag.fallback("merge", "paper '" + graph.id(n) + "' has no stored embeddings");
    }
    out.push_back(seed);
  }

  std::vector<double> emb(out.size());
  std::vector<double> ttl(out.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    emb[i] = out[i].emb_raw;
    ttl[i] = out[i].title_raw;
  }
  auto emb_n = minmax_normalize(emb);
  auto ttl_n = minmax_normalize(ttl);
  for (std::size_t i = 0; i < out.size(); ++i) {
    auto& s = out[i];
    s.emb_norm = emb_n[i];
    s.title_norm = ttl_n[i];
    s.bonus = s.title_hit == TitleHit::Exact   ? config.bonus_exact
              : s.title_hit == TitleHit::Fuzzy ? config.bonus_fuzzy
                                               : 0.0;
    s.s_pre = config.lambda_emb * s.emb_norm + config.lambda_title * s.title_norm + s.bonus;
  }
  auto less = seed_detail::id_less(graph);
  std::sort(out.begin(), out.end(), [&](const PaperSeed& a, const PaperSeed& b) {
    if (a.s_pre != b.s_pre) return a.s_pre > b.s_pre;
    return less(a.node, b.node);
  });
  return out;
}

}  // namespace hetkg
