#pragma once

// Final fusion of pre-graph, walk and importance scores; author ranking;
// seed-to-result path explanations.

#include <algorithm>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "hetkg/config.hpp"
#include "hetkg/embedding.hpp"
#include "hetkg/graph_store.hpp"
#include "hetkg/propagation.hpp"
#include "hetkg/seed_matching.hpp"

namespace hetkg {

struct ExplanationPath {
  std::vector<NodeIndex> nodes;  // seed first, result last
  std::vector<EdgeKind> kinds;   // strongest edge kind per step
  std::vector<double> weights;   // summed edge weight per step
  double seed_weight = 0.0;      // teleport mass of the seed
  double score = 0.0;            // seed_weight times step probabilities
};

struct ScoreBreakdown {
  double pre_raw = 0.0;
  double pre_norm = 0.0;
  double graph_raw = 0.0;
  double graph_norm = 0.0;
  double support = 0.0;
  double importance = 0.0;
  double bonus = 0.0;
  TitleHit title_hit = TitleHit::None;
  int hop = 0;
  bool seed = false;
};

struct RankedResult {
  NodeIndex node;
  NodeKind kind = NodeKind::Paper;
  double score = 0.0;
  ScoreBreakdown breakdown;
  std::vector<ExplanationPath> paths;
};

/// min(1, l_pre*pre + l_graph*graph*support + l_imp*imp).
inline double final_score(double pre_norm, double graph_norm, double support, double importance,
                          const RankingConfig& config) {
  return std::min(1.0, config.lambda_pre * pre_norm +
                           config.lambda_graph * graph_norm * support +
                           config.lambda_imp * importance);
}

/// Every paper in the subgraph, scored and sorted; the first `config.k`
/// are returned. Papers reached only through the walk get pre_norm = 0.
/// Ties: citation count descending (quality mode only), then id.
inline std::vector<RankedResult> rank_papers(const WeightedSubgraph& sub, const RwrResult& rwr,
                                             std::span<const PaperSeed> paper_seeds,
                                             const PropertyGraph& graph,
                                             const RankingConfig& config,
                                             ImportanceMode mode) {
  std::vector<std::uint32_t> pool;
  for (std::uint32_t i = 0; i < sub.size; ++i) {
    if (graph.kind(sub.nodes[i]) == NodeKind::Paper) pool.push_back(i);
  }
  if (pool.empty()) return {};

  std::unordered_map<NodeIndex, const PaperSeed*> seed_of;
  for (const auto& s : paper_seeds) seed_of.emplace(s.node, &s);
  std::vector<double> pre_raw;
  for (const auto& s : paper_seeds) {
    if (sub.local.contains(s.node)) pre_raw.push_back(s.s_pre);
  }
  std::vector<double> pre_norm = minmax_normalize(pre_raw);
  std::unordered_map<NodeIndex, double> pre_of;
  {
    std::size_t j = 0;
    for (const auto& s : paper_seeds) {
      if (sub.local.contains(s.node)) pre_of[s.node] = pre_norm[j++];
    }
  }

  std::vector<double> graph_raw;
  graph_raw.reserve(pool.size());
  double total_citations = 0.0;
  for (auto i : pool) {
    graph_raw.push_back(rwr.scores.at(i));
    total_citations += static_cast<double>(graph.paper(sub.nodes[i]).citation_count);
  }
  std::vector<double> graph_norm = minmax_normalize(graph_raw);

  std::vector<RankedResult> out;
  out.reserve(pool.size());
  for (std::size_t j = 0; j < pool.size(); ++j) {
    NodeIndex n = sub.nodes[pool[j]];
    RankedResult r{n, NodeKind::Paper, 0.0, {}, {}};
    auto& b = r.breakdown;
    if (auto it = seed_of.find(n); it != seed_of.end()) {
      b.seed = true;
      b.pre_raw = it->second->s_pre;
      b.pre_norm = pre_of.at(n);
      b.bonus = it->second->bonus;
      b.title_hit = it->second->title_hit;
    }
    b.graph_raw = graph_raw[j];
    b.graph_norm = graph_norm[j];
    b.support = std::max(config.g_floor, b.pre_norm);
    b.importance = paper_importance(static_cast<double>(graph.paper(n).citation_count),
                                    total_citations, mode);
    b.hop = sub.hop[pool[j]];
    r.score = final_score(b.pre_norm, b.graph_norm, b.support, b.importance, config);
    out.push_back(std::move(r));
  }
  bool by_citations = mode == ImportanceMode::Quality;
  std::sort(out.begin(), out.end(), [&](const RankedResult& a, const RankedResult& b) {
    if (a.score != b.score) return a.score > b.score;
    if (by_citations) {
      auto ca = graph.paper(a.node).citation_count;
      auto cb = graph.paper(b.node).citation_count;
      if (ca != cb) return ca > cb;
    }
    return graph.id(a.node) < graph.id(b.node);
  });
  if (out.size() > config.k) out.resize(config.k);
  return out;
}

/// Authors in the subgraph by MinMax-normalized walk score; ties by
/// cited_by_count descending, then id.
inline std::vector<RankedResult> rank_authors(const WeightedSubgraph& sub, const RwrResult& rwr,
                                              const PropertyGraph& graph,
                                              const RankingConfig& config) {
  std::vector<std::uint32_t> pool;
  for (std::uint32_t i = 0; i < sub.size; ++i) {
    if (graph.kind(sub.nodes[i]) == NodeKind::Author) pool.push_back(i);
  }
  std::vector<double> raw;
  for (auto i : pool) raw.push_back(rwr.scores.at(i));
  std::vector<double> norm = minmax_normalize(raw);
  std::vector<RankedResult> out;
  for (std::size_t j = 0; j < pool.size(); ++j) {
    RankedResult r{sub.nodes[pool[j]], NodeKind::Author, 0.0, {}, {}};
    r.score = norm[j];
    r.breakdown.graph_raw = raw[j];
    r.breakdown.graph_norm = norm[j];
    r.breakdown.hop = sub.hop[pool[j]];
    r.breakdown.seed = sub.teleport[pool[j]] > 0.0;
    out.push_back(std::move(r));
  }
  std::sort(out.begin(), out.end(), [&](const RankedResult& a, const RankedResult& b) {
    if (a.score != b.score) return a.score > b.score;
    auto ca = graph.author(a.node).cited_by_count;
    auto cb = graph.author(b.node).cited_by_count;
    if (ca != cb) return ca > cb;
    return graph.id(a.node) < graph.id(b.node);
  });
  if (out.size() > config.k) out.resize(config.k);
  return out;
}

/// Up to `max_paths` simple seed-to-node paths of at most two steps. The
/// best path of each distinct seed is taken first (by score), remaining
/// slots go to the next best paths overall. A seed explains itself with a
/// single zero-length path. `id_of` orders ties lexicographically.
template <typename IdOf>
std::vector<ExplanationPath> explain(std::uint32_t target, const WeightedSubgraph& sub,
                                     const Transitions& transitions, std::size_t max_paths,
                                     IdOf id_of) {
  auto node_at = [&](std::uint32_t i) { return sub.nodes.empty() ? NodeIndex{i} : sub.nodes[i]; };
  if (sub.teleport.at(target) > 0.0) {
    ExplanationPath p;
    p.nodes = {node_at(target)};
    p.seed_weight = sub.teleport[target];
    p.score = p.seed_weight;
    return {p};
  }

  struct Raw {
    std::vector<std::uint32_t> locals;
    double score;
  };
  std::vector<Raw> found;
  // Walk backwards from the target; transitions are symmetric in support.
  for (const auto& e1 : transitions.rows[target]) {
    std::uint32_t m = e1.to;
    if (sub.teleport[m] > 0.0) {
      found.push_back({{m, target}, sub.teleport[m] * transitions.probability(m, target)});
    }
    for (const auto& e2 : transitions.rows[m]) {
      std::uint32_t s = e2.to;
      if (s == target || s == m || !(sub.teleport[s] > 0.0)) continue;
      double score = sub.teleport[s] * transitions.probability(s, m) *
                     transitions.probability(m, target);
      found.push_back({{s, m, target}, score});
    }
  }
  auto key_less = [&](const Raw& a, const Raw& b) {
    if (a.score != b.score) return a.score > b.score;
    if (a.locals.size() != b.locals.size()) return a.locals.size() < b.locals.size();
    for (std::size_t i = 0; i < a.locals.size(); ++i) {
      const auto& ia = id_of(node_at(a.locals[i]));
      const auto& ib = id_of(node_at(b.locals[i]));
      if (ia != ib) return ia < ib;
    }
    return false;
  };
  std::sort(found.begin(), found.end(), key_less);

  std::vector<const Raw*> chosen;
  std::vector<bool> used(found.size(), false);
  std::vector<std::uint32_t> seeds_taken;
  for (std::size_t i = 0; i < found.size() && chosen.size() < max_paths; ++i) {
    std::uint32_t s = found[i].locals.front();
    if (std::find(seeds_taken.begin(), seeds_taken.end(), s) != seeds_taken.end()) continue;
    seeds_taken.push_back(s);
    chosen.push_back(&found[i]);
    used[i] = true;
  }
  for (std::size_t i = 0; i < found.size() && chosen.size() < max_paths; ++i) {
    if (!used[i]) chosen.push_back(&found[i]);
  }
  std::stable_sort(chosen.begin(), chosen.end(),
                   [&](const Raw* a, const Raw* b) { return key_less(*a, *b); });

  std::vector<ExplanationPath> out;
  for (const Raw* r : chosen) {
    ExplanationPath p;
    for (auto l : r->locals) p.nodes.push_back(node_at(l));
    for (std::size_t i = 0; i + 1 < r->locals.size(); ++i) {
      for (const auto& e : transitions.rows[r->locals[i]]) {
        if (e.to != r->locals[i + 1]) continue;
        p.kinds.push_back(sub.edges[e.strongest].kind);
        p.weights.push_back(e.weight);
      }
    }
    p.seed_weight = sub.teleport[r->locals.front()];
    p.score = r->score;
    out.push_back(std::move(p));
  }
  return out;
}

inline std::vector<ExplanationPath> explain(NodeIndex node, const WeightedSubgraph& sub,
                                            const Transitions& transitions,
                                            const PropertyGraph& graph,
                                            std::size_t max_paths = 3) {
  auto local = sub.local_of(node);
  if (!local) throw NotFoundError("node '" + graph.id(node) + "' is not in the subgraph");
  return explain(*local, sub, transitions, max_paths,
                 [&graph](NodeIndex n) -> const std::string& { return graph.id(n); });
}

}  // namespace hetkg
