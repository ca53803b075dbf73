#pragma once

// Seed-centred subgraph expansion, teleport weights, and random walk with
// restart over the undirected weighted subgraph.

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "hetkg/config.hpp"
#include "hetkg/edge_weight.hpp"
#include "hetkg/graph_store.hpp"
#include "hetkg/query_analysis.hpp"
#include "hetkg/seed_matching.hpp"

namespace hetkg {

struct SubgraphEdge {
  std::uint32_t u = 0;  // local indices
  std::uint32_t v = 0;
  double weight = 0.0;
  EdgeIndex edge = 0;   // index in the source graph
  EdgeKind kind = EdgeKind::CITES;
};

/// Local view of the expanded neighbourhood. Local index i refers to
/// nodes[i]; graph-free instances (nodes empty) are valid for the solver.
struct WeightedSubgraph {
  std::size_t size = 0;
  std::vector<NodeIndex> nodes;
  std::vector<int> hop;
  std::vector<SubgraphEdge> edges;
  std::vector<double> teleport;
  std::unordered_map<NodeIndex, std::uint32_t> local;

  std::optional<std::uint32_t> local_of(NodeIndex n) const {
    auto it = local.find(n);
    if (it == local.end()) return std::nullopt;
    return it->second;
  }
};

/// Row-stochastic transitions with parallel edges merged per node pair.
struct Transitions {
  struct Entry {
    std::uint32_t to;
    double weight;       // summed over parallel edges
    double probability;  // weight / total out-weight
    std::size_t strongest;  // index into WeightedSubgraph::edges
  };
  std::vector<std::vector<Entry>> rows;
  std::vector<double> out_weight;

  explicit Transitions(const WeightedSubgraph& sub) : rows(sub.size), out_weight(sub.size, 0.0) {
    std::vector<std::map<std::uint32_t, Entry>> acc(sub.size);
    auto add = [&](std::uint32_t from, std::uint32_t to, std::size_t e) {
      double w = sub.edges[e].weight;
      auto [it, inserted] = acc[from].try_emplace(to, Entry{to, 0.0, 0.0, e});
      it->second.weight += w;
      if (w > sub.edges[it->second.strongest].weight) it->second.strongest = e;
    };
    for (std::size_t e = 0; e < sub.edges.size(); ++e) {
      const auto& edge = sub.edges[e];
      if (!(edge.weight > 0.0)) continue;
      add(edge.u, edge.v, e);
      add(edge.v, edge.u, e);
    }
    for (std::size_t u = 0; u < sub.size; ++u) {
      for (auto& [to, entry] : acc[u]) out_weight[u] += entry.weight;
      rows[u].reserve(acc[u].size());
      for (auto& [to, entry] : acc[u]) {
        entry.probability = entry.weight / out_weight[u];
        rows[u].push_back(entry);
      }
    }
  }

  double probability(std::uint32_t from, std::uint32_t to) const {
    for (const auto& e : rows[from]) {
      if (e.to == to) return e.probability;
    }
    return 0.0;
  }
};

// ---------------------------------------------------------------------------
// Expansion
// ---------------------------------------------------------------------------

/// Breadth-first undirected expansion to `hops` hops over edges with
/// positive configured weight. Each hop admits at most `hop_cap` new nodes
/// per kind, preferring stronger connecting edges, then smaller ids. Edge
/// weights use the keyword seed weights as the HAS_KEYWORD prior.
inline WeightedSubgraph expand_subgraph(std::span<const KeywordSeed> keyword_seeds,
                                        std::span<const PaperSeed> paper_seeds,
                                        const PropertyGraph& graph,
                                        const PropagationConfig& config) {
  if (keyword_seeds.empty() && paper_seeds.empty()) {
    throw EmptyRecallError("no seeds: all recall paths came back empty");
  }
  auto less = [&graph](NodeIndex a, NodeIndex b) { return graph.id(a) < graph.id(b); };
  const EdgeWeightConfig& w = config.weights;
  auto structural = [&](const Edge& e) { return edge_weight(e, w.epsilon_kw, w); };

  WeightedSubgraph sub;
  auto admit = [&](NodeIndex n, int h) {
    sub.local.emplace(n, static_cast<std::uint32_t>(sub.nodes.size()));
    sub.nodes.push_back(n);
    sub.hop.push_back(h);
  };

  std::vector<NodeIndex> frontier;
  for (const auto& s : keyword_seeds) frontier.push_back(s.node);
  for (const auto& s : paper_seeds) frontier.push_back(s.node);
  std::sort(frontier.begin(), frontier.end(), less);
  frontier.erase(std::unique(frontier.begin(), frontier.end()), frontier.end());
  for (NodeIndex n : frontier) admit(n, 0);

  for (std::size_t h = 1; h <= config.hops && !frontier.empty(); ++h) {
    std::unordered_map<NodeIndex, double> best;
    for (NodeIndex u : frontier) {
      for (EdgeIndex e : graph.incident_edges(u)) {
        double ew = structural(graph.edge(e));
        if (!(ew > 0.0)) continue;
        NodeIndex v = graph.other_end(e, u);
        if (sub.local.contains(v)) continue;
        auto [it, inserted] = best.try_emplace(v, ew);
        if (!inserted) it->second = std::max(it->second, ew);
      }
    }
    std::array<std::vector<std::pair<NodeIndex, double>>, kNodeKindCount> by_kind;
    for (auto [v, ew] : best) by_kind[static_cast<std::size_t>(graph.kind(v))].push_back({v, ew});
    std::vector<NodeIndex> next;
    for (auto& group : by_kind) {
      std::size_t cap = std::min(config.hop_cap, group.size());
      auto better = [&](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return less(a.first, b.first);
      };
      std::partial_sort(group.begin(), group.begin() + static_cast<std::ptrdiff_t>(cap),
                        group.end(), better);
      for (std::size_t i = 0; i < cap; ++i) next.push_back(group[i].first);
    }
    std::sort(next.begin(), next.end(), less);
    for (NodeIndex n : next) admit(n, static_cast<int>(h));
    frontier = std::move(next);
  }
  sub.size = sub.nodes.size();

  std::unordered_map<NodeIndex, double> kappa;
  for (const auto& s : keyword_seeds) kappa[s.node] = std::max(kappa[s.node], s.weight);

  std::vector<EdgeIndex> inside;
  for (NodeIndex u : sub.nodes) {
    for (EdgeIndex e : graph.incident_edges(u)) {
      const Edge& edge = graph.edge(e);
      if (edge.src == u && sub.local.contains(edge.dst)) inside.push_back(e);
    }
  }
  std::sort(inside.begin(), inside.end());
  for (EdgeIndex e : inside) {
    const Edge& edge = graph.edge(e);
    double k = w.epsilon_kw;
    if (edge.kind == EdgeKind::HAS_KEYWORD) {
      if (auto it = kappa.find(edge.dst); it != kappa.end()) k = it->second;
    }
    double ew = edge_weight(edge, k, w);
    if (!(ew > 0.0)) continue;
    sub.edges.push_back({sub.local.at(edge.src), sub.local.at(edge.dst), ew, e, edge.kind});
  }
  sub.teleport.assign(sub.size, 0.0);
  return sub;
}

// ---------------------------------------------------------------------------
// Teleport
// ---------------------------------------------------------------------------

/// Log-scaled citation share, capped at 1; always 1 in relevance mode.
inline double paper_importance(double citations, double pool_total, ImportanceMode mode) {
  if (mode == ImportanceMode::Relevance) return 1.0;
  double num = std::log1p(std::max(0.0, citations));
  double den = std::log1p(std::max(1.0, pool_total));
  return std::min(1.0, num / den);
}

inline double subgraph_citation_total(const WeightedSubgraph& sub, const PropertyGraph& graph) {
  double total = 0.0;
  for (NodeIndex n : sub.nodes) {
    if (graph.kind(n) == NodeKind::Paper) {
      total += static_cast<double>(graph.paper(n).citation_count);
    }
  }
  return total;
}

/// Fills sub.teleport: paper seeds weigh s_pre * (1 + gamma * imp), keyword
/// seeds their match weight; the result is normalized to sum 1. When every
/// weight is zero, seeds share the mass uniformly.
inline void seed_teleport(WeightedSubgraph& sub, std::span<const KeywordSeed> keyword_seeds,
                          std::span<const PaperSeed> paper_seeds, const PropertyGraph& graph,
                          const PropagationConfig& config, Diagnostics& diag) {
  sub.teleport.assign(sub.size, 0.0);
  double total_citations = subgraph_citation_total(sub, graph);
  std::vector<std::uint32_t> seeds;
  for (const auto& s : keyword_seeds) {
    auto i = sub.local.at(s.node);
    sub.teleport[i] = std::max(sub.teleport[i], s.weight);
    seeds.push_back(i);
  }
  for (const auto& s : paper_seeds) {
    auto i = sub.local.at(s.node);
    double imp = paper_importance(static_cast<double>(graph.paper(s.node).citation_count),
                                  total_citations, config.importance_mode);
    sub.teleport[i] = std::max(sub.teleport[i], s.s_pre * (1.0 + config.gamma * imp));
    seeds.push_back(i);
  }
  double z = 0.0;
  for (double x : sub.teleport) z += x;
  if (z > 0.0) {
    for (double& x : sub.teleport) x /= z;
    return;
  }
  std::sort(seeds.begin(), seeds.end());
  seeds.erase(std::unique(seeds.begin(), seeds.end()), seeds.end());
  diag.fallback("teleport", "all seed weights are zero; using uniform seed distribution");
  for (auto i : seeds) sub.teleport[i] = 1.0 / static_cast<double>(seeds.size());
}

// ---------------------------------------------------------------------------
// Solver
// ---------------------------------------------------------------------------

struct RwrResult {
  std::vector<double> scores;
  int iterations = 0;
  double final_delta = 0.0;
};

using RwrObserver = std::function<void(int iteration, std::span<const double> r)>;

/// Synchronous power iteration r <- alpha*s + (1-alpha)*P^T r from r = s.
/// Nodes without neighbours keep their own walk mass. Stops when the L1
/// change drops below epsilon or after max_iterations.
inline RwrResult rwr_solve(const WeightedSubgraph& sub, const PropagationConfig& config,
                           const RwrObserver& observer = {}) {
  if (!(config.alpha > 0.0 && config.alpha < 1.0)) throw ConfigError("alpha must lie in (0,1)");
  if (sub.teleport.size() != sub.size) throw Error("teleport vector does not match subgraph");
  Transitions t(sub);
  const double alpha = config.alpha;
  RwrResult result;
  result.scores = sub.teleport;
  std::vector<double> next(sub.size);
  for (int it = 1; it <= static_cast<int>(config.max_iterations); ++it) {
    for (std::size_t v = 0; v < sub.size; ++v) next[v] = alpha * sub.teleport[v];
    for (std::size_t u = 0; u < sub.size; ++u) {
      double walk = (1.0 - alpha) * result.scores[u];
      if (t.rows[u].empty()) {
        next[u] += walk;
        continue;
      }
      for (const auto& e : t.rows[u]) next[e.to] += walk * e.probability;
    }
    double delta = 0.0;
    for (std::size_t v = 0; v < sub.size; ++v) delta += std::abs(next[v] - result.scores[v]);
    result.scores.swap(next);
    result.iterations = it;
    result.final_delta = delta;
    if (observer) observer(it, result.scores);
    if (delta < config.epsilon) break;
  }
  return result;
}

}  // namespace hetkg
