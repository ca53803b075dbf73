#pragma once

// Machine (jsonl) and human (table) renderings of a search response.
// jsonl: one "meta" record, then either one "empty" record or one "result"
// record per hit. Field order is fixed so identical responses serialize to
// identical bytes.

#include <cstdio>
#include <string>

#include <json.hpp>

#include "hetkg/pipeline.hpp"

namespace hetkg {

inline constexpr int kOutputSchemaVersion = 1;

inline nlohmann::ordered_json to_json(const ExplanationPath& p, const PropertyGraph& g) {
  nlohmann::ordered_json j;
  j["nodes"] = nlohmann::json::array();
  for (NodeIndex n : p.nodes) j["nodes"].push_back(g.id(n));
  j["edges"] = nlohmann::json::array();
  for (std::size_t i = 0; i < p.kinds.size(); ++i) {
    j["edges"].push_back({{"kind", to_string(p.kinds[i])}, {"weight", p.weights[i]}});
  }
  j["seed_weight"] = p.seed_weight;
  j["score"] = p.score;
  return j;
}

inline nlohmann::ordered_json to_json(const RankedResult& r, std::size_t rank,
                                      const PropertyGraph& g) {
  nlohmann::ordered_json j;
  j["type"] = "result";
  j["rank"] = rank;
  j["id"] = g.id(r.node);
  j["kind"] = to_string(r.kind);
  j["label"] = g.label(r.node);
  j["score"] = r.score;
  const auto& b = r.breakdown;
  nlohmann::ordered_json bd;
  if (r.kind == NodeKind::Paper) {
    j["citation_count"] = g.paper(r.node).citation_count;
    j["publication_year"] = g.paper(r.node).publication_year;
    bd["pre_raw"] = b.pre_raw;
    bd["pre_norm"] = b.pre_norm;
    bd["graph_raw"] = b.graph_raw;
    bd["graph_norm"] = b.graph_norm;
    bd["support"] = b.support;
    bd["importance"] = b.importance;
    bd["bonus"] = b.bonus;
    bd["title_hit"] = to_string(b.title_hit);
  } else {
    j["cited_by_count"] = g.author(r.node).cited_by_count;
    bd["graph_raw"] = b.graph_raw;
    bd["graph_norm"] = b.graph_norm;
  }
  bd["hop"] = b.hop;
  bd["seed"] = b.seed;
  j["breakdown"] = std::move(bd);
  j["paths"] = nlohmann::json::array();
  for (const auto& p : r.paths) j["paths"].push_back(to_json(p, g));
  return j;
}

inline std::string render_jsonl(const SearchResponse& res, const PropertyGraph& g) {
  nlohmann::ordered_json meta;
  meta["type"] = "meta";
  meta["schema_version"] = kOutputSchemaVersion;
  meta["mode"] = res.mode == SearchMode::Papers ? "papers" : "authors";
  meta["keywords"] = nlohmann::json::array();
  for (const auto& k : res.keywords) {
    meta["keywords"].push_back({{"text", k.text}, {"importance", k.importance}});
  }
  meta["titles"] = nlohmann::json::array();
  for (const auto& t : res.titles) {
    meta["titles"].push_back({{"text", t.text}, {"confidence", t.confidence}});
  }
  meta["keyword_seeds"] = nlohmann::json::array();
  for (const auto& s : res.keyword_seeds) {
    meta["keyword_seeds"].push_back({{"id", g.id(s.node)}, {"weight", s.weight}});
  }
  meta["paper_seeds"] = nlohmann::json::array();
  for (const auto& s : res.paper_seeds) {
    nlohmann::ordered_json ps;
    ps["id"] = g.id(s.node);
    ps["s_pre"] = s.s_pre;
    ps["title_hit"] = to_string(s.title_hit);
    ps["emb_raw"] = s.emb_raw;
    ps["emb_norm"] = s.emb_norm;
    ps["title_raw"] = s.title_raw;
    ps["title_norm"] = s.title_norm;
    ps["bonus"] = s.bonus;
    meta["paper_seeds"].push_back(std::move(ps));
  }
  meta["subgraph"] = {{"nodes", res.subgraph_nodes}, {"edges", res.subgraph_edges}};
  meta["walk"] = {{"iterations", res.iterations}, {"final_delta", res.final_delta}};
  meta["fallbacks"] = res.diagnostics.fallbacks;
  meta["result_count"] = res.results.size();

  std::string out = meta.dump() + "\n";
  if (res.empty_recall) {
    nlohmann::ordered_json empty;
    empty["type"] = "empty";
    empty["reason"] = "no keyword, semantic or title match";
    out += empty.dump() + "\n";
    return out;
  }
  for (std::size_t i = 0; i < res.results.size(); ++i) {
    out += to_json(res.results[i], i + 1, g).dump() + "\n";
  }
  return out;
}

inline std::string render_table(const SearchResponse& res, const PropertyGraph& g) {
  std::string out;
  char buf[512];
  if (res.empty_recall) return "no results: nothing in the graph matched the query\n";
  bool papers = res.mode == SearchMode::Papers;
  std::snprintf(buf, sizeof buf, "%-4s %-7s %-12s %-6s %-6s %-6s %-6s  %s\n", "rank", "score",
                "id", papers ? "pre" : "-", "graph", papers ? "imp" : "-", "hop", "label");
  out += buf;
  for (std::size_t i = 0; i < res.results.size(); ++i) {
    const auto& r = res.results[i];
    const auto& b = r.breakdown;
    std::string label = utf8_prefix(g.label(r.node), 70);
    std::snprintf(buf, sizeof buf, "%-4zu %-7.4f %-12s %-6.3f %-6.3f %-6.3f %-6d  %s%s\n", i + 1,
                  r.score, g.id(r.node).c_str(), b.pre_norm, b.graph_norm, b.importance, b.hop,
                  b.seed ? "* " : "  ", label.c_str());
    out += buf;
    for (const auto& p : r.paths) {
      if (p.nodes.size() < 2) continue;
      std::string chain = "       via " + g.id(p.nodes.front());
      for (std::size_t k = 0; k < p.kinds.size(); ++k) {
        chain += " -" + std::string(to_string(p.kinds[k])) + "- " + g.id(p.nodes[k + 1]);
      }
      out += chain + "\n";
    }
  }
  std::snprintf(buf, sizeof buf, "\n%zu keyword seeds, %zu paper seeds, subgraph %zu nodes / %zu "
                "edges, walk converged in %d iterations\n",
                res.keyword_seeds.size(), res.paper_seeds.size(), res.subgraph_nodes,
                res.subgraph_edges, res.iterations);
  out += buf;
  for (const auto& f : res.diagnostics.fallbacks) out += "note: fallback " + f + "\n";
  return out;
}

}  // namespace hetkg
