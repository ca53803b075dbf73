#pragma once

// Typed in-memory property graph: nine node kinds, twelve relation kinds,
// exact-text indexes for paper titles and keyword texts, brute-force cosine
// indexes for the three embedding fields, and capped neighbor iteration.
//
// The graph is mutable until freeze(); afterwards every mutator throws and
// the object may be shared by any number of concurrent readers.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <variant>
#include <vector>

#include "hetkg/edge_weight.hpp"
#include "hetkg/text.hpp"
#include "hetkg/types.hpp"

namespace hetkg {

struct PaperNode {
  std::string id;
  std::string title;
  std::string title_normalized;  // recomputed by the store
  std::string abstract;
  int publication_year = 0;
  std::uint64_t citation_count = 0;
  std::optional<std::string> venue_name;
  std::optional<std::string> pdf_url;
  std::vector<float> title_embedding;     // empty = absent
  std::vector<float> abstract_embedding;  // empty = absent
};

struct KeywordNode {
  std::string id;
  std::string text;
  std::string text_normalized;  // recomputed by the store
  std::uint64_t frequency = 0;  // finalized at freeze
  std::vector<float> text_embedding;
};

struct AuthorNode {
  std::string id;
  std::string display_name;
  std::uint64_t works_count = 0;  // finalized at freeze
  std::uint64_t cited_by_count = 0;
  std::uint64_t h_index = 0;
};

/// Institution, Source, Topic, Subfield, Field or Domain.
struct MiscNode {
  std::string id;
  NodeKind kind = NodeKind::Institution;
  std::string display_name;
  std::map<std::string, std::string> attributes;
};

using NodeRecord = std::variant<PaperNode, AuthorNode, KeywordNode, MiscNode>;

enum class VectorField { PaperTitle, PaperAbstract, KeywordText };

inline constexpr std::string_view to_string(VectorField f) {
  switch (f) {
    case VectorField::PaperTitle: return "title";
    case VectorField::PaperAbstract: return "abstract";
    case VectorField::KeywordText: return "text";
  }
  return "?";
}

struct ScoredNode {
  NodeIndex node;
  double score = 0.0;
};

struct Neighbor {
  NodeIndex node;
  EdgeIndex edge = 0;
};

/// L2-normalizes in place; returns false for a zero (or non-finite) vector.
/// Vectors already at unit length (to float precision) are left untouched,
/// so a stored vector survives a save/load round trip bit for bit.
inline bool l2_normalize(std::span<float> v) {
  double sq = 0.0;
  for (float x : v) sq += static_cast<double>(x) * x;
  if (!(sq > 0.0) || !std::isfinite(sq)) return false;
  if (std::abs(sq - 1.0) <= 1e-6) return true;
  double inv = 1.0 / std::sqrt(sq);
  for (float& x : v) x = static_cast<float>(x * inv);
  return true;
}

class PropertyGraph {
 public:
  explicit PropertyGraph(std::size_t dimension = 1024) : dimension_(dimension) {
    if (dimension_ == 0) throw SchemaError("embedding dimension must be positive");
  }

  std::size_t dimension() const { return dimension_; }
  std::size_t node_count() const { return nodes_.size(); }
  std::size_t edge_count() const { return edges_.size(); }
  bool frozen() const { return frozen_; }

  // ---- mutation ---------------------------------------------------------

  NodeIndex add_node(NodeRecord record) {
    require_mutable();
    std::string id = std::visit([](const auto& n) { return n.id; }, record);
    if (id.empty()) throw SchemaError("node id must be nonempty");
    if (by_id_.contains(id)) throw DuplicateIdError("duplicate node id '" + id + "'");

    NodeKind kind = std::visit([](const auto& n) { return kind_of(n); }, record);
    NodeIndex index{static_cast<std::uint32_t>(nodes_.size())};

    // Validate everything before touching any index.
    std::visit([&](auto& n) { validate(n); }, record);

    if (auto* p = std::get_if<PaperNode>(&record)) {
      p->title_normalized = normalize_text(p->title);
      std::string key = normalize_title(p->title);
      exact_paper_[p->title_normalized].push_back(index);
      title_key_index_[key].push_back(index);
      std::unordered_set<std::string_view> seen;
      for (auto tok : split_tokens(key)) {
        if (seen.insert(tok).second) title_tokens_[std::string(tok)].push_back(index);
      }
      title_keys_.emplace(index, std::move(key));
      store_vector(VectorField::PaperTitle, index, std::move(p->title_embedding));
      store_vector(VectorField::PaperAbstract, index, std::move(p->abstract_embedding));
      p->title_embedding.clear();
      p->abstract_embedding.clear();
    } else if (auto* k = std::get_if<KeywordNode>(&record)) {
      k->text_normalized = normalize_text(k->text);
      exact_keyword_[k->text_normalized].push_back(index);
      store_vector(VectorField::KeywordText, index, std::move(k->text_embedding));
      k->text_embedding.clear();
    }

    nodes_.push_back(std::move(record));
    kinds_.push_back(kind);
    by_kind_[static_cast<std::size_t>(kind)].push_back(index);
    adjacency_.emplace_back();
    by_id_.emplace(std::move(id), index);
    return index;
  }

  EdgeIndex add_edge(Edge edge) {
    require_mutable();
    if (edge.src.value >= nodes_.size() || edge.dst.value >= nodes_.size()) {
      throw NotFoundError("edge endpoint does not exist");
    }
    auto sig = signature(edge.kind);
    if (kinds_[edge.src.value] != sig.src || kinds_[edge.dst.value] != sig.dst) {
      throw SchemaError(std::string(to_string(edge.kind)) + " requires " +
                        std::string(to_string(sig.src)) + "->" + std::string(to_string(sig.dst)) +
                        ", got " + std::string(to_string(kinds_[edge.src.value])) + "->" +
                        std::string(to_string(kinds_[edge.dst.value])));
    }
    if (edge.src == edge.dst) throw SchemaError("self-loop edges are not allowed");
    if (carries_count(edge.kind)) {
      if (!edge.count || *edge.count == 0) {
        throw SchemaError(std::string(to_string(edge.kind)) + " requires a positive count");
      }
    } else if (edge.count) {
      throw SchemaError(std::string(to_string(edge.kind)) + " does not carry a count");
    }
    if (edge.kind == EdgeKind::HAS_KEYWORD) {
      if (!edge.relevance_score) throw SchemaError("HAS_KEYWORD requires relevance_score");
      if (!(*edge.relevance_score >= 0.0 && *edge.relevance_score <= 1.0)) {
        throw SchemaError("relevance_score must lie in [0,1]");
      }
    } else if (edge.relevance_score) {
      throw SchemaError("only HAS_KEYWORD carries relevance_score");
    }
    if (edge.position && edge.kind != EdgeKind::AUTHORED) {
      throw SchemaError("only AUTHORED carries position");
    }
    if (!edge_keys_.insert(key_of(edge)).second) {
      throw SchemaError("duplicate edge (" + id(edge.src) + ", " + id(edge.dst) + ", " +
                        std::string(to_string(edge.kind)) + ")");
    }
    auto index = static_cast<EdgeIndex>(edges_.size());
    edges_.push_back(edge);
    adjacency_[edge.src.value].push_back(index);
    adjacency_[edge.dst.value].push_back(index);
    return index;
  }

  EdgeIndex add_edge(std::string_view src, std::string_view dst, EdgeKind kind,
                     std::optional<std::uint32_t> count = std::nullopt,
                     std::optional<double> relevance = std::nullopt,
                     std::optional<std::int32_t> position = std::nullopt) {
    return add_edge(Edge{at(src), at(dst), kind, count, relevance, position});
  }

  /// Drops every edge for which `keep` returns false and rebuilds adjacency.
  template <typename Pred>
  std::size_t retain_edges(Pred keep) {
    require_mutable();
    std::vector<Edge> kept;
    kept.reserve(edges_.size());
    for (const Edge& e : edges_) {
      if (keep(e)) kept.push_back(e);
    }
    std::size_t removed = edges_.size() - kept.size();
    edges_ = std::move(kept);
    edge_keys_.clear();
    for (auto& adj : adjacency_) adj.clear();
    for (EdgeIndex i = 0; i < edges_.size(); ++i) {
      edge_keys_.insert(key_of(edges_[i]));
      adjacency_[edges_[i].src.value].push_back(i);
      adjacency_[edges_[i].dst.value].push_back(i);
    }
    return removed;
  }

  /// Attaches (or replaces) one embedding after insertion.
  void set_embedding(VectorField field, NodeIndex node, std::vector<float> values) {
    require_mutable();
    NodeKind expected = field == VectorField::KeywordText ? NodeKind::Keyword : NodeKind::Paper;
    if (kind(node) != expected) throw SchemaError("embedding field does not match node kind");
    check_vector(values);
    store_vector(field, node, std::move(values));
  }

  /// Finalizes derived counters, sorts adjacency for capped iteration and
  /// rejects all further mutation.
  void freeze() {
    if (frozen_) return;
    for (NodeIndex k : by_kind_[static_cast<std::size_t>(NodeKind::Keyword)]) {
      std::get<KeywordNode>(nodes_[k.value]).frequency = degree_of(k, EdgeKind::HAS_KEYWORD);
    }
    for (NodeIndex a : by_kind_[static_cast<std::size_t>(NodeKind::Author)]) {
      std::get<AuthorNode>(nodes_[a.value]).works_count = degree_of(a, EdgeKind::AUTHORED);
    }
    for (std::uint32_t u = 0; u < adjacency_.size(); ++u) {
      sort_adjacency(NodeIndex{u}, adjacency_[u]);
    }
    frozen_ = true;
  }

  // ---- lookup -----------------------------------------------------------

  std::optional<NodeIndex> find(std::string_view id) const {
    auto it = by_id_.find(std::string(id));
    if (it == by_id_.end()) return std::nullopt;
    return it->second;
  }

  NodeIndex at(std::string_view id) const {
    if (auto n = find(id)) return *n;
    throw NotFoundError("unknown node id '" + std::string(id) + "'");
  }

  NodeKind kind(NodeIndex n) const { return kinds_.at(n.value); }
  const NodeRecord& node(NodeIndex n) const { return nodes_.at(n.value); }
  const std::string& id(NodeIndex n) const {
    return std::visit([](const auto& r) -> const std::string& { return r.id; }, node(n));
  }

  const PaperNode& paper(NodeIndex n) const { return get<PaperNode>(n); }
  const KeywordNode& keyword(NodeIndex n) const { return get<KeywordNode>(n); }
  const AuthorNode& author(NodeIndex n) const { return get<AuthorNode>(n); }
  const MiscNode& misc(NodeIndex n) const { return get<MiscNode>(n); }

  /// Human-readable label: title, keyword text or display name.
  const std::string& label(NodeIndex n) const {
    const NodeRecord& r = node(n);
    if (auto* p = std::get_if<PaperNode>(&r)) return p->title;
    if (auto* k = std::get_if<KeywordNode>(&r)) return k->text;
    if (auto* a = std::get_if<AuthorNode>(&r)) return a->display_name;
    return std::get<MiscNode>(r).display_name;
  }

  const std::vector<NodeIndex>& nodes_of_kind(NodeKind k) const {
    return by_kind_[static_cast<std::size_t>(k)];
  }

  std::span<const Edge> edges() const { return edges_; }
  const Edge& edge(EdgeIndex e) const { return edges_.at(e); }

  NodeIndex other_end(EdgeIndex e, NodeIndex from) const {
    const Edge& edge = edges_.at(e);
    return edge.src == from ? edge.dst : edge.src;
  }

  /// Every incident edge regardless of stored direction.
  std::span<const EdgeIndex> incident_edges(NodeIndex n) const {
    if (n.value >= adjacency_.size()) throw NotFoundError("unknown node index");
    return adjacency_[n.value];
  }

  /// Incident edges grouped by neighbor kind, keeping at most
  /// `per_kind_cap` per kind. Within a kind the strongest edges (default
  /// weights) survive; ties go to the smaller neighbor id.
  std::vector<Neighbor> neighbors(NodeIndex n, std::size_t per_kind_cap) const {
    if (n.value >= adjacency_.size()) throw NotFoundError("unknown node index");
    if (per_kind_cap == 0) throw SchemaError("per_kind_cap must be positive");
    std::vector<EdgeIndex> scratch;
    std::span<const EdgeIndex> ordered = adjacency_[n.value];
    if (!frozen_) {
      scratch.assign(ordered.begin(), ordered.end());
      sort_adjacency(n, scratch);
      ordered = scratch;
    }
    std::vector<Neighbor> out;
    std::array<std::size_t, kNodeKindCount> taken{};
    for (EdgeIndex e : ordered) {
      NodeIndex v = other_end(e, n);
      auto& count = taken[static_cast<std::size_t>(kinds_[v.value])];
      if (count >= per_kind_cap) continue;
      ++count;
      out.push_back({v, e});
    }
    return out;
  }

  /// Exact match on the normalized title (Paper) or normalized text
  /// (Keyword). Results are ordered by node id.
  std::vector<NodeIndex> lookup_exact(NodeKind k, std::string_view normalized) const {
    const std::unordered_map<std::string, std::vector<NodeIndex>>* index = nullptr;
    if (k == NodeKind::Paper) {
      index = &exact_paper_;
    } else if (k == NodeKind::Keyword) {
      index = &exact_keyword_;
    } else {
      throw SchemaError("exact lookup supports only Paper and Keyword");
    }
    auto it = index->find(std::string(normalized));
    if (it == index->end()) return {};
    return sorted_by_id(it->second);
  }

  /// Papers whose letters-only title key equals `key`.
  std::vector<NodeIndex> lookup_title_key(std::string_view key) const {
    auto it = title_key_index_.find(std::string(key));
    if (it == title_key_index_.end()) return {};
    return sorted_by_id(it->second);
  }

  const std::string& title_key(NodeIndex paper_node) const {
    auto it = title_keys_.find(paper_node);
    if (it == title_keys_.end()) throw SchemaError("node is not a paper");
    return it->second;
  }

  /// Papers whose title key contains `token` (each paper listed once).
  std::span<const NodeIndex> title_token_postings(std::string_view token) const {
    auto it = title_tokens_.find(std::string(token));
    if (it == title_tokens_.end()) return {};
    return it->second;
  }

  std::optional<std::span<const float>> embedding(VectorField field, NodeIndex n) const {
    const auto& vi = vectors_[static_cast<std::size_t>(field)];
    auto it = vi.row_of.find(n);
    if (it == vi.row_of.end()) return std::nullopt;
    return std::span<const float>(vi.data.data() + std::size_t{it->second} * dimension_,
                                  dimension_);
  }

  /// Exact top-k by cosine over every node carrying `field`; the query is
  /// assumed unit-norm. Ties are broken by node id ascending.
  std::vector<ScoredNode> vector_search(VectorField field, std::span<const float> query,
                                        std::size_t k) const {
    if (query.size() != dimension_) {
      throw DimensionMismatch("query has dimension " + std::to_string(query.size()) +
                              ", index has " + std::to_string(dimension_));
    }
    const auto& vi = vectors_[static_cast<std::size_t>(field)];
    std::vector<ScoredNode> scored;
    scored.reserve(vi.owners.size());
    for (std::size_t row = 0; row < vi.owners.size(); ++row) {
      const float* v = vi.data.data() + row * dimension_;
      double dot = 0.0;
      for (std::size_t i = 0; i < dimension_; ++i) dot += static_cast<double>(v[i]) * query[i];
      scored.push_back({vi.owners[row], dot});
    }
    k = std::min(k, scored.size());
    auto better = [this](const ScoredNode& a, const ScoredNode& b) {
      if (a.score != b.score) return a.score > b.score;
      return id(a.node) < id(b.node);
    };
    std::partial_sort(scored.begin(), scored.begin() + static_cast<std::ptrdiff_t>(k),
                      scored.end(), better);
    scored.resize(k);
    return scored;
  }

 private:
  struct VectorIndex {
    std::vector<NodeIndex> owners;
    std::vector<float> data;
    std::unordered_map<NodeIndex, std::uint32_t> row_of;
  };

  struct EdgeKey {
    std::uint32_t src;
    std::uint32_t dst;
    EdgeKind kind;
    bool operator==(const EdgeKey&) const = default;
  };
  struct EdgeKeyHash {
    std::size_t operator()(const EdgeKey& k) const noexcept {
      std::uint64_t h = (std::uint64_t{k.src} << 32) | k.dst;
      h ^= std::uint64_t{static_cast<std::uint8_t>(k.kind)} * 0x9E3779B97F4A7C15ULL;
      return std::hash<std::uint64_t>{}(h);
    }
  };

  static NodeKind kind_of(const PaperNode&) { return NodeKind::Paper; }
  static NodeKind kind_of(const AuthorNode&) { return NodeKind::Author; }
  static NodeKind kind_of(const KeywordNode&) { return NodeKind::Keyword; }
  static NodeKind kind_of(const MiscNode& m) { return m.kind; }

  static EdgeKey key_of(const Edge& e) { return {e.src.value, e.dst.value, e.kind}; }

  void require_mutable() const {
    if (frozen_) throw FrozenGraphError("graph is frozen; mutation rejected");
  }

  void check_vector(std::vector<float>& v) const {
    if (v.empty()) return;
    if (v.size() != dimension_) {
      throw SchemaError("embedding has dimension " + std::to_string(v.size()) + ", expected " +
                        std::to_string(dimension_));
    }
    if (!l2_normalize(v)) throw SchemaError("embedding is zero or non-finite");
  }

  void validate(PaperNode& p) const {
    if (normalize_text(p.title).empty()) throw SchemaError("paper '" + p.id + "' has no title");
    check_vector(p.title_embedding);
    check_vector(p.abstract_embedding);
  }
  void validate(KeywordNode& k) const {
    if (normalize_text(k.text).empty()) throw SchemaError("keyword '" + k.id + "' has no text");
    check_vector(k.text_embedding);
  }
  void validate(AuthorNode& a) const {
    if (a.display_name.empty()) throw SchemaError("author '" + a.id + "' has no display_name");
  }
  void validate(MiscNode& m) const {
    if (m.kind == NodeKind::Paper || m.kind == NodeKind::Author || m.kind == NodeKind::Keyword) {
      throw SchemaError("MiscNode cannot carry kind " + std::string(to_string(m.kind)));
    }
    if (m.display_name.empty()) {
      throw SchemaError(std::string(to_string(m.kind)) + " '" + m.id + "' has no display_name");
    }
  }

  void store_vector(VectorField field, NodeIndex n, std::vector<float> values) {
    if (values.empty()) return;
    auto& vi = vectors_[static_cast<std::size_t>(field)];
    auto it = vi.row_of.find(n);
    if (it != vi.row_of.end()) {
      std::copy(values.begin(), values.end(),
                vi.data.begin() + static_cast<std::ptrdiff_t>(std::size_t{it->second} * dimension_));
      return;
    }
    vi.row_of.emplace(n, static_cast<std::uint32_t>(vi.owners.size()));
    vi.owners.push_back(n);
    vi.data.insert(vi.data.end(), values.begin(), values.end());
  }

  template <typename T>
  const T& get(NodeIndex n) const {
    const T* p = std::get_if<T>(&node(n));
    if (p == nullptr) throw SchemaError("node '" + id(n) + "' has unexpected kind");
    return *p;
  }

  std::uint64_t degree_of(NodeIndex n, EdgeKind k) const {
    std::uint64_t d = 0;
    for (EdgeIndex e : adjacency_[n.value]) d += edges_[e].kind == k ? 1 : 0;
    return d;
  }

  void sort_adjacency(NodeIndex from, std::vector<EdgeIndex>& adj) const {
    std::sort(adj.begin(), adj.end(), [&](EdgeIndex a, EdgeIndex b) {
      NodeIndex va = other_end(a, from);
      NodeIndex vb = other_end(b, from);
      if (kinds_[va.value] != kinds_[vb.value]) return kinds_[va.value] < kinds_[vb.value];
      double wa = default_edge_weight(edges_[a]);
      double wb = default_edge_weight(edges_[b]);
      if (wa != wb) return wa > wb;
      if (va != vb) return id(va) < id(vb);
      return a < b;
    });
  }

  std::vector<NodeIndex> sorted_by_id(std::vector<NodeIndex> v) const {
    std::sort(v.begin(), v.end(), [this](NodeIndex a, NodeIndex b) { return id(a) < id(b); });
    return v;
  }

  std::size_t dimension_;
  bool frozen_ = false;
  std::vector<NodeRecord> nodes_;
  std::vector<NodeKind> kinds_;
  std::array<std::vector<NodeIndex>, kNodeKindCount> by_kind_;
  std::unordered_map<std::string, NodeIndex> by_id_;
  std::vector<Edge> edges_;
  std::vector<std::vector<EdgeIndex>> adjacency_;
  std::unordered_set<EdgeKey, EdgeKeyHash> edge_keys_;
  std::unordered_map<std::string, std::vector<NodeIndex>> exact_paper_;
  std::unordered_map<std::string, std::vector<NodeIndex>> exact_keyword_;
  std::unordered_map<std::string, std::vector<NodeIndex>> title_key_index_;
  std::unordered_map<NodeIndex, std::string> title_keys_;
  std::unordered_map<std::string, std::vector<NodeIndex>> title_tokens_;
  std::array<VectorIndex, 3> vectors_;
};

/// Immutable, shareable view of a frozen graph.
using GraphHandle = std::shared_ptr<const PropertyGraph>;

inline GraphHandle freeze(PropertyGraph graph) {
  graph.freeze();
  return std::make_shared<const PropertyGraph>(std::move(graph));
}

}  // namespace hetkg
