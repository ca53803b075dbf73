#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace hetkg {

// ---------------------------------------------------------------------------
// Errors
// ---------------------------------------------------------------------------

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DuplicateIdError : Error {
  using Error::Error;
};

struct SchemaError : Error {
  using Error::Error;
};

struct NotFoundError : Error {
  using Error::Error;
};

struct FrozenGraphError : Error {
  using Error::Error;
};

struct DimensionMismatch : Error {
  using Error::Error;
};

struct ConfigError : Error {
  using Error::Error;
};

/// Raised by embedding/rerank/extraction providers. `provider` names the
/// failing backend so callers can surface it.
struct ProviderError : Error {
  ProviderError(std::string provider_name, const std::string& what)
      : Error(provider_name + ": " + what), provider(std::move(provider_name)) {}
  std::string provider;
};

struct EmptyRecallError : Error {
  using Error::Error;
};

// ---------------------------------------------------------------------------
// Node / edge kinds
// ---------------------------------------------------------------------------

enum class NodeKind : std::uint8_t {
  Paper,
  Author,
  Keyword,
  Institution,
  Source,
  Topic,
  Subfield,
  Field,
  Domain,
};

inline constexpr std::size_t kNodeKindCount = 9;

inline constexpr std::array<NodeKind, kNodeKindCount> kAllNodeKinds = {
    NodeKind::Paper,  NodeKind::Author,   NodeKind::Keyword,
    NodeKind::Institution, NodeKind::Source, NodeKind::Topic,
    NodeKind::Subfield, NodeKind::Field,  NodeKind::Domain,
};

inline constexpr std::string_view to_string(NodeKind kind) {
  switch (kind) {
    case NodeKind::Paper: return "Paper";
    case NodeKind::Author: return "Author";
    case NodeKind::Keyword: return "Keyword";
    case NodeKind::Institution: return "Institution";
    case NodeKind::Source: return "Source";
    case NodeKind::Topic: return "Topic";
    case NodeKind::Subfield: return "Subfield";
    case NodeKind::Field: return "Field";
    case NodeKind::Domain: return "Domain";
  }
  return "?";
}

inline std::optional<NodeKind> node_kind_from_string(std::string_view s) {
  for (NodeKind k : kAllNodeKinds) {
    if (to_string(k) == s) return k;
  }
  return std::nullopt;
}

enum class EdgeKind : std::uint8_t {
  CITES,
  RELATED_TO,
  AUTHORED,
  COAUTHOR,
  COOCCUR,
  HAS_KEYWORD,
  HAS_TOPIC,
  AFFILIATED_WITH,
  PUBLISH_IN,
  DOMAIN_OF,
  FIELD_OF,
  SUBFIELD_OF,
};

inline constexpr std::size_t kEdgeKindCount = 12;

inline constexpr std::array<EdgeKind, kEdgeKindCount> kAllEdgeKinds = {
    EdgeKind::CITES,       EdgeKind::RELATED_TO,      EdgeKind::AUTHORED,
    EdgeKind::COAUTHOR,    EdgeKind::COOCCUR,         EdgeKind::HAS_KEYWORD,
    EdgeKind::HAS_TOPIC,   EdgeKind::AFFILIATED_WITH, EdgeKind::PUBLISH_IN,
    EdgeKind::DOMAIN_OF,   EdgeKind::FIELD_OF,        EdgeKind::SUBFIELD_OF,
};

inline constexpr std::string_view to_string(EdgeKind kind) {
  switch (kind) {
    case EdgeKind::CITES: return "CITES";
    case EdgeKind::RELATED_TO: return "RELATED_TO";
    case EdgeKind::AUTHORED: return "AUTHORED";
    case EdgeKind::COAUTHOR: return "COAUTHOR";
    case EdgeKind::COOCCUR: return "COOCCUR";
    case EdgeKind::HAS_KEYWORD: return "HAS_KEYWORD";
    case EdgeKind::HAS_TOPIC: return "HAS_TOPIC";
    case EdgeKind::AFFILIATED_WITH: return "AFFILIATED_WITH";
    case EdgeKind::PUBLISH_IN: return "PUBLISH_IN";
    case EdgeKind::DOMAIN_OF: return "DOMAIN_OF";
    case EdgeKind::FIELD_OF: return "FIELD_OF";
    case EdgeKind::SUBFIELD_OF: return "SUBFIELD_OF";
  }
  return "?";
}

inline std::optional<EdgeKind> edge_kind_from_string(std::string_view s) {
  for (EdgeKind k : kAllEdgeKinds) {
    if (to_string(k) == s) return k;
  }
  return std::nullopt;
}

struct EdgeSignature {
  NodeKind src;
  NodeKind dst;
};

/// Endpoint kinds allowed for each relation. Edges are stored in this
/// direction; traversal treats them as undirected.
inline constexpr EdgeSignature signature(EdgeKind kind) {
  switch (kind) {
    case EdgeKind::CITES: return {NodeKind::Paper, NodeKind::Paper};
    case EdgeKind::RELATED_TO: return {NodeKind::Paper, NodeKind::Paper};
    case EdgeKind::AUTHORED: return {NodeKind::Author, NodeKind::Paper};
    case EdgeKind::COAUTHOR: return {NodeKind::Author, NodeKind::Author};
    case EdgeKind::COOCCUR: return {NodeKind::Keyword, NodeKind::Keyword};
    case EdgeKind::HAS_KEYWORD: return {NodeKind::Paper, NodeKind::Keyword};
    case EdgeKind::HAS_TOPIC: return {NodeKind::Paper, NodeKind::Topic};
    case EdgeKind::AFFILIATED_WITH: return {NodeKind::Author, NodeKind::Institution};
    case EdgeKind::PUBLISH_IN: return {NodeKind::Paper, NodeKind::Source};
    case EdgeKind::DOMAIN_OF: return {NodeKind::Field, NodeKind::Domain};
    case EdgeKind::FIELD_OF: return {NodeKind::Subfield, NodeKind::Field};
    case EdgeKind::SUBFIELD_OF: return {NodeKind::Topic, NodeKind::Subfield};
  }
  return {NodeKind::Paper, NodeKind::Paper};
}

inline constexpr bool carries_count(EdgeKind kind) {
  return kind == EdgeKind::COAUTHOR || kind == EdgeKind::COOCCUR;
}

// ---------------------------------------------------------------------------
// Dense handles
// ---------------------------------------------------------------------------

/// Position of a node inside one PropertyGraph. Not stable across graphs;
/// the opaque string id is the external identity.
struct NodeIndex {
  std::uint32_t value{};
  friend constexpr auto operator<=>(NodeIndex, NodeIndex) = default;
};

using EdgeIndex = std::uint32_t;

/// A stored relation. `count` is set only for COAUTHOR/COOCCUR,
/// `relevance_score` only for HAS_KEYWORD, `position` optionally for AUTHORED.
struct Edge {
  NodeIndex src;
  NodeIndex dst;
  EdgeKind kind{};
  std::optional<std::uint32_t> count;
  std::optional<double> relevance_score;
  std::optional<std::int32_t> position;
};

}  // namespace hetkg

template <>
struct std::hash<hetkg::NodeIndex> {
  std::size_t operator()(hetkg::NodeIndex n) const noexcept {
    return std::hash<std::uint32_t>{}(n.value);
  }
};
