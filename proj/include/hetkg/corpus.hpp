#pragma once

// Corpus directory I/O.
//
// Layout (every file optional except the directory itself):
//
//   domains.jsonl fields.jsonl subfields.jsonl topics.jsonl sources.jsonl
//   institutions.jsonl authors.jsonl keywords.jsonl papers.jsonl   nodes
//   edges.jsonl                                                     relations
//   vectors.manifest + vectors.bin                                  embeddings
//
// Each .jsonl line is one UTF-8 JSON object with a "kind" discriminator.
// vectors.manifest starts with a JSON header line
//   {"dimension": D, "rows": N, "dtype": "float32-le"}
// followed by N lines "<node id>\t<field>" (field: title|abstract|text);
// vectors.bin holds N*D little-endian IEEE-754 binary32 values, row-major.
// See docs/corpus-format.md for the full attribute list.

#include <algorithm>
#include <bit>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include "hetkg/config.hpp"
#include "hetkg/graph_store.hpp"
#include "hetkg/text.hpp"
#include "hetkg/types.hpp"

namespace hetkg {

struct CorpusError : Error {
  using Error::Error;
};

struct LoadReport {
  std::map<std::string, std::size_t> nodes_by_kind;
  std::size_t nodes = 0;
  std::size_t edges = 0;
  std::size_t malformed_lines = 0;
  std::size_t dropped_missing_attributes = 0;
  std::size_t dropped_short_abstract = 0;
  std::size_t dropped_duplicate_ids = 0;
  std::size_t merged_duplicates = 0;    // papers/keywords folded onto a first-seen twin
  std::size_t dangling_edges = 0;
  std::size_t invalid_edges = 0;        // schema violations
  std::size_t duplicate_edges = 0;      // repeated (src, dst, kind) after merging
  std::size_t vectors_attached = 0;
  std::size_t vectors_skipped = 0;
  std::vector<std::string> errors;      // "file:line: message"

  std::size_t dropped_total() const {
    return malformed_lines + dropped_missing_attributes + dropped_short_abstract +
           dropped_duplicate_ids + dangling_edges + invalid_edges;
  }
};

inline nlohmann::json to_json(const LoadReport& r) {
  return {
      {"nodes", r.nodes},
      {"nodes_by_kind", r.nodes_by_kind},
      {"edges", r.edges},
      {"malformed_lines", r.malformed_lines},
      {"dropped_missing_attributes", r.dropped_missing_attributes},
      {"dropped_short_abstract", r.dropped_short_abstract},
      {"dropped_duplicate_ids", r.dropped_duplicate_ids},
      {"merged_duplicates", r.merged_duplicates},
      {"dangling_edges", r.dangling_edges},
      {"invalid_edges", r.invalid_edges},
      {"duplicate_edges", r.duplicate_edges},
      {"vectors_attached", r.vectors_attached},
      {"vectors_skipped", r.vectors_skipped},
      {"dropped_total", r.dropped_total()},
  };
}

struct LoadedCorpus {
  PropertyGraph graph;
  LoadReport report;
};

namespace corpus_detail {

struct NodeFile {
  const char* file;
  const char* kind;
  NodeKind node_kind;
};

inline constexpr std::array<NodeFile, kNodeKindCount> kNodeFiles = {{
    {"domains.jsonl", "domain", NodeKind::Domain},
    {"fields.jsonl", "field", NodeKind::Field},
    {"subfields.jsonl", "subfield", NodeKind::Subfield},
    {"topics.jsonl", "topic", NodeKind::Topic},
    {"sources.jsonl", "source", NodeKind::Source},
    {"institutions.jsonl", "institution", NodeKind::Institution},
    {"authors.jsonl", "author", NodeKind::Author},
    {"keywords.jsonl", "keyword", NodeKind::Keyword},
    {"papers.jsonl", "paper", NodeKind::Paper},
}};

inline const char* record_kind(NodeKind k) {
  for (const auto& f : kNodeFiles) {
    if (f.node_kind == k) return f.kind;
  }
  return "?";
}

inline const char* file_for(NodeKind k) {
  for (const auto& f : kNodeFiles) {
    if (f.node_kind == k) return f.file;
  }
  return "?";
}

struct MissingAttribute : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct BadField : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline std::uint32_t swap_bytes(std::uint32_t v) {
  return (v >> 24) | ((v >> 8) & 0xFF00u) | ((v << 8) & 0xFF0000u) | (v << 24);
}

inline std::string req_string(const nlohmann::json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end() || it->is_null()) throw MissingAttribute(std::string("missing '") + key + "'");
  if (!it->is_string()) throw BadField(std::string(key) + " must be a string");
  std::string s = it->get<std::string>();
  if (trim_ascii(s).empty()) throw MissingAttribute(std::string("empty '") + key + "'");
  return s;
}

template <typename T>
T opt_value(const nlohmann::json& j, const char* key, T fallback) {
  auto it = j.find(key);
  if (it == j.end() || it->is_null()) return fallback;
  return it->get<T>();
}

inline std::optional<std::string> opt_string(const nlohmann::json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end() || it->is_null()) return std::nullopt;
  return it->get<std::string>();
}

inline std::vector<float> opt_vector(const nlohmann::json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end() || it->is_null()) return {};
  return it->get<std::vector<float>>();
}

inline std::uint64_t nonneg(const nlohmann::json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end() || it->is_null()) return 0;
  auto v = it->get<std::int64_t>();
  if (v < 0) throw BadField(std::string(key) + " must be >= 0");
  return static_cast<std::uint64_t>(v);
}

inline float load_le_float(const char* bytes) {
  std::uint32_t bits;
  std::memcpy(&bits, bytes, sizeof bits);
  if constexpr (std::endian::native == std::endian::big) bits = swap_bytes(bits);
  float f;
  std::memcpy(&f, &bits, sizeof f);
  return f;
}

inline void store_le_float(float f, std::string& out) {
  std::uint32_t bits;
  std::memcpy(&bits, &f, sizeof bits);
  if constexpr (std::endian::native == std::endian::big) bits = swap_bytes(bits);
  char bytes[4];
  std::memcpy(bytes, &bits, sizeof bits);
  out.append(bytes, 4);
}

/// File and line of a record; rendered only when something is reported.
struct LineRef {
  const std::string* file;
  std::size_t line;
  std::string str() const { return *file + ":" + std::to_string(line); }
};

class Loader {
 public:
  Loader(const std::filesystem::path& dir, const Config& config)
      : dir_(dir), config_(config), graph_(config.embedding.dimension) {}

  LoadedCorpus run() {
    std::error_code ec;
    if (!std::filesystem::is_directory(dir_, ec)) {
      throw CorpusError("corpus directory '" + dir_.string() + "' does not exist");
    }
    for (const auto& f : kNodeFiles) load_nodes(f);
    load_edges();
    load_vectors();
    report_.nodes = graph_.node_count();
    report_.edges = graph_.edge_count();
    for (NodeKind k : kAllNodeKinds) {
      report_.nodes_by_kind[std::string(to_string(k))] = graph_.nodes_of_kind(k).size();
    }
    return {std::move(graph_), std::move(report_)};
  }

 private:
  template <typename Fn>
  void for_each_line(const std::string& name, Fn fn) {
    std::filesystem::path path = dir_ / name;
    std::error_code ec;
    if (!std::filesystem::exists(path, ec)) return;
    std::ifstream in(path, std::ios::binary);
    if (!in) throw CorpusError("cannot read " + path.string());
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.find_first_not_of(" \t") == std::string::npos) continue;
      LineRef where{&name, lineno};
      nlohmann::json j = nlohmann::json::parse(line, nullptr, false);
      if (j.is_discarded() || !j.is_object()) {
        malformed(where, "not a JSON object");
        continue;
      }
      try {
        fn(j, where);
      } catch (const MissingAttribute& e) {
        ++report_.dropped_missing_attributes;
        report_.errors.push_back(where.str() + ": dropped, " + e.what());
      } catch (const nlohmann::json::exception& e) {
        malformed(where, e.what());
      } catch (const BadField& e) {
        malformed(where, e.what());
      } catch (const SchemaError& e) {
        ++report_.dropped_missing_attributes;
        report_.errors.push_back(where.str() + ": dropped, " + e.what());
      }
    }
    if (in.bad()) throw CorpusError("I/O error while reading " + path.string());
  }

  void malformed(const std::string& where, const std::string& why) {
    ++report_.malformed_lines;
    report_.errors.push_back(where + ": malformed record: " + why);
  }
  void malformed(const LineRef& where, const std::string& why) { malformed(where.str(), why); }

  bool claim_id(const std::string& id, const LineRef& where) {
    if (graph_.find(id) || alias_.contains(id)) {
      ++report_.dropped_duplicate_ids;
      report_.errors.push_back(where.str() + ": duplicate id '" + id + "' dropped");
      return false;
    }
    return true;
  }

  void load_nodes(const NodeFile& file) {
    for_each_line(file.file, [&](const nlohmann::json& j, const LineRef& where) {
      std::string kind = opt_value<std::string>(j, "kind", "");
      if (kind != file.kind) {
        malformed(where, "kind '" + kind + "' in " + file.file);
        return;
      }
      std::string id = req_string(j, "id");
      switch (file.node_kind) {
        case NodeKind::Paper: return add_paper(j, id, where);
        case NodeKind::Keyword: return add_keyword(j, id, where);
        case NodeKind::Author: return add_author(j, id, where);
        default: return add_misc(j, id, file.node_kind, where);
      }
    });
  }

  void add_paper(const nlohmann::json& j, const std::string& id, const LineRef& where) {
    PaperNode p;
    p.id = id;
    p.title = req_string(j, "title");
    p.abstract = opt_value<std::string>(j, "abstract", "");
    p.publication_year = opt_value<int>(j, "publication_year", 0);
    p.citation_count = nonneg(j, "citation_count");
    p.venue_name = opt_string(j, "venue_name");
    p.pdf_url = opt_string(j, "pdf_url");
    p.title_embedding = opt_vector(j, "title_embedding");
    p.abstract_embedding = opt_vector(j, "abstract_embedding");
    if (normalize_text(p.title).empty()) throw MissingAttribute("title normalizes to empty");
    if (to_code_points(trim_ascii(p.abstract)).size() < config_.ingest.min_abstract_chars) {
      ++report_.dropped_short_abstract;
      return;
    }
    if (!claim_id(id, where)) return;
    auto twins = graph_.lookup_exact(NodeKind::Paper, normalize_text(p.title));
    if (!twins.empty()) {
      alias_.emplace(id, graph_.id(twins.front()));
      ++report_.merged_duplicates;
      return;
    }
    graph_.add_node(std::move(p));
  }

  void add_keyword(const nlohmann::json& j, const std::string& id, const LineRef& where) {
    KeywordNode k;
    k.id = id;
    k.text = req_string(j, "text");
    k.frequency = nonneg(j, "frequency");
    k.text_embedding = opt_vector(j, "text_embedding");
    if (!claim_id(id, where)) return;
    auto twins = graph_.lookup_exact(NodeKind::Keyword, normalize_text(k.text));
    if (!twins.empty()) {
      alias_.emplace(id, graph_.id(twins.front()));
      ++report_.merged_duplicates;
      return;
    }
    graph_.add_node(std::move(k));
  }

  void add_author(const nlohmann::json& j, const std::string& id, const LineRef& where) {
    AuthorNode a;
    a.id = id;
    a.display_name = req_string(j, "display_name");
    a.works_count = nonneg(j, "works_count");
    a.cited_by_count = nonneg(j, "cited_by_count");
    a.h_index = nonneg(j, "h_index");
    if (!claim_id(id, where)) return;
    graph_.add_node(std::move(a));
  }

  void add_misc(const nlohmann::json& j, const std::string& id, NodeKind kind,
                const LineRef& where) {
    MiscNode m;
    m.id = id;
    m.kind = kind;
    m.display_name = req_string(j, "display_name");
    for (const auto& [key, value] : j.items()) {
      if (key == "kind" || key == "id" || key == "display_name") continue;
      m.attributes[key] = value.is_string() ? value.get<std::string>() : value.dump();
    }
    if (!claim_id(id, where)) return;
    graph_.add_node(std::move(m));
  }

  std::string resolve(const std::string& id) const {
    auto it = alias_.find(id);
    return it == alias_.end() ? id : it->second;
  }

  void load_edges() {
    for_each_line("edges.jsonl", [&](const nlohmann::json& j, const LineRef& where) {
      if (opt_value<std::string>(j, "kind", "") != "edge") {
        malformed(where, "edge record must have kind 'edge'");
        return;
      }
      std::string type = req_string(j, "type");
      auto kind = edge_kind_from_string(type);
      if (!kind) {
        malformed(where, "unknown relation type '" + type + "'");
        return;
      }
      std::string src_raw = req_string(j, "src");
      std::string dst_raw = req_string(j, "dst");
      bool merged = alias_.contains(src_raw) || alias_.contains(dst_raw);
      auto src = graph_.find(resolve(src_raw));
      auto dst = graph_.find(resolve(dst_raw));
      if (!src || !dst) {
        ++report_.dangling_edges;
        report_.errors.push_back(where.str() + ": dangling edge " + src_raw + " -> " + dst_raw);
        return;
      }
      Edge e{*src, *dst, *kind, std::nullopt, std::nullopt, std::nullopt};
      if (auto it = j.find("count"); it != j.end() && !it->is_null()) {
        e.count = it->get<std::uint32_t>();
      }
      if (auto it = j.find("relevance_score"); it != j.end() && !it->is_null()) {
        e.relevance_score = it->get<double>();
      }
      if (auto it = j.find("position"); it != j.end() && !it->is_null()) {
        e.position = it->get<std::int32_t>();
      }
      if (merged && (e.src == e.dst)) {
        ++report_.duplicate_edges;
        return;
      }
      try {
        graph_.add_edge(e);
      } catch (const SchemaError& err) {
        if (std::string_view(err.what()).starts_with("duplicate edge")) {
          ++report_.duplicate_edges;
          return;
        }
        ++report_.invalid_edges;
        report_.errors.push_back(where.str() + ": " + err.what());
      }
    });
  }

  void load_vectors() {
    std::filesystem::path manifest_path = dir_ / "vectors.manifest";
    std::filesystem::path bin_path = dir_ / "vectors.bin";
    std::error_code ec;
    if (!std::filesystem::exists(manifest_path, ec)) return;
    std::ifstream manifest(manifest_path);
    if (!manifest) throw CorpusError("cannot read " + manifest_path.string());
    std::string header_line;
    std::getline(manifest, header_line);
    nlohmann::json header = nlohmann::json::parse(header_line, nullptr, false);
    if (header.is_discarded() || !header.is_object()) {
      throw CorpusError("vectors.manifest: malformed header");
    }
    auto dim = header.value("dimension", std::size_t{0});
    auto rows = header.value("rows", std::size_t{0});
    if (header.value("dtype", std::string{}) != "float32-le") {
      throw CorpusError("vectors.manifest: unsupported dtype");
    }
    if (dim != graph_.dimension()) {
      throw CorpusError("vectors.manifest: dimension " + std::to_string(dim) +
                        " does not match configured embedding dimension " +
                        std::to_string(graph_.dimension()));
    }
    std::ifstream bin(bin_path, std::ios::binary);
    if (!bin) throw CorpusError("cannot read " + bin_path.string());
    std::vector<char> bytes(static_cast<std::size_t>(std::filesystem::file_size(bin_path, ec)));
    if (ec) throw CorpusError("cannot stat " + bin_path.string());
    bin.read(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!bin) throw CorpusError("short read on " + bin_path.string());
    if (bytes.size() != rows * dim * 4) {
      throw CorpusError("vectors.bin: expected " + std::to_string(rows * dim * 4) +
                        " bytes, found " + std::to_string(bytes.size()));
    }

    std::string line;
    std::size_t row = 0;
    std::vector<float> values(dim);
    while (std::getline(manifest, line)) {
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.empty()) continue;
      if (row >= rows) throw CorpusError("vectors.manifest: more rows than header declares");
      std::size_t this_row = row++;
      auto tab = line.find('\t');
      if (tab == std::string::npos) {
        malformed("vectors.manifest:" + std::to_string(this_row + 2), "expected '<id>\\t<field>'");
        continue;
      }
      std::string id = line.substr(0, tab);
      std::string field_name = line.substr(tab + 1);
      std::optional<VectorField> field;
      for (VectorField f : {VectorField::PaperTitle, VectorField::PaperAbstract,
                            VectorField::KeywordText}) {
        if (to_string(f) == field_name) field = f;
      }
      auto node = graph_.find(id);
      // Rows for merged-away twins or dropped records are ignored.
      if (!field || !node || alias_.contains(id) || graph_.embedding(*field, *node)) {
        ++report_.vectors_skipped;
        continue;
      }
      const char* base = bytes.data() + this_row * dim * 4;
      if constexpr (std::endian::native == std::endian::little) {
        std::memcpy(values.data(), base, dim * 4);
      } else {
        for (std::size_t i = 0; i < dim; ++i) values[i] = load_le_float(base + i * 4);
      }
      try {
        graph_.set_embedding(*field, *node, values);
        ++report_.vectors_attached;
      } catch (const SchemaError& e) {
        ++report_.vectors_skipped;
        report_.errors.push_back("vectors.manifest:" + std::to_string(this_row + 2) + ": " +
                                 e.what());
      }
    }
    if (row != rows) throw CorpusError("vectors.manifest: fewer rows than header declares");
  }

  std::filesystem::path dir_;
  const Config& config_;
  PropertyGraph graph_;
  LoadReport report_;
  std::unordered_map<std::string, std::string> alias_;
};

}  // namespace corpus_detail

/// Loads a corpus directory into a fresh (unfrozen) graph. Titles and keyword
/// texts are deduplicated by normalized form, first record wins; authors are
/// never deduplicated. Bad records are counted in the report, not fatal.
inline LoadedCorpus load_corpus(const std::filesystem::path& dir, const Config& config = {}) {
  return corpus_detail::Loader(dir, config).run();
}

/// Rebuilds all COOCCUR edges from HAS_KEYWORD: one edge per keyword pair
/// sharing at least one paper, count = number of shared papers. Returns the
/// number of edges added.
inline std::size_t build_cooccur(PropertyGraph& graph) {
  graph.retain_edges([](const Edge& e) { return e.kind != EdgeKind::COOCCUR; });

  std::unordered_map<std::uint64_t, std::uint32_t> pair_counts;
  std::vector<NodeIndex> kws;
  for (NodeIndex p : graph.nodes_of_kind(NodeKind::Paper)) {
    kws.clear();
    for (EdgeIndex e : graph.incident_edges(p)) {
      if (graph.edge(e).kind == EdgeKind::HAS_KEYWORD) kws.push_back(graph.edge(e).dst);
    }
    std::sort(kws.begin(), kws.end());
    kws.erase(std::unique(kws.begin(), kws.end()), kws.end());
    for (std::size_t a = 0; a < kws.size(); ++a) {
      for (std::size_t b = a + 1; b < kws.size(); ++b) {
        ++pair_counts[(std::uint64_t{kws[a].value} << 32) | kws[b].value];
      }
    }
  }

  struct Pair {
    NodeIndex src;
    NodeIndex dst;
    std::uint32_t count;
  };
  std::vector<Pair> pairs;
  pairs.reserve(pair_counts.size());
  for (auto [key, count] : pair_counts) {
    NodeIndex a{static_cast<std::uint32_t>(key >> 32)};
    NodeIndex b{static_cast<std::uint32_t>(key & 0xFFFFFFFFu)};
    if (graph.id(b) < graph.id(a)) std::swap(a, b);
    pairs.push_back({a, b, count});
  }
  std::sort(pairs.begin(), pairs.end(), [&](const Pair& x, const Pair& y) {
    if (x.src != y.src) return graph.id(x.src) < graph.id(y.src);
    return graph.id(x.dst) < graph.id(y.dst);
  });
  for (const Pair& p : pairs) {
    graph.add_edge(Edge{p.src, p.dst, EdgeKind::COOCCUR, p.count, std::nullopt, std::nullopt});
  }
  return pairs.size();
}

/// load_corpus + build_cooccur + freeze.
inline std::pair<GraphHandle, LoadReport> ingest(const std::filesystem::path& dir,
                                                 const Config& config = {}) {
  LoadedCorpus loaded = load_corpus(dir, config);
  build_cooccur(loaded.graph);
  loaded.report.edges = loaded.graph.edge_count();
  return {freeze(std::move(loaded.graph)), std::move(loaded.report)};
}

/// Serializes a graph in corpus layout. Nodes are written in insertion order,
/// embeddings go to the sidecar. COOCCUR edges are not written. Output is staged in a temporary sibling
/// directory and renamed into place, so a failed write leaves no partial
/// corpus behind.
inline void write_corpus(const PropertyGraph& graph, const std::filesystem::path& dir) {
  namespace fs = std::filesystem;
  fs::path staging = dir;
  staging += ".partial";
  fs::remove_all(staging);
  fs::create_directories(staging);

  std::map<NodeKind, std::string> buffers;
  std::string manifest_rows;
  std::string bin;
  std::size_t rows = 0;
  auto add_vector = [&](NodeIndex n, VectorField f) {
    auto v = graph.embedding(f, n);
    if (!v) return;
    manifest_rows += graph.id(n) + "\t" + std::string(to_string(f)) + "\n";
    for (float x : *v) corpus_detail::store_le_float(x, bin);
    ++rows;
  };

  for (std::uint32_t i = 0; i < graph.node_count(); ++i) {
    NodeIndex n{i};
    NodeKind kind = graph.kind(n);
    nlohmann::ordered_json j;
    j["kind"] = corpus_detail::record_kind(kind);
    j["id"] = graph.id(n);
    const NodeRecord& rec = graph.node(n);
    if (auto* p = std::get_if<PaperNode>(&rec)) {
      j["title"] = p->title;
      j["abstract"] = p->abstract;
      j["publication_year"] = p->publication_year;
      j["citation_count"] = p->citation_count;
      if (p->venue_name) j["venue_name"] = *p->venue_name;
      if (p->pdf_url) j["pdf_url"] = *p->pdf_url;
      add_vector(n, VectorField::PaperTitle);
      add_vector(n, VectorField::PaperAbstract);
    } else if (auto* k = std::get_if<KeywordNode>(&rec)) {
      j["text"] = k->text;
      j["frequency"] = k->frequency;
      add_vector(n, VectorField::KeywordText);
    } else if (auto* a = std::get_if<AuthorNode>(&rec)) {
      j["display_name"] = a->display_name;
      j["works_count"] = a->works_count;
      j["cited_by_count"] = a->cited_by_count;
      j["h_index"] = a->h_index;
    } else {
      const auto& m = std::get<MiscNode>(rec);
      j["display_name"] = m.display_name;
      for (const auto& [key, value] : m.attributes) j[key] = value;
    }
    buffers[kind] += j.dump() + "\n";
  }

  std::string edges;
  for (const Edge& e : graph.edges()) {
    if (e.kind == EdgeKind::COOCCUR) continue;  // derived; rebuilt by ingest
    nlohmann::ordered_json j;
    j["kind"] = "edge";
    j["type"] = to_string(e.kind);
    j["src"] = graph.id(e.src);
    j["dst"] = graph.id(e.dst);
    if (e.count) j["count"] = *e.count;
    if (e.relevance_score) j["relevance_score"] = *e.relevance_score;
    if (e.position) j["position"] = *e.position;
    edges += j.dump() + "\n";
  }

  auto write = [&](const std::string& name, const std::string& content) {
    std::ofstream out(staging / name, std::ios::binary | std::ios::trunc);
    if (!out) throw CorpusError("cannot write " + (staging / name).string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw CorpusError("write failed for " + (staging / name).string());
  };
  for (const auto& [kind, content] : buffers) write(corpus_detail::file_for(kind), content);
  write("edges.jsonl", edges);
  nlohmann::ordered_json header;
  header["dimension"] = graph.dimension();
  header["rows"] = rows;
  header["dtype"] = "float32-le";
  write("vectors.manifest", header.dump() + "\n" + manifest_rows);
  write("vectors.bin", bin);

  fs::remove_all(dir);
  fs::rename(staging, dir);
}

}  // namespace hetkg
