#pragma once

// Run configuration. Every tunable constant of the retrieval pipeline lives
// here with its default; the CLI layers a JSON config file and `--set`
// overrides on top (flags > file > defaults).

#include <cmath>
#include <cstdint>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "hetkg/types.hpp"

namespace hetkg {

enum class ImportanceMode { Quality, Relevance };

NLOHMANN_JSON_SERIALIZE_ENUM(ImportanceMode, {
                                                 {ImportanceMode::Quality, "quality"},
                                                 {ImportanceMode::Relevance, "relevance"},
                                             })

/// Backend selection for one provider slot. `kind` is "fallback" (built-in,
/// offline) or "http" (remote JSON endpoint). The auth token is read from the
/// environment variable named by `token_env`, never from the file.
struct ProviderConfig {
  std::string kind = "fallback";
  std::string endpoint;
  std::string model;
  std::string token_env = "HETKG_PROVIDER_TOKEN";
  double timeout_seconds = 30.0;
};
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE_WITH_DEFAULT(ProviderConfig, kind, endpoint, model,
                                                token_env, timeout_seconds)

struct EmbeddingConfig {
  std::size_t dimension = 1024;
  int ngram_min = 3;
  int ngram_max = 5;
  ProviderConfig provider;
};
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE_WITH_DEFAULT(EmbeddingConfig, dimension, ngram_min,
                                                ngram_max, provider)

struct QueryConfig {
  std::size_t max_keywords = 8;   // m
  std::size_t max_titles = 10;    // n
  std::size_t full_paper_prefix_chars = 2000;
  double fallback_title_confidence = 0.5;
  double fallback_importance_floor = 0.3;
  ProviderConfig keyword_provider;
  ProviderConfig title_provider;
};
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE_WITH_DEFAULT(QueryConfig, max_keywords, max_titles,
                                                full_paper_prefix_chars,
                                                fallback_title_confidence,
                                                fallback_importance_floor, keyword_provider,
                                                title_provider)

struct IngestConfig {
  std::size_t min_abstract_chars = 200;
};
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE_WITH_DEFAULT(IngestConfig, min_abstract_chars)

struct MatchingConfig {
  double theta_kw = 0.7;
  std::size_t keyword_vector_top = 3;
  std::size_t semantic_top = 60;
  std::size_t rerank_keep = 15;
  double channel_weight_title = 0.4;
  double channel_weight_abstract = 0.6;
  double theta_title = 0.88;
  double fuzzy_seq_weight = 0.65;
  double fuzzy_token_weight = 0.35;
  std::size_t title_top_per_query = 5;
  std::size_t fuzzy_pool_cap = 200;
  double lambda_emb = 0.3;
  double lambda_title = 0.8;
  double bonus_exact = 0.35;
  double bonus_fuzzy = 0.10;
  ProviderConfig reranker;
};
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE_WITH_DEFAULT(MatchingConfig, theta_kw, keyword_vector_top,
                                                semantic_top, rerank_keep, channel_weight_title,
                                                channel_weight_abstract, theta_title,
                                                fuzzy_seq_weight, fuzzy_token_weight,
                                                title_top_per_query, fuzzy_pool_cap, lambda_emb,
                                                lambda_title, bonus_exact, bonus_fuzzy, reranker)

/// Unnormalized edge weights. The last six relations have no entry in the
/// weight table and default to 0, which removes them from the walk.
struct EdgeWeightConfig {
  double beta_has_keyword = 1.20;
  double epsilon_kw = 0.25;
  double beta_cites = 1.00;
  double beta_related = 0.90;
  double beta_authored = 0.80;
  double beta_coauthor = 0.60;
  double beta_cooccur = 0.60;
  double c_max = 2.0;
  double log_base = std::numbers::e;
  double has_topic = 0.0;
  double affiliated_with = 0.0;
  double publish_in = 0.0;
  double domain_of = 0.0;
  double field_of = 0.0;
  double subfield_of = 0.0;
};
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE_WITH_DEFAULT(EdgeWeightConfig, beta_has_keyword, epsilon_kw,
                                                beta_cites, beta_related, beta_authored,
                                                beta_coauthor, beta_cooccur, c_max, log_base,
                                                has_topic, affiliated_with, publish_in,
                                                domain_of, field_of, subfield_of)

struct PropagationConfig {
  double alpha = 0.15;
  double epsilon = 1e-6;
  std::size_t max_iterations = 50;
  std::size_t hops = 2;
  std::size_t hop_cap = 500;
  double gamma = 0.5;
  ImportanceMode importance_mode = ImportanceMode::Quality;
  EdgeWeightConfig weights;
};
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE_WITH_DEFAULT(PropagationConfig, alpha, epsilon,
                                                max_iterations, hops, hop_cap, gamma,
                                                importance_mode, weights)

struct RankingConfig {
  double lambda_pre = 0.35;
  double lambda_graph = 0.45;
  double lambda_imp = 0.20;
  double g_floor = 0.25;
  std::size_t k = 20;
  std::size_t max_paths = 3;
};
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE_WITH_DEFAULT(RankingConfig, lambda_pre, lambda_graph,
                                                lambda_imp, g_floor, k, max_paths)

struct SynthConfig {
  std::size_t paper_count = 200;
  std::size_t author_count = 120;
  std::size_t keyword_vocab_size = 150;
  double citation_exponent = 2.1;
  std::size_t keywords_min = 3;
  std::size_t keywords_max = 8;
  std::uint64_t rng_seed = 7;
};
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE_WITH_DEFAULT(SynthConfig, paper_count, author_count,
                                                keyword_vocab_size, citation_exponent,
                                                keywords_min, keywords_max, rng_seed)

struct Config {
  std::string corpus;
  std::string output_format = "table";  // "table" or "jsonl"
  std::size_t threads = 1;
  EmbeddingConfig embedding;
  QueryConfig query;
  IngestConfig ingest;
  MatchingConfig matching;
  PropagationConfig propagation;
  RankingConfig ranking;
  SynthConfig synth;
};
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE_WITH_DEFAULT(Config, corpus, output_format, threads,
                                                embedding, query, ingest, matching, propagation,
                                                ranking, synth)

namespace detail {

inline void check_known_keys(const nlohmann::json& input, const nlohmann::json& reference,
                             const std::string& path) {
  if (!input.is_object() || !reference.is_object()) return;
  for (const auto& [key, value] : input.items()) {
    auto it = reference.find(key);
    std::string here = path.empty() ? key : path + "." + key;
    if (it == reference.end()) throw ConfigError("unknown config key '" + here + "'");
    check_known_keys(value, *it, here);
  }
}

inline void require(bool ok, const std::string& message) {
  if (!ok) throw ConfigError(message);
}

}  // namespace detail

inline void validate(const Config& c) {
  using detail::require;
  require(c.output_format == "table" || c.output_format == "jsonl",
          "output_format must be 'table' or 'jsonl'");
  require(c.threads >= 1, "threads must be >= 1");
  require(c.embedding.dimension > 0, "embedding.dimension must be positive");
  require(c.embedding.ngram_min >= 1 && c.embedding.ngram_min <= c.embedding.ngram_max,
          "embedding n-gram range invalid");
  require(c.query.max_keywords > 0 && c.query.max_titles > 0, "query.max_* must be positive");
  const auto& m = c.matching;
  require(m.theta_kw >= -1.0 && m.theta_kw <= 1.0, "matching.theta_kw out of [-1,1]");
  require(m.theta_title >= 0.0 && m.theta_title <= 1.0, "matching.theta_title out of [0,1]");
  require(m.channel_weight_title >= 0 && m.channel_weight_abstract >= 0 &&
              m.channel_weight_title + m.channel_weight_abstract > 0,
          "matching channel weights must be nonnegative and not both zero");
  require(m.semantic_top > 0 && m.rerank_keep > 0 && m.title_top_per_query > 0,
          "matching top-k values must be positive");
  const auto& p = c.propagation;
  require(p.alpha > 0.0 && p.alpha < 1.0, "propagation.alpha must lie in (0,1)");
  require(p.epsilon > 0.0, "propagation.epsilon must be positive");
  require(p.max_iterations >= 1, "propagation.max_iterations must be >= 1");
  require(p.hop_cap >= 1, "propagation.hop_cap must be >= 1");
  require(p.gamma >= 0.0, "propagation.gamma must be >= 0");
  const auto& w = p.weights;
  for (double beta : {w.beta_has_keyword, w.beta_cites, w.beta_related, w.beta_authored,
                      w.beta_coauthor, w.beta_cooccur, w.epsilon_kw, w.has_topic,
                      w.affiliated_with, w.publish_in, w.domain_of, w.field_of, w.subfield_of}) {
    require(beta >= 0.0 && std::isfinite(beta), "edge weights must be finite and >= 0");
  }
  require(w.log_base > 1.0, "propagation.weights.log_base must exceed 1");
  require(w.c_max >= 0.0, "propagation.weights.c_max must be >= 0");
  const auto& r = c.ranking;
  require(r.lambda_pre >= 0 && r.lambda_graph >= 0 && r.lambda_imp >= 0,
          "ranking lambdas must be >= 0");
  require(r.g_floor >= 0.0 && r.g_floor <= 1.0, "ranking.g_floor must lie in [0,1]");
  require(r.k >= 1, "ranking.k must be >= 1");
}

inline nlohmann::json to_json_tree(const Config& c) { return nlohmann::json(c); }

/// Rebuilds a Config from a (possibly partial) tree; unknown keys are errors.
inline Config config_from_json(const nlohmann::json& tree) {
  detail::check_known_keys(tree, to_json_tree(Config{}), "");
  Config c;
  try {
    c = tree.get<Config>();
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("config type error: ") + e.what());
  }
  validate(c);
  return c;
}

/// Applies `dotted.key=value`. The value is parsed as JSON when possible,
/// otherwise taken as a string.
inline void apply_override(nlohmann::json& tree, const std::string& assignment) {
  auto eq = assignment.find('=');
  if (eq == std::string::npos || eq == 0) {
    throw ConfigError("override must look like key=value: '" + assignment + "'");
  }
  std::string key = assignment.substr(0, eq);
  std::string raw = assignment.substr(eq + 1);
  nlohmann::json value = nlohmann::json::parse(raw, nullptr, false);
  if (value.is_discarded()) value = raw;

  nlohmann::json* node = &tree;
  std::stringstream parts(key);
  std::string part;
  std::vector<std::string> path;
  while (std::getline(parts, part, '.')) path.push_back(part);
  for (std::size_t i = 0; i + 1 < path.size(); ++i) {
    if (!node->is_object()) throw ConfigError("override path crosses a leaf: " + key);
    node = &(*node)[path[i]];
  }
  (*node)[path.back()] = value;
}

inline nlohmann::json read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file " + path);
  nlohmann::json tree = nlohmann::json::parse(in, nullptr, false, /*ignore_comments=*/true);
  if (tree.is_discarded() || !tree.is_object()) {
    throw ConfigError("config file " + path + " is not a JSON object");
  }
  return tree;
}

}  // namespace hetkg
