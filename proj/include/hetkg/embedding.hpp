#pragma once

// Embedding and rerank providers. The built-in implementations are pure
// functions of their input (no network, clock or RNG) so the whole pipeline
// runs offline and deterministically; remote providers live in
// http_providers.hpp behind the same interfaces.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hetkg/graph_store.hpp"
#include "hetkg/text.hpp"
#include "hetkg/types.hpp"

namespace hetkg {

/// Unit-norm dense vector of the configured dimension.
struct EmbeddingVector {
  std::vector<float> values;

  std::size_t dimension() const { return values.size(); }
  std::span<const float> span() const { return values; }
};

/// Dot product of two unit vectors, accumulated in double.
inline double cosine(std::span<const float> a, std::span<const float> b) {
  if (a.size() != b.size()) {
    throw DimensionMismatch("cosine of vectors with dimensions " + std::to_string(a.size()) +
                            " and " + std::to_string(b.size()));
  }
  double dot = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) dot += static_cast<double>(a[i]) * b[i];
  return std::clamp(dot, -1.0, 1.0);
}

inline double cosine(const EmbeddingVector& a, const EmbeddingVector& b) {
  return cosine(a.span(), b.span());
}

class EmbeddingProvider {
 public:
  virtual ~EmbeddingProvider() = default;
  virtual std::string name() const = 0;
  virtual std::size_t dimension() const = 0;
  /// Throws Error on empty text and ProviderError on backend failure.
  virtual EmbeddingVector embed(std::string_view text) const = 0;
};

/// Feature-hashed character n-grams of the normalized text, signed-hashed
/// into `dimension` buckets and L2-normalized.
class HashingEmbedder final : public EmbeddingProvider {
 public:
  explicit HashingEmbedder(std::size_t dimension = 1024, int ngram_min = 3, int ngram_max = 5)
      : dimension_(dimension), ngram_min_(ngram_min), ngram_max_(ngram_max) {
    if (dimension_ == 0 || ngram_min_ < 1 || ngram_max_ < ngram_min_) {
      throw ConfigError("invalid hashing embedder parameters");
    }
  }

  std::string name() const override { return "hashing-ngram"; }
  std::size_t dimension() const override { return dimension_; }

  EmbeddingVector embed(std::string_view text) const override {
    std::string normalized = normalize_text(text);
    if (normalized.empty()) throw Error("cannot embed empty text");
    std::u32string cps = U" " + to_code_points(normalized) + U" ";

    std::vector<double> acc(dimension_, 0.0);
    for (int n = ngram_min_; n <= ngram_max_; ++n) {
      auto width = static_cast<std::size_t>(n);
      if (cps.size() < width) continue;
      for (std::size_t i = 0; i + width <= cps.size(); ++i) {
        std::uint64_t h = hash_gram(std::u32string_view(cps).substr(i, width));
        std::size_t bucket = static_cast<std::size_t>(h % dimension_);
        acc[bucket] += (h >> 63) != 0 ? -1.0 : 1.0;
      }
    }

    double sq = 0.0;
    for (double x : acc) sq += x * x;
    if (sq == 0.0) {
      // Every gram cancelled out; fall back to a single hashed bucket.
      acc[static_cast<std::size_t>(hash_gram(cps) % dimension_)] = 1.0;
      sq = 1.0;
    }
    double inv = 1.0 / std::sqrt(sq);
    EmbeddingVector out;
    out.values.resize(dimension_);
    for (std::size_t i = 0; i < dimension_; ++i) out.values[i] = static_cast<float>(acc[i] * inv);
    return out;
  }

 private:
  static std::uint64_t hash_gram(std::u32string_view gram) {
    std::uint64_t h = 0xcbf29ce484222325ULL;  // FNV-1a
    for (char32_t c : gram) {
      for (int shift = 0; shift < 32; shift += 8) {
        h ^= (static_cast<std::uint32_t>(c) >> shift) & 0xFFu;
        h *= 0x100000001b3ULL;
      }
    }
    // Final avalanche so the sign bit is well mixed.
    h ^= h >> 33;
    h *= 0xff51afd7ed558ccdULL;
    h ^= h >> 33;
    return h;
  }

  std::size_t dimension_;
  int ngram_min_;
  int ngram_max_;
};

// ---------------------------------------------------------------------------
// Reranking
// ---------------------------------------------------------------------------

struct RerankCandidate {
  NodeIndex node;
  std::string_view title;
  std::string_view abstract;
};

struct RerankScore {
  NodeIndex node;
  double score = 0.0;  // in [0,1], comparable only within one call
};

class Reranker {
 public:
  virtual ~Reranker() = default;
  virtual std::string name() const = 0;
  /// Raw relevance per candidate, aligned with `candidates`.
  virtual std::vector<double> score(std::string_view query,
                                    std::span<const RerankCandidate> candidates) const = 0;
};

/// Cosine between the query embedding and each candidate's abstract (title
/// when the abstract is empty).
class EmbeddingReranker final : public Reranker {
 public:
  explicit EmbeddingReranker(std::shared_ptr<const EmbeddingProvider> embedder)
      : embedder_(std::move(embedder)) {}

  std::string name() const override { return "embedding-cosine(" + embedder_->name() + ")"; }

  std::vector<double> score(std::string_view query,
                            std::span<const RerankCandidate> candidates) const override {
    EmbeddingVector q = embedder_->embed(query);
    std::vector<double> out;
    out.reserve(candidates.size());
    for (const auto& c : candidates) {
      std::string_view text = normalize_text(c.abstract).empty() ? c.title : c.abstract;
      out.push_back(cosine(q, embedder_->embed(text)));
    }
    return out;
  }

 private:
  std::shared_ptr<const EmbeddingProvider> embedder_;
};

/// MinMax onto [0,1]. A constant pool maps to 1.0 when its value is
/// positive and to 0.0 otherwise.
inline std::vector<double> minmax_normalize(std::span<const double> xs) {
  std::vector<double> out(xs.size(), 0.0);
  if (xs.empty()) return out;
  auto [lo, hi] = std::minmax_element(xs.begin(), xs.end());
  double min = *lo;
  double max = *hi;
  if (max == min) {
    std::fill(out.begin(), out.end(), max > 0.0 ? 1.0 : 0.0);
    return out;
  }
  for (std::size_t i = 0; i < xs.size(); ++i) out[i] = (xs[i] - min) / (max - min);
  return out;
}

/// Orders candidates by MinMax-normalized scores (descending, then node id
/// via `id_less`). A constant pool is treated as a full tie at 1.0.
template <typename IdLess>
std::vector<RerankScore> order_rerank_scores(std::span<const RerankCandidate> candidates,
                                             std::span<const double> raw, IdLess id_less) {
  std::vector<RerankScore> out;
  out.reserve(candidates.size());
  if (candidates.empty()) return out;
  auto [lo, hi] = std::minmax_element(raw.begin(), raw.end());
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    double s = *hi == *lo ? 1.0 : (raw[i] - *lo) / (*hi - *lo);
    out.push_back({candidates[i].node, s});
  }
  std::stable_sort(out.begin(), out.end(), [&](const RerankScore& a, const RerankScore& b) {
    if (a.score != b.score) return a.score > b.score;
    return id_less(a.node, b.node);
  });
  return out;
}

/// Reranks with `reranker`; scores are MinMax-normalized within the call.
template <typename IdLess>
std::vector<RerankScore> rerank(const Reranker& reranker, std::string_view query,
                                std::span<const RerankCandidate> candidates, IdLess id_less) {
  if (candidates.empty()) throw Error("rerank requires at least one candidate");
  std::vector<double> raw = reranker.score(query, candidates);
  if (raw.size() != candidates.size()) {
    throw ProviderError(reranker.name(), "returned " + std::to_string(raw.size()) +
                                             " scores for " +
                                             std::to_string(candidates.size()) + " candidates");
  }
  for (double x : raw) {
    if (!std::isfinite(x)) throw ProviderError(reranker.name(), "non-finite score");
  }
  return order_rerank_scores(candidates, raw, id_less);
}

}  // namespace hetkg
