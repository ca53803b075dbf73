#pragma once

// Deterministic synthetic scholarly graph: topic hierarchy, venues,
// institutions, authors, keywords, papers and all relations, with embeddings
// from the supplied provider. Same config and seed, same graph, on every
// platform (no std distributions involved).

#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <string>
#include <unordered_set>
#include <vector>

#include "hetkg/config.hpp"
#include "hetkg/corpus.hpp"
#include "hetkg/embedding.hpp"
#include "hetkg/graph_store.hpp"

namespace hetkg {

namespace synth_detail {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform in [0, n) without modulo bias.
  std::size_t below(std::size_t n) {
    if (n <= 1) return 0;
    const std::uint64_t bound = static_cast<std::uint64_t>(n);
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t x;
    do {
      x = engine_();
    } while (x >= limit);
    return static_cast<std::size_t>(x % bound);
  }

  /// Uniform in [lo, hi].
  std::size_t between(std::size_t lo, std::size_t hi) { return lo + below(hi - lo + 1); }

  /// Uniform in [0, 1).
  double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  bool chance(double p) { return unit() < p; }

  template <typename T>
  const T& pick(const std::vector<T>& v) {
    return v[below(v.size())];
  }

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[below(i)]);
  }

 private:
  std::mt19937_64 engine_;
};

inline const std::vector<std::string> kModifiers = {
    "graph",       "neural",        "sparse",        "contrastive",   "bayesian",
    "federated",   "quantum",       "spectral",      "adversarial",   "causal",
    "probabilistic", "temporal",    "semantic",      "hierarchical",  "variational",
    "stochastic",  "robust",        "multimodal",    "recurrent",     "convolutional",
    "generative",  "differentiable", "distributed",  "evolutionary",  "reinforcement",
    "symbolic",    "kernel",        "molecular",     "geometric",     "topological",
    "relational",  "sequential",    "latent",        "attention",     "diffusion",
    "transformer", "retrieval",     "knowledge",     "citation",      "protein",
};

inline const std::vector<std::string> kHeads = {
    "networks",   "embeddings",  "inference",     "learning",      "optimization",
    "sampling",   "clustering",  "segmentation",  "retrieval",     "ranking",
    "translation", "parsing",    "detection",     "generation",    "reasoning",
    "forecasting", "compression", "alignment",    "propagation",   "representations",
    "models",     "search",      "planning",      "synthesis",     "estimation",
    "classification", "regression", "tracking",   "summarization", "distillation",
};

inline const std::vector<std::string> kAdjectives = {
    "Efficient", "Scalable", "Unified", "Principled", "Practical", "Interpretable",
    "Lightweight", "Adaptive", "Faithful", "Provable",
};

inline const std::vector<std::string> kAspects = {
    "Limits", "Robustness", "Geometry", "Dynamics", "Stability", "Calibration", "Complexity",
};

inline const std::vector<std::string> kFirstNames = {
    "Ada", "Bo", "Chen", "Dana", "Emil", "Fatima", "Gus", "Hana", "Ivan", "Jun",
    "Kai", "Lena", "Mateo", "Nia", "Omar", "Priya", "Quinn", "Rosa", "Sven", "Tara",
    "Uma", "Vik", "Wen", "Xavi", "Yara", "Zane", "Aiko", "Bruno", "Clara", "Dev",
};

inline const std::vector<std::string> kLastNames = {
    "Abe", "Baker", "Costa", "Dubois", "Eriksen", "Fischer", "Garcia", "Huang",
    "Ivanova", "Jensen", "Kim", "Lopez", "Moreau", "Nakamura", "Okafor", "Patel",
    "Quispe", "Rossi", "Schmidt", "Tanaka", "Uddin", "Varga", "Wang", "Xu",
    "Yilmaz", "Zhou", "Almeida", "Novak", "Berg", "Sato", "Haddad", "Kowalski",
    "Mensah", "Olsen", "Park", "Reyes", "Silva", "Torres", "Weber", "Zhang",
};

inline const std::vector<std::string> kDomains = {"Physical Sciences", "Life Sciences",
                                                  "Social Sciences"};
inline const std::vector<std::string> kFields = {
    "Computer Science", "Mathematics", "Biology", "Chemistry", "Economics", "Linguistics"};

inline std::string padded(const char* prefix, std::size_t n, int width) {
  std::string digits = std::to_string(n);
  if (static_cast<int>(digits.size()) < width) {
    digits.insert(0, static_cast<std::size_t>(width) - digits.size(), '0');
  }
  return prefix + digits;
}

inline std::string title_case(const std::string& phrase) {
  std::string out = phrase;
  bool start = true;
  for (char& c : out) {
    if (start && c >= 'a' && c <= 'z') c = static_cast<char>(c - 'a' + 'A');
    start = c == ' ';
  }
  return out;
}

/// Pareto-tailed citation count with the given tail exponent.
inline std::uint64_t power_law_count(Rng& rng, double exponent, std::uint64_t cap) {
  double u = rng.unit();
  double x = std::pow(1.0 - u, -1.0 / (exponent - 1.0));
  double c = std::floor(x) - 1.0;
  return static_cast<std::uint64_t>(std::min(c, static_cast<double>(cap)));
}

}  // namespace synth_detail

/// Builds an unfrozen synthetic graph (COOCCUR included).
inline PropertyGraph generate_synthetic(const SynthConfig& cfg,
                                        const EmbeddingProvider& embedder) {
  using namespace synth_detail;
  if (cfg.paper_count == 0) throw ConfigError("synth.paper_count must be positive");
  if (cfg.author_count == 0) throw ConfigError("synth.author_count must be positive");
  if (cfg.keywords_min == 0 || cfg.keywords_max < cfg.keywords_min) {
    throw ConfigError("synth keyword range is invalid");
  }
  if (!(cfg.citation_exponent > 1.0)) throw ConfigError("synth.citation_exponent must be > 1");
  std::size_t max_vocab = kModifiers.size() * kHeads.size();
  if (cfg.keyword_vocab_size < cfg.keywords_max || cfg.keyword_vocab_size > max_vocab) {
    throw ConfigError("synth.keyword_vocab_size must lie in [keywords_max, " +
                      std::to_string(max_vocab) + "]");
  }

  Rng rng(cfg.rng_seed);
  PropertyGraph g(embedder.dimension());
  auto misc = [&](std::string id, NodeKind kind, std::string name) {
    g.add_node(MiscNode{std::move(id), kind, std::move(name), {}});
  };

  // Topic hierarchy: domains <- fields <- subfields <- topics.
  const std::size_t topic_count = std::max<std::size_t>(4, cfg.paper_count / 50);
  const std::size_t subfield_count = std::max<std::size_t>(2, topic_count / 2);
  for (std::size_t i = 0; i < kDomains.size(); ++i) {
    misc(padded("D", i + 1, 2), NodeKind::Domain, kDomains[i]);
  }
  for (std::size_t i = 0; i < kFields.size(); ++i) {
    misc(padded("F", i + 1, 2), NodeKind::Field, kFields[i]);
    g.add_edge(padded("F", i + 1, 2), padded("D", i % kDomains.size() + 1, 2),
               EdgeKind::DOMAIN_OF);
  }
  for (std::size_t i = 0; i < subfield_count; ++i) {
    std::string id = padded("SF", i + 1, 3);
    misc(id, NodeKind::Subfield, title_case(kModifiers[i % kModifiers.size()]) + " Methods");
    g.add_edge(id, padded("F", i % kFields.size() + 1, 2), EdgeKind::FIELD_OF);
  }

  // Keyword vocabulary, clustered by topic.
  std::vector<std::string> phrases;
  for (const auto& m : kModifiers) {
    for (const auto& h : kHeads) phrases.push_back(m + " " + h);
  }
  rng.shuffle(phrases);
  phrases.resize(cfg.keyword_vocab_size);
  std::vector<std::vector<std::size_t>> topic_keywords(topic_count);
  for (std::size_t i = 0; i < phrases.size(); ++i) topic_keywords[i % topic_count].push_back(i);

  for (std::size_t i = 0; i < topic_count; ++i) {
    std::string id = padded("T", i + 1, 4);
    misc(id, NodeKind::Topic, title_case(phrases[topic_keywords[i].front()]));
    g.add_edge(id, padded("SF", i % subfield_count + 1, 3), EdgeKind::SUBFIELD_OF);
  }
  std::vector<std::string> keyword_ids;
  for (std::size_t i = 0; i < phrases.size(); ++i) {
    keyword_ids.push_back(padded("K", i + 1, 5));
    KeywordNode k{keyword_ids.back(), phrases[i], {}, 0, {}};
    k.text_embedding = embedder.embed(phrases[i]).values;
    g.add_node(std::move(k));
  }

  // Venues and institutions.
  const std::size_t source_count = std::max<std::size_t>(3, cfg.paper_count / 100);
  std::vector<std::string> source_names;
  for (std::size_t i = 0; i < source_count; ++i) {
    source_names.push_back("Journal of " + title_case(kModifiers[i % kModifiers.size()]) + " " +
                           title_case(kHeads[(i / kModifiers.size()) % kHeads.size()]));
    misc(padded("S", i + 1, 4), NodeKind::Source, source_names.back());
  }
  const std::size_t institution_count = std::max<std::size_t>(2, cfg.author_count / 10);
  for (std::size_t i = 0; i < institution_count; ++i) {
    misc(padded("I", i + 1, 4), NodeKind::Institution,
         "Institute of " + kLastNames[i % kLastNames.size()] + " " +
             std::to_string(i / kLastNames.size() + 1));
  }

  // Authors, grouped by home topic.
  std::vector<std::vector<std::size_t>> topic_authors(topic_count);
  std::vector<std::string> author_ids;
  for (std::size_t i = 0; i < cfg.author_count; ++i) {
    author_ids.push_back(padded("A", i + 1, 6));
    AuthorNode a{author_ids.back(), rng.pick(kFirstNames) + " " + rng.pick(kLastNames), 0, 0, 0};
    a.cited_by_count = power_law_count(rng, cfg.citation_exponent, 200000) * 5;
    a.h_index = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(a.cited_by_count)));
    g.add_node(std::move(a));
    g.add_edge(author_ids.back(), padded("I", rng.below(institution_count) + 1, 4),
               EdgeKind::AFFILIATED_WITH);
    topic_authors[i % topic_count].push_back(i);
  }

  // Papers.
  std::unordered_set<std::string> used_titles;
  std::vector<std::vector<std::size_t>> topic_papers(topic_count);
  std::map<std::pair<std::size_t, std::size_t>, std::uint32_t> coauthor;
  std::set<std::pair<std::size_t, std::size_t>> related;
  for (std::size_t p = 0; p < cfg.paper_count; ++p) {
    std::size_t topic = rng.below(topic_count);
    const auto& cluster = topic_keywords[topic];

    std::size_t n_kw = rng.between(cfg.keywords_min, cfg.keywords_max);
    std::vector<std::size_t> kws;
    while (kws.size() < n_kw) {
      std::size_t k = rng.chance(0.8) ? rng.pick(cluster) : rng.below(phrases.size());
      if (std::find(kws.begin(), kws.end(), k) == kws.end()) kws.push_back(k);
    }

    std::string title;
    for (int attempt = 0;; ++attempt) {
      const std::string a = title_case(phrases[kws[0]]);
      const std::string b = title_case(phrases[kws[1 + rng.below(kws.size() - 1)]]);
      const std::string c = title_case(phrases[rng.below(phrases.size())]);
      switch (rng.below(7)) {
        case 0: title = a + " for " + b; break;
        case 1: title = "Towards " + rng.pick(kAdjectives) + " " + a + " with " + b; break;
        case 2: title = a + " Meets " + b + ": " + rng.pick(kAdjectives) + " Perspectives"; break;
        case 3: title = rng.pick(kAdjectives) + " " + a + " via " + b; break;
        case 4: title = "On the " + rng.pick(kAspects) + " of " + a + " in " + b; break;
        case 5: title = "Learning " + a + " from " + b + " and " + c; break;
        default: title = rng.pick(kAdjectives) + " " + a + " and " + b + " for " + c; break;
      }
      if (attempt > 50) title += " " + rng.pick(kAspects) + " " + rng.pick(kAdjectives);
      if (used_titles.insert(normalize_title(title)).second) break;
    }

    const auto kw = [&](std::size_t i) { return phrases[kws[i % kws.size()]]; };
    std::string abstract =
        "We study " + kw(0) + " in the context of " + kw(1) + ". The proposed approach combines " +
        kw(2) + " with " + kw(0) + " and is evaluated on " + kw(1) +
        " benchmarks drawn from several application areas. Experiments indicate that " + kw(2) +
        " benefits from " + kw(0) + " when data is scarce, and we analyse where " + kw(1) +
        " remains difficult.";
    for (std::size_t i = 3; i < kws.size(); ++i) {
      abstract += " We also discuss links to " + kw(i) + ".";
    }

    PaperNode paper;
    paper.id = padded("P", p + 1, 7);
    paper.title = title;
    paper.abstract = abstract;
    paper.publication_year = static_cast<int>(1995 + rng.below(30));
    paper.citation_count = power_law_count(rng, cfg.citation_exponent, 100000);
    std::size_t source = rng.below(source_count);
    paper.venue_name = source_names[source];
    paper.title_embedding = embedder.embed(title).values;
    paper.abstract_embedding = embedder.embed(abstract).values;
    g.add_node(std::move(paper));
    const std::string pid = padded("P", p + 1, 7);

    g.add_edge(pid, padded("T", topic + 1, 4), EdgeKind::HAS_TOPIC);
    g.add_edge(pid, padded("S", source + 1, 4), EdgeKind::PUBLISH_IN);
    for (std::size_t i = 0; i < kws.size(); ++i) {
      double rel = i == 0 ? 0.9 + 0.1 * rng.unit() : 0.4 + 0.5 * rng.unit();
      g.add_edge(pid, keyword_ids[kws[i]], EdgeKind::HAS_KEYWORD, std::nullopt, rel);
    }

    // Authors: mostly from the topic's group.
    std::size_t n_auth = rng.between(1, 4);
    std::vector<std::size_t> authors;
    const auto& group = topic_authors[topic];
    while (authors.size() < std::min(n_auth, cfg.author_count)) {
      std::size_t a = !group.empty() && rng.chance(0.85) ? rng.pick(group)
                                                         : rng.below(cfg.author_count);
      if (std::find(authors.begin(), authors.end(), a) == authors.end()) authors.push_back(a);
    }
    for (std::size_t i = 0; i < authors.size(); ++i) {
      g.add_edge(author_ids[authors[i]], pid, EdgeKind::AUTHORED, std::nullopt, std::nullopt,
                 static_cast<std::int32_t>(i + 1));
      for (std::size_t j = i + 1; j < authors.size(); ++j) {
        ++coauthor[{std::min(authors[i], authors[j]), std::max(authors[i], authors[j])}];
      }
    }

    // Citations to earlier papers, mostly within the topic.
    if (p > 0) {
      std::size_t n_cites = rng.below(std::min<std::size_t>(p, 8) + 1);
      std::set<std::size_t> cited;
      const auto& same = topic_papers[topic];
      for (std::size_t i = 0; i < n_cites * 2 && cited.size() < n_cites; ++i) {
        std::size_t q = !same.empty() && rng.chance(0.7) ? rng.pick(same) : rng.below(p);
        cited.insert(q);
      }
      for (std::size_t q : cited) g.add_edge(pid, padded("P", q + 1, 7), EdgeKind::CITES);
      if (!same.empty() && rng.chance(0.2)) {
        std::size_t q = rng.pick(same);
        if (related.insert({q, p}).second) {
          g.add_edge(pid, padded("P", q + 1, 7), EdgeKind::RELATED_TO);
        }
      }
    }
    topic_papers[topic].push_back(p);
  }

  for (const auto& [pair, count] : coauthor) {
    g.add_edge(author_ids[pair.first], author_ids[pair.second], EdgeKind::COAUTHOR, count);
  }
  build_cooccur(g);
  return g;
}

}  // namespace hetkg
