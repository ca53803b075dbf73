#pragma once

// Query analysis: keywords with importance, candidate titles with
// confidence, and the query embedding. Remote extractors plug in through
// KeywordExtractor / TitleExtractor; when they are absent or fail, the
// deterministic fallbacks below are used and the fact is recorded.

#include <algorithm>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include <unicode/uchar.h>

#include "hetkg/config.hpp"
#include "hetkg/embedding.hpp"
#include "hetkg/text.hpp"
#include "hetkg/types.hpp"

namespace hetkg {

enum class QueryKind { Keywords, Question, Abstract, Idea, FullPaper };

NLOHMANN_JSON_SERIALIZE_ENUM(QueryKind, {
                                            {QueryKind::Keywords, "keywords"},
                                            {QueryKind::Question, "question"},
                                            {QueryKind::Abstract, "abstract"},
                                            {QueryKind::Idea, "idea"},
                                            {QueryKind::FullPaper, "full_paper"},
                                        })

inline std::optional<QueryKind> query_kind_from_string(std::string_view s) {
  if (s == "keywords") return QueryKind::Keywords;
  if (s == "question") return QueryKind::Question;
  if (s == "abstract") return QueryKind::Abstract;
  if (s == "idea") return QueryKind::Idea;
  if (s == "full_paper") return QueryKind::FullPaper;
  return std::nullopt;
}

struct QueryInput {
  QueryKind kind = QueryKind::Question;
  std::string text;
  std::vector<std::string> reference_titles;
};

struct ExtractedKeyword {
  std::string text;  // normalized
  double importance = 0.0;
};

struct ExtractedTitle {
  std::string text;  // letters-only, lowercase
  double confidence = 0.0;
};

/// Fallbacks taken while answering one query, in the order they happened.
struct Diagnostics {
  std::vector<std::string> fallbacks;

  void fallback(std::string_view stage, std::string_view why) {
    fallbacks.push_back(std::string(stage) + ": " + std::string(why));
  }
  void merge(const Diagnostics& other) {
    fallbacks.insert(fallbacks.end(), other.fallbacks.begin(), other.fallbacks.end());
  }
};

/// A raw keyword as returned by an extractor: score on a 1-10 integer scale.
struct ScoredPhrase {
  std::string text;
  double score = 0.0;
};

class KeywordExtractor {
 public:
  virtual ~KeywordExtractor() = default;
  virtual std::string name() const = 0;
  virtual std::vector<ScoredPhrase> extract(const QueryInput& query) const = 0;
};

/// Raw titles with confidence in [0,1].
class TitleExtractor {
 public:
  virtual ~TitleExtractor() = default;
  virtual std::string name() const = 0;
  virtual std::vector<ExtractedTitle> extract(const QueryInput& query) const = 0;
};

namespace query_detail {

inline const std::unordered_set<std::string>& stopwords() {
  static const std::unordered_set<std::string> words = {
      "a", "about", "above", "across", "after", "again", "against", "all", "also", "am",
      "among", "an", "and", "any", "are", "as", "at", "be", "because", "been", "before",
      "being", "below", "between", "both", "but", "by", "can", "could", "did", "do", "does",
      "doing", "down", "during", "each", "either", "else", "etc", "even", "ever", "every",
      "few", "for", "from", "further", "had", "has", "have", "having", "he", "her", "here",
      "hers", "him", "his", "how", "however", "i", "if", "in", "into", "is", "it", "its",
      "itself", "just", "may", "me", "might", "more", "most", "much", "must", "my", "no",
      "nor", "not", "now", "of", "off", "on", "once", "one", "only", "or", "other", "our",
      "ours", "out", "over", "own", "per", "same", "she", "should", "so", "some", "such",
      "than", "that", "the", "their", "theirs", "them", "then", "there", "these", "they",
      "this", "those", "through", "thus", "to", "too", "toward", "towards", "two", "under",
      "until", "up", "upon", "us", "very", "via", "was", "we", "were", "what", "when",
      "where", "whether", "which", "while", "who", "whom", "why", "will", "with", "within",
      "without", "would", "yet", "you", "your", "yours",
      // academic filler
      "approach", "approaches", "based", "demonstrate", "demonstrates", "existing", "find",
      "findings", "introduce", "introduces", "method", "methods", "new", "novel", "paper",
      "present", "presents", "propose", "proposed", "proposes", "result", "results", "show",
      "shows", "study", "studies", "using", "use", "used", "work", "works", "well", "many",
      "several", "various", "first", "furthermore", "moreover", "additionally", "overall",
      "make", "makes", "making", "achieve", "achieves", "improve", "improves", "compared",
  };
  return words;
}

/// Word tokens of normalized text; an empty string marks a phrase break
/// (punctuation), so bigrams never span one.
inline std::vector<std::string> word_stream(std::string_view normalized) {
  std::vector<std::string> out;
  std::u32string cps = to_code_points(normalized);
  std::string current;
  auto flush = [&] {
    if (!current.empty()) {
      out.push_back(current);
      current.clear();
    }
  };
  for (char32_t c : cps) {
    auto cp = static_cast<UChar32>(c);
    if (u_isalnum(cp) || (c == U'-' && !current.empty())) {
      icu::UnicodeString one(cp);
      one.toUTF8String(current);
    } else if (u_isUWhiteSpace(cp)) {
      flush();
    } else {
      flush();
      if (out.empty() || !out.back().empty()) out.emplace_back();
    }
  }
  flush();
  for (auto& w : out) {
    while (!w.empty() && w.back() == '-') w.pop_back();
  }
  return out;
}

inline bool content_word(const std::string& w) {
  if (w.size() < 3) return false;
  if (stopwords().contains(w)) return false;
  return std::any_of(w.begin(), w.end(), [](char ch) { return !(ch >= '0' && ch <= '9'); });
}

inline std::string strip_list_marker(std::string_view line) {
  std::string s = trim_ascii(line);
  std::size_t i = 0;
  if (!s.empty() && s[0] == '[') {
    auto close = s.find(']');
    if (close != std::string::npos && close <= 6) i = close + 1;
  } else {
    std::size_t d = 0;
    while (d < s.size() && d < 4 && s[d] >= '0' && s[d] <= '9') ++d;
    if (d > 0 && d < s.size() && (s[d] == '.' || s[d] == ')')) {
      i = d + 1;
    } else if (s.starts_with("- ") || s.starts_with("* ")) {
      i = 2;
    } else if (s.starts_with("\xE2\x80\xA2")) {  // bullet
      i = 3;
    }
  }
  return trim_ascii(std::string_view(s).substr(i));
}

/// Title-cased line: at least two significant words, most of them capitalized.
inline bool looks_like_title(std::string_view line) {
  auto words = split_tokens(line);
  if (words.size() < 3 || words.size() > 30) return false;
  std::size_t significant = 0;
  std::size_t capitalized = 0;
  for (auto w : words) {
    std::u32string cps = to_code_points(w);
    if (cps.empty() || !u_isalpha(static_cast<UChar32>(cps[0]))) continue;
    std::string lower = normalize_text(w);
    if (cps.size() < 4 || stopwords().contains(lower)) continue;
    ++significant;
    if (u_isupper(static_cast<UChar32>(cps[0]))) ++capitalized;
  }
  return significant >= 2 && capitalized * 10 >= significant * 7;
}

inline void collect_quoted(std::string_view text, std::vector<std::string>& out) {
  auto scan = [&](std::string_view open, std::string_view close) {
    std::size_t pos = 0;
    while ((pos = text.find(open, pos)) != std::string_view::npos) {
      std::size_t start = pos + open.size();
      std::size_t end = text.find(close, start);
      if (end == std::string_view::npos) break;
      std::string inner = trim_ascii(text.substr(start, end - start));
      if (split_tokens(inner).size() >= 3 && inner.find('\n') == std::string::npos) {
        out.push_back(inner);
      }
      pos = end + close.size();
    }
  };
  scan("\"", "\"");
  scan("\xE2\x80\x9C", "\xE2\x80\x9D");  // curly double quotes
}

}  // namespace query_detail

/// TF-scored unigrams and bigrams (stopword-filtered). Importance is the
/// term frequency MinMax-scaled onto [floor, 1].
inline std::vector<ExtractedKeyword> fallback_keywords(std::string_view text, std::size_t m,
                                                       double floor = 0.3) {
  using namespace query_detail;
  std::vector<std::string> words = word_stream(normalize_text(text));

  struct Candidate {
    std::size_t tf = 0;
    std::size_t first = 0;
    bool bigram = false;
  };
  std::unordered_map<std::string, Candidate> candidates;
  std::size_t position = 0;
  auto bump = [&](const std::string& key, bool bigram) {
    auto [it, inserted] = candidates.try_emplace(key);
    if (inserted) {
      it->second.first = position;
      it->second.bigram = bigram;
    }
    ++it->second.tf;
    ++position;
  };
  for (std::size_t i = 0; i < words.size(); ++i) {
    if (!content_word(words[i])) continue;
    bump(words[i], false);
    if (i + 1 < words.size() && content_word(words[i + 1])) {
      bump(words[i] + " " + words[i + 1], true);
    }
  }

  std::vector<std::pair<std::string, Candidate>> ranked(candidates.begin(), candidates.end());
  std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
    if (a.second.tf != b.second.tf) return a.second.tf > b.second.tf;
    if (a.second.bigram != b.second.bigram) return a.second.bigram;
    return a.second.first < b.second.first;
  });
  if (ranked.size() > m) ranked.resize(m);

  std::vector<ExtractedKeyword> out;
  if (ranked.empty()) return out;
  std::size_t lo = ranked.back().second.tf;
  std::size_t hi = ranked.front().second.tf;
  for (const auto& [phrase, c] : ranked) {
    double importance = hi == lo ? 1.0
                                 : floor + (1.0 - floor) * static_cast<double>(c.tf - lo) /
                                               static_cast<double>(hi - lo);
    out.push_back({phrase, importance});
  }
  return out;
}

/// Normalizes, maps 1-10 scores onto [0,1], keeps the max importance per
/// normalized text and the top `m` by importance.
inline std::vector<ExtractedKeyword> finalize_keywords(const std::vector<ScoredPhrase>& raw,
                                                       std::size_t m) {
  std::vector<ExtractedKeyword> out;
  std::unordered_map<std::string, std::size_t> slot;
  for (const auto& phrase : raw) {
    std::string text = normalize_text(phrase.text);
    if (text.empty()) continue;
    double importance = std::clamp(phrase.score / 10.0, 0.0, 1.0);
    auto [it, inserted] = slot.try_emplace(text, out.size());
    if (inserted) {
      out.push_back({std::move(text), importance});
    } else {
      out[it->second].importance = std::max(out[it->second].importance, importance);
    }
  }
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return a.importance > b.importance;
  });
  if (out.size() > m) out.resize(m);
  return out;
}

inline std::vector<ExtractedKeyword> extract_keywords(const QueryInput& query,
                                                      const KeywordExtractor* provider,
                                                      const QueryConfig& config,
                                                      Diagnostics& diag) {
  if (trim_ascii(query.text).empty()) throw Error("query text must be nonempty");
  if (provider != nullptr) {
    try {
      auto out = finalize_keywords(provider->extract(query), config.max_keywords);
      if (!out.empty()) return out;
      diag.fallback("keywords", provider->name() + " returned no keywords");
    } catch (const std::exception& e) {
      diag.fallback("keywords", e.what());
    }
  }
  return fallback_keywords(query.text, config.max_keywords, config.fallback_importance_floor);
}

/// Heuristic titles: supplied reference titles, quoted phrases, and
/// title-cased lines, all with the same fixed confidence.
inline std::vector<ExtractedTitle> fallback_titles(const QueryInput& query, double confidence) {
  using namespace query_detail;
  std::vector<std::string> raw(query.reference_titles.begin(), query.reference_titles.end());
  if (query.kind == QueryKind::Idea || query.kind == QueryKind::FullPaper) {
    collect_quoted(query.text, raw);
    std::size_t start = 0;
    std::string_view text = query.text;
    while (start <= text.size()) {
      std::size_t end = text.find('\n', start);
      if (end == std::string_view::npos) end = text.size();
      std::string line = strip_list_marker(text.substr(start, end - start));
      if (looks_like_title(line)) raw.push_back(line);
      start = end + 1;
    }
  }
  std::vector<ExtractedTitle> out;
  out.reserve(raw.size());
  for (auto& r : raw) out.push_back({std::move(r), confidence});
  return out;
}

/// Normalizes to letters-only lowercase, keeps the max confidence per title
/// and the `n` most confident (earlier wins ties).
inline std::vector<ExtractedTitle> finalize_titles(std::vector<ExtractedTitle> raw, std::size_t n) {
  std::vector<ExtractedTitle> out;
  std::unordered_map<std::string, std::size_t> slot;
  for (auto& t : raw) {
    std::string key = normalize_title(t.text);
    if (key.empty()) continue;
    double c = std::clamp(t.confidence, 0.0, 1.0);
    auto [it, inserted] = slot.try_emplace(key, out.size());
    if (inserted) {
      out.push_back({std::move(key), c});
    } else {
      out[it->second].confidence = std::max(out[it->second].confidence, c);
    }
  }
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return a.confidence > b.confidence;
  });
  if (out.size() > n) out.resize(n);
  return out;
}

inline std::vector<ExtractedTitle> extract_titles(const QueryInput& query,
                                                  const TitleExtractor* provider,
                                                  const QueryConfig& config, Diagnostics& diag) {
  bool eligible = query.kind == QueryKind::Idea || query.kind == QueryKind::FullPaper ||
                  !query.reference_titles.empty();
  if (!eligible) return {};
  if (provider != nullptr) {
    try {
      return finalize_titles(provider->extract(query), config.max_titles);
    } catch (const std::exception& e) {
      diag.fallback("titles", e.what());
    }
  }
  return finalize_titles(fallback_titles(query, config.fallback_title_confidence),
                         config.max_titles);
}

/// The first block after a line reading "abstract" (case-insensitive), or
/// nullopt when there is no such marker.
inline std::optional<std::string> locate_abstract(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    lines.push_back(text.substr(start, end - start));
    start = end + 1;
  }
  for (std::size_t i = 0; i < lines.size(); ++i) {
    std::string marker = normalize_text(lines[i]);
    if (marker != "abstract" && marker != "abstract:") continue;
    std::size_t j = i + 1;
    while (j < lines.size() && trim_ascii(lines[j]).empty()) ++j;
    std::string block;
    for (; j < lines.size() && !trim_ascii(lines[j]).empty(); ++j) {
      if (!block.empty()) block += '\n';
      block += trim_ascii(lines[j]);
    }
    if (!block.empty()) return block;
  }
  return std::nullopt;
}

/// Text that is embedded as the query vector: the abstract of a full paper,
/// otherwise the whole query.
inline std::string query_embedding_text(const QueryInput& query, const QueryConfig& config,
                                        Diagnostics& diag) {
  if (trim_ascii(query.text).empty()) throw Error("query text must be nonempty");
  if (query.kind != QueryKind::FullPaper) return query.text;
  if (auto abstract = locate_abstract(query.text)) return *abstract;
  diag.fallback("query_embedding", "no abstract marker; embedding leading " +
                                       std::to_string(config.full_paper_prefix_chars) +
                                       " characters");
  return utf8_prefix(query.text, config.full_paper_prefix_chars);
}

inline EmbeddingVector query_embedding(const QueryInput& query, const EmbeddingProvider& embedder,
                                       const QueryConfig& config, Diagnostics& diag) {
  return embedder.embed(query_embedding_text(query, config, diag));
}

}  // namespace hetkg
