#pragma once

// Remote providers over JSON/HTTP. Request shapes:
//   embeddings  POST {"model", "input": [text]}            -> {"data": [{"embedding": [...]}]}
//   rerank      POST {"model", "query", "documents": [...]} -> {"results": [{"index", "relevance_score"}]}
//   keywords    POST chat completion                        -> JSON {"keywords", "scores"}
//   titles      POST chat completion                        -> JSON {"titles", "confidences"}
// The endpoint is a full URL; the bearer token comes from the environment
// variable named in the provider config. HTTPS needs
// CPPHTTPLIB_OPENSSL_SUPPORT at build time.

#include <cstdlib>
#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <httplib.h>
#include <json.hpp>

#include "hetkg/config.hpp"
#include "hetkg/embedding.hpp"
#include "hetkg/prompts.hpp"
#include "hetkg/query_analysis.hpp"
#include "hetkg/types.hpp"

namespace hetkg {

class JsonEndpoint {
 public:
  JsonEndpoint(std::string provider_name, ProviderConfig config)
      : name_(std::move(provider_name)), config_(std::move(config)) {
    auto scheme = config_.endpoint.find("://");
    if (scheme == std::string::npos) {
      throw ConfigError(name_ + ": endpoint must be an absolute URL");
    }
    auto slash = config_.endpoint.find('/', scheme + 3);
    base_ = config_.endpoint.substr(0, slash);
    path_ = slash == std::string::npos ? "/" : config_.endpoint.substr(slash);
  }

  const std::string& name() const { return name_; }
  const ProviderConfig& config() const { return config_; }

  nlohmann::json post(const nlohmann::json& body) const {
    httplib::Client client(base_);
    auto secs = static_cast<time_t>(config_.timeout_seconds);
    client.set_connection_timeout(secs, 0);
    client.set_read_timeout(secs, 0);
    client.set_write_timeout(secs, 0);
    httplib::Headers headers;
    if (!config_.token_env.empty()) {
      if (const char* token = std::getenv(config_.token_env.c_str()); token && *token) {
        headers.emplace("Authorization", std::string("Bearer ") + token);
      }
    }
    auto res = client.Post(path_, headers, body.dump(), "application/json");
    if (!res) throw ProviderError(name_, "request failed: " + httplib::to_string(res.error()));
    if (res->status != 200) {
      throw ProviderError(name_, "HTTP " + std::to_string(res->status) + ": " +
                                     utf8_prefix(res->body, 200));
    }
    auto parsed = nlohmann::json::parse(res->body, nullptr, false);
    if (parsed.is_discarded()) throw ProviderError(name_, "response is not JSON");
    return parsed;
  }

  /// Sends a system + user chat turn and parses the reply content as JSON.
  nlohmann::json chat_json(std::string_view system, const std::string& user) const {
    nlohmann::json body = {
        {"model", config_.model},
        {"temperature", 0},
        {"messages",
         {{{"role", "system"}, {"content", std::string(system)}},
          {{"role", "user"}, {"content", user}}}},
    };
    nlohmann::json res = post(body);
    std::string content;
    try {
      content = res.at("choices").at(0).at("message").at("content").get<std::string>();
    } catch (const nlohmann::json::exception&) {
      throw ProviderError(name_, "chat response has no message content");
    }
    auto open = content.find('{');
    auto close = content.rfind('}');
    if (open == std::string::npos || close == std::string::npos || close < open) {
      throw ProviderError(name_, "chat reply contains no JSON object");
    }
    auto parsed = nlohmann::json::parse(content.substr(open, close - open + 1), nullptr, false);
    if (parsed.is_discarded()) throw ProviderError(name_, "chat reply JSON is malformed");
    return parsed;
  }

 private:
  std::string name_;
  ProviderConfig config_;
  std::string base_;
  std::string path_;
};

class HttpEmbeddingProvider final : public EmbeddingProvider {
 public:
  HttpEmbeddingProvider(ProviderConfig config, std::size_t dimension)
      : endpoint_("http-embedding(" + config.model + ")", std::move(config)),
        dimension_(dimension) {}

  std::string name() const override { return endpoint_.name(); }
  std::size_t dimension() const override { return dimension_; }

  EmbeddingVector embed(std::string_view text) const override {
    if (normalize_text(text).empty()) throw Error("cannot embed empty text");
    nlohmann::json res = endpoint_.post(
        {{"model", endpoint_.config().model}, {"input", {std::string(text)}}});
    EmbeddingVector out;
    try {
      out.values = res.at("data").at(0).at("embedding").get<std::vector<float>>();
    } catch (const nlohmann::json::exception& e) {
      throw ProviderError(name(), std::string("malformed embedding response: ") + e.what());
    }
    if (out.values.size() != dimension_) {
      throw ProviderError(name(), "returned dimension " + std::to_string(out.values.size()) +
                                      ", expected " + std::to_string(dimension_));
    }
    if (!l2_normalize(out.values)) throw ProviderError(name(), "returned a zero vector");
    return out;
  }

 private:
  JsonEndpoint endpoint_;
  std::size_t dimension_;
};

class HttpReranker final : public Reranker {
 public:
  explicit HttpReranker(ProviderConfig config)
      : endpoint_("http-rerank(" + config.model + ")", std::move(config)) {}

  std::string name() const override { return endpoint_.name(); }

  std::vector<double> score(std::string_view query,
                            std::span<const RerankCandidate> candidates) const override {
    nlohmann::json docs = nlohmann::json::array();
    for (const auto& c : candidates) {
      docs.push_back(std::string(c.title) + "\n" + std::string(c.abstract));
    }
    nlohmann::json res = endpoint_.post(
        {{"model", endpoint_.config().model}, {"query", std::string(query)}, {"documents", docs}});
    std::vector<double> out(candidates.size(), 0.0);
    std::vector<bool> seen(candidates.size(), false);
    try {
      for (const auto& r : res.at("results")) {
        auto i = r.at("index").get<std::size_t>();
        if (i >= out.size()) throw ProviderError(name(), "result index out of range");
        out[i] = r.at("relevance_score").get<double>();
        seen[i] = true;
      }
    } catch (const nlohmann::json::exception& e) {
      throw ProviderError(name(), std::string("malformed rerank response: ") + e.what());
    }
    for (bool s : seen) {
      if (!s) throw ProviderError(name(), "response omits some candidates");
    }
    return out;
  }

 private:
  JsonEndpoint endpoint_;
};

namespace http_detail {

template <typename T>
std::pair<std::vector<std::string>, std::vector<T>> parallel_arrays(const nlohmann::json& j,
                                                                    const char* texts,
                                                                    const char* values,
                                                                    const std::string& who) {
  try {
    auto a = j.at(texts).get<std::vector<std::string>>();
    auto b = j.at(values).get<std::vector<T>>();
    if (a.size() != b.size()) throw ProviderError(who, "reply arrays differ in length");
    return {std::move(a), std::move(b)};
  } catch (const nlohmann::json::exception& e) {
    throw ProviderError(who, std::string("reply has unexpected shape: ") + e.what());
  }
}

}  // namespace http_detail

class HttpKeywordExtractor final : public KeywordExtractor {
 public:
  explicit HttpKeywordExtractor(ProviderConfig config)
      : endpoint_("http-keywords(" + config.model + ")", std::move(config)) {}

  std::string name() const override { return endpoint_.name(); }

  std::vector<ScoredPhrase> extract(const QueryInput& query) const override {
    auto reply = endpoint_.chat_json(prompts::kKeywordSystem, query.text);
    auto [texts, scores] =
        http_detail::parallel_arrays<double>(reply, "keywords", "scores", name());
    std::vector<ScoredPhrase> out;
    for (std::size_t i = 0; i < texts.size(); ++i) out.push_back({texts[i], scores[i]});
    return out;
  }

 private:
  JsonEndpoint endpoint_;
};

class HttpTitleExtractor final : public TitleExtractor {
 public:
  explicit HttpTitleExtractor(ProviderConfig config)
      : endpoint_("http-titles(" + config.model + ")", std::move(config)) {}

  std::string name() const override { return endpoint_.name(); }

  std::vector<ExtractedTitle> extract(const QueryInput& query) const override {
    std::string user = query.text;
    if (!query.reference_titles.empty()) {
      user += "\n\nReference list:\n";
      for (const auto& t : query.reference_titles) user += "- " + t + "\n";
    }
    auto reply = endpoint_.chat_json(prompts::kTitleSystem, user);
    auto [texts, conf] =
        http_detail::parallel_arrays<double>(reply, "titles", "confidences", name());
    std::vector<ExtractedTitle> out;
    for (std::size_t i = 0; i < texts.size(); ++i) out.push_back({texts[i], conf[i]});
    return out;
  }

 private:
  JsonEndpoint endpoint_;
};

}  // namespace hetkg
