#include <gtest/gtest.h>

#include "test_support.hpp"

using namespace hetkg;
using namespace hetkg::testing;

namespace {

class FixedReranker final : public Reranker {
 public:
  explicit FixedReranker(std::vector<double> raw) : raw_(std::move(raw)) {}
  std::string name() const override { return "fixed"; }
  std::vector<double> score(std::string_view, std::span<const RerankCandidate>) const override {
    return raw_;
  }

 private:
  std::vector<double> raw_;
};

auto by_index = [](NodeIndex a, NodeIndex b) { return a < b; };

}  // namespace

TEST(HashingEmbedder, DeterministicUnitNorm) {
  HashingEmbedder e(256);
  auto a = e.embed("Graph neural networks");
  auto b = e.embed("graph   NEURAL networks");
  EXPECT_EQ(a.values, b.values);
  long double sq = 0;
  for (float x : a.values) sq += static_cast<long double>(x) * x;
  EXPECT_NEAR(static_cast<double>(sq), 1.0, 1e-6);
  EXPECT_NEAR(cosine(a, a), 1.0, 1e-6);
  EXPECT_THROW(e.embed("   "), Error);
  EXPECT_THROW(HashingEmbedder(0), ConfigError);
}

TEST(HashingEmbedder, SimilarTextsCloserThanUnrelated) {
  HashingEmbedder e(1024);
  auto q = e.embed("graph neural networks for molecules");
  double near = cosine(q, e.embed("graph neural network for molecule"));
  double far = cosine(q, e.embed("quantum chromodynamics lattice"));
  EXPECT_GT(near, far);
  EXPECT_GE(far, -1.0);
  EXPECT_LE(near, 1.0);
}

TEST(Cosine, MatchesLongDoubleReference) {
  std::mt19937_64 rng(3);
  std::normal_distribution<float> d;
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<float> a(97), b(97);
    for (auto& x : a) x = d(rng);
    for (auto& x : b) x = d(rng);
    l2_normalize(a);
    l2_normalize(b);
    long double ref = 0;
    for (std::size_t i = 0; i < a.size(); ++i) ref += static_cast<long double>(a[i]) * b[i];
    EXPECT_NEAR(cosine(a, b), static_cast<double>(ref), 1e-12);
  }
  EXPECT_THROW(cosine(basis(3, 0), basis(4, 0)), DimensionMismatch);
}

TEST(MinMax, RangeAndDegenerateCases) {
  std::vector<double> xs = {2.0, 4.0, 3.0};
  EXPECT_EQ(minmax_normalize(xs), (std::vector<double>{0.0, 1.0, 0.5}));
  std::vector<double> same = {0.7, 0.7};
  EXPECT_EQ(minmax_normalize(same), (std::vector<double>{1.0, 1.0}));
  std::vector<double> zeros = {0.0, 0.0};
  EXPECT_EQ(minmax_normalize(zeros), (std::vector<double>{0.0, 0.0}));
  EXPECT_TRUE(minmax_normalize(std::vector<double>{}).empty());
}

TEST(Rerank, SingletonScoresOne) {
  std::vector<RerankCandidate> c = {{NodeIndex{4}, "t", "a"}};
  auto out = rerank(FixedReranker({-0.3}), "q", c, by_index);
  ASSERT_EQ(out.size(), 1u);
  EXPECT_DOUBLE_EQ(out[0].score, 1.0);
}

TEST(Rerank, OrdersByNormalizedScoreThenId) {
  std::vector<RerankCandidate> c = {
      {NodeIndex{3}, "t3", ""}, {NodeIndex{1}, "t1", ""}, {NodeIndex{2}, "t2", ""}};
  auto out = rerank(FixedReranker({0.5, 0.9, 0.5}), "q", c, by_index);
  ASSERT_EQ(out.size(), 3u);
  EXPECT_EQ(out[0].node, NodeIndex{1});
  EXPECT_DOUBLE_EQ(out[0].score, 1.0);
  EXPECT_EQ(out[1].node, NodeIndex{2});
  EXPECT_EQ(out[2].node, NodeIndex{3});
  EXPECT_DOUBLE_EQ(out[2].score, 0.0);
}

TEST(Rerank, BadProviderOutputThrows) {
  std::vector<RerankCandidate> c = {{NodeIndex{0}, "a", ""}, {NodeIndex{1}, "b", ""}};
  EXPECT_THROW(rerank(FixedReranker({0.1}), "q", c, by_index), ProviderError);
  EXPECT_THROW(rerank(FixedReranker({0.1, NAN}), "q", c, by_index), ProviderError);
  EXPECT_THROW(rerank(FixedReranker({}), "q", std::span<const RerankCandidate>{}, by_index), Error);
}

TEST(Rerank, EmbeddingRerankerPrefersIdenticalAbstract) {
  auto e = std::make_shared<HashingEmbedder>(512);
  EmbeddingReranker r(e);
  std::string query = "sparse attention for long documents";
  std::vector<RerankCandidate> c = {
      {NodeIndex{0}, "Other", "protein folding with diffusion models"},
      {NodeIndex{1}, "Same", query},
      {NodeIndex{2}, "Title only sparse attention", ""}};
  auto out = rerank(r, query, c, by_index);
  EXPECT_EQ(out[0].node, NodeIndex{1});
  EXPECT_DOUBLE_EQ(out[0].score, 1.0);
  auto raw = r.score(query, c);
  EXPECT_NEAR(raw[1], 1.0, 1e-6);
}
