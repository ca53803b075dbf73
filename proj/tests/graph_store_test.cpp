#include <gtest/gtest.h>

#include "test_support.hpp"

using namespace hetkg;
using namespace hetkg::testing;

TEST(GraphStore, AddAndFindNodes) {
  PropertyGraph g(4);
  NodeIndex p = g.add_node(paper("P1", "Graph Neural Networks"));
  NodeIndex a = g.add_node(author("A1", "Ada Lovelace"));
  EXPECT_EQ(g.at("P1"), p);
  EXPECT_EQ(g.kind(a), NodeKind::Author);
  EXPECT_EQ(g.paper(p).title_normalized, "graph neural networks");
  EXPECT_FALSE(g.find("missing"));
  EXPECT_THROW(g.at("missing"), NotFoundError);
  EXPECT_THROW(g.author(p), SchemaError);
}

TEST(GraphStore, DuplicateIdRejected) {
  PropertyGraph g(4);
  g.add_node(paper("P1", "First"));
  EXPECT_THROW(g.add_node(author("P1", "Someone")), DuplicateIdError);
  EXPECT_EQ(g.node_count(), 1u);
}

TEST(GraphStore, EmbeddingDimensionChecked) {
  PropertyGraph g(1024);
  EXPECT_THROW(g.add_node(paper("P1", "Short vector", 0, std::vector<float>(1023, 0.1f))),
               SchemaError);
  EXPECT_EQ(g.node_count(), 0u);
  EXPECT_THROW(g.add_node(paper("P2", "Zero vector", 0, std::vector<float>(1024, 0.0f))),
               SchemaError);
}

TEST(GraphStore, EmbeddingsNormalizedOnInsert) {
  PropertyGraph g(3);
  NodeIndex p = g.add_node(paper("P1", "Scaled", 0, {3.0f, 4.0f, 0.0f}));
  auto v = g.embedding(VectorField::PaperTitle, p);
  ASSERT_TRUE(v);
  EXPECT_NEAR((*v)[0], 0.6f, 1e-7);
  EXPECT_NEAR((*v)[1], 0.8f, 1e-7);
  EXPECT_FALSE(g.embedding(VectorField::PaperAbstract, p));
}

TEST(GraphStore, UnitVectorsStoredBitForBit) {
  std::mt19937_64 rng(5);
  std::normal_distribution<float> d;
  std::vector<float> v(64);
  for (auto& x : v) x = d(rng);
  l2_normalize(v);
  std::vector<float> copy = v;
  l2_normalize(copy);
  EXPECT_EQ(copy, v);
}

TEST(GraphStore, EdgeSchema) {
  PropertyGraph g(4);
  g.add_node(paper("P1", "One"));
  g.add_node(paper("P2", "Two"));
  g.add_node(author("A1", "Ann"));
  g.add_node(author("A2", "Bob"));
  g.add_node(keyword("K1", "graphs"));
  EXPECT_NO_THROW(g.add_edge("P1", "P2", EdgeKind::CITES));
  EXPECT_THROW(g.add_edge("P1", "A1", EdgeKind::CITES), SchemaError);
  EXPECT_THROW(g.add_edge("A1", "A2", EdgeKind::COAUTHOR), SchemaError);
  EXPECT_NO_THROW(g.add_edge("A1", "A2", EdgeKind::COAUTHOR, 2));
  EXPECT_THROW(g.add_edge("P1", "P1", EdgeKind::CITES), SchemaError);
  EXPECT_THROW(g.add_edge("P1", "P2", EdgeKind::CITES), SchemaError);  // duplicate
  EXPECT_THROW(g.add_edge("P1", "K1", EdgeKind::HAS_KEYWORD), SchemaError);
  EXPECT_THROW(g.add_edge("P1", "K1", EdgeKind::HAS_KEYWORD, std::nullopt, 1.5), SchemaError);
  EXPECT_NO_THROW(g.add_edge("P1", "K1", EdgeKind::HAS_KEYWORD, std::nullopt, 0.5));
  EXPECT_THROW(g.add_edge("P2", "P1", EdgeKind::RELATED_TO, 3), SchemaError);
  EXPECT_THROW(g.add_edge("A1", "P1", EdgeKind::AUTHORED, std::nullopt, 0.3), SchemaError);
  EXPECT_NO_THROW(g.add_edge("A1", "P1", EdgeKind::AUTHORED, std::nullopt, std::nullopt, 1));
  EXPECT_EQ(g.edge_count(), 4u);
}

TEST(GraphStore, FreezeFinalizesCountsAndRejectsMutation) {
  PropertyGraph g(4);
  g.add_node(paper("P1", "One"));
  g.add_node(paper("P2", "Two"));
  g.add_node(keyword("K1", "graphs"));
  g.add_node(author("A1", "Ann"));
  g.add_edge("P1", "K1", EdgeKind::HAS_KEYWORD, std::nullopt, 0.5);
  g.add_edge("P2", "K1", EdgeKind::HAS_KEYWORD, std::nullopt, 0.7);
  g.add_edge("A1", "P2", EdgeKind::AUTHORED);
  g.freeze();
  EXPECT_EQ(g.keyword(g.at("K1")).frequency, 2u);
  EXPECT_EQ(g.author(g.at("A1")).works_count, 1u);
  EXPECT_THROW(g.add_node(paper("P3", "Three")), FrozenGraphError);
  EXPECT_THROW(g.add_edge("P1", "P2", EdgeKind::CITES), FrozenGraphError);

  GraphHandle empty = freeze(PropertyGraph(4));
  EXPECT_EQ(empty->node_count(), 0u);
}

TEST(GraphStore, ExactLookupNormalizes) {
  PropertyGraph g(4);
  g.add_node(paper("P2", "Graph  Neural\tNetworks"));
  g.add_node(paper("P1", "graph neural networks"));
  g.add_node(keyword("K1", "Caf\xC3\xA9"));  // precomposed
  auto hits = g.lookup_exact(NodeKind::Paper, "graph neural networks");
  ASSERT_EQ(hits.size(), 2u);
  EXPECT_EQ(g.id(hits[0]), "P1");
  EXPECT_EQ(g.id(hits[1]), "P2");
  EXPECT_TRUE(g.lookup_exact(NodeKind::Paper, "nothing").empty());
  // Decomposed e + combining acute normalizes to the same key.
  EXPECT_EQ(g.lookup_exact(NodeKind::Keyword, normalize_text("Cafe\xCC\x81")).size(), 1u);
  EXPECT_THROW(g.lookup_exact(NodeKind::Author, "x"), SchemaError);
}

TEST(GraphStore, TitleKeyIsLettersOnly) {
  PropertyGraph g(4);
  NodeIndex p = g.add_node(paper("P1", "Attention Is All You Need!"));
  EXPECT_EQ(g.title_key(p), "attention is all you need");
  EXPECT_EQ(g.lookup_title_key("attention is all you need").size(), 1u);
  EXPECT_EQ(g.title_token_postings("attention").size(), 1u);
  EXPECT_TRUE(g.title_token_postings("transformer").empty());
}

TEST(GraphStore, NeighborsCapPerKind) {
  PropertyGraph g(4);
  g.add_node(keyword("K0", "hub"));
  for (int i = 0; i < 600; ++i) {
    char id[16];
    std::snprintf(id, sizeof id, "P%04d", i);
    g.add_node(paper(id, std::string("Paper ") + id));
    g.add_edge(id, "K0", EdgeKind::HAS_KEYWORD, std::nullopt, (i % 10) / 10.0);
  }
  g.add_node(paper("Q1", "Lonely"));
  g.freeze();
  auto first = g.neighbors(g.at("K0"), 500);
  auto second = g.neighbors(g.at("K0"), 500);
  ASSERT_EQ(first.size(), 500u);
  for (std::size_t i = 0; i < first.size(); ++i) EXPECT_EQ(first[i].node, second[i].node);
  // The dropped 100 are the weakest: all 60 zero-relevance edges among them.
  for (const auto& n : first) EXPECT_GT(g.edge(n.edge).relevance_score.value(), 0.0);
  EXPECT_TRUE(g.neighbors(g.at("Q1"), 500).empty());
  EXPECT_THROW(g.neighbors(g.at("Q1"), 0), SchemaError);
}

TEST(GraphStore, NeighborsUnderCapReturnsAll) {
  PropertyGraph g(4);
  g.add_node(paper("P0", "Center"));
  for (const char* id : {"P1", "P2", "P3"}) {
    g.add_node(paper(id, std::string("Leaf ") + id));
    g.add_edge("P0", id, EdgeKind::CITES);
  }
  EXPECT_EQ(g.neighbors(g.at("P0"), 500).size(), 3u);
}

TEST(GraphStore, VectorSearchMatchesExhaustiveScan) {
  const std::size_t dim = 16;
  std::mt19937_64 rng(11);
  std::normal_distribution<double> d;
  PropertyGraph g(dim);
  std::vector<std::vector<float>> stored;
  for (int i = 0; i < 50; ++i) {
    std::vector<float> v(dim);
    for (auto& x : v) x = static_cast<float>(d(rng));
    char id[16];
    std::snprintf(id, sizeof id, "K%03d", i);
    g.add_node(keyword(id, std::string("kw ") + id, v));
    auto sv = *g.embedding(VectorField::KeywordText, g.at(id));
    stored.emplace_back(sv.begin(), sv.end());
  }
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<float> q(dim);
    for (auto& x : q) x = static_cast<float>(d(rng));
    l2_normalize(q);
    std::vector<std::pair<long double, int>> oracle;
    for (int i = 0; i < 50; ++i) {
      long double dot = 0;
      for (std::size_t j = 0; j < dim; ++j) dot += static_cast<long double>(stored[i][j]) * q[j];
      oracle.push_back({-dot, i});
    }
    std::sort(oracle.begin(), oracle.end());
    auto hits = g.vector_search(VectorField::KeywordText, q, 3);
    ASSERT_EQ(hits.size(), 3u);
    for (int r = 0; r < 3; ++r) {
      EXPECT_EQ(hits[r].node.value, static_cast<std::uint32_t>(oracle[r].second));
      EXPECT_NEAR(hits[r].score, static_cast<double>(-oracle[r].first), 1e-9);
    }
  }
}

TEST(GraphStore, VectorSearchIdentityAndOrthogonal) {
  PropertyGraph g(4);
  g.add_node(keyword("K1", "one", basis(4, 0)));
  g.add_node(keyword("K2", "two", basis(4, 1)));
  auto hits = g.vector_search(VectorField::KeywordText, basis(4, 0), 10);
  ASSERT_EQ(hits.size(), 2u);
  EXPECT_EQ(g.id(hits[0].node), "K1");
  EXPECT_NEAR(hits[0].score, 1.0, 1e-6);
  EXPECT_NEAR(hits[1].score, 0.0, 1e-12);
  EXPECT_THROW(g.vector_search(VectorField::KeywordText, basis(3, 0), 1), DimensionMismatch);
}

TEST(GraphStore, VectorSearchTiesByIdAscending) {
  PropertyGraph g(4);
  g.add_node(keyword("K9", "nine", basis(4, 0)));
  g.add_node(keyword("K1", "one", basis(4, 0)));
  auto hits = g.vector_search(VectorField::KeywordText, basis(4, 0), 2);
  EXPECT_EQ(g.id(hits[0].node), "K1");
  EXPECT_EQ(g.id(hits[1].node), "K9");
}
