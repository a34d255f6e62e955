#include <algorithm>
#include <random>

#include <gtest/gtest.h>

#include "kappa/graph.hpp"
#include "kappa/graph_io.hpp"
#include "support/oracles.hpp"

namespace kappa {
namespace {

GraphErrc first_code(const GraphDocument& doc) {
  const ValidationReport report = validate(doc);
  EXPECT_FALSE(report.empty());
  return report.empty() ? GraphErrc::MalformedDocument : report.front().code;
}

TEST(Validate, AcceptsTriangleWithOnePin) {
  GraphDocument doc{3, {}, {{1, 2}, {2, 3}, {1, 3}}, {1}};
  EXPECT_TRUE(validate(doc).empty());
}

TEST(Validate, RejectsAdjacentPins) {
  GraphDocument doc{3, {}, {{1, 2}, {2, 3}}, {1, 2}};
  const ValidationReport report = validate(doc);
  ASSERT_EQ(report.size(), 1u);
  EXPECT_EQ(report[0].code, GraphErrc::PinsNotIndependent);
  EXPECT_EQ(report[0].edge, (Edge{1, 2}));
}

TEST(Validate, RejectsSelfLoopDuplicateAndUnknownVertex) {
  EXPECT_EQ(first_code({3, {}, {{2, 2}}, {}}), GraphErrc::SelfLoop);
  EXPECT_EQ(first_code({3, {}, {{1, 2}, {2, 1}}, {}}), GraphErrc::DuplicateEdge);
  EXPECT_EQ(first_code({3, {}, {{1, 4}}, {}}), GraphErrc::UnknownVertex);
  EXPECT_EQ(first_code({3, {}, {}, {0}}), GraphErrc::UnknownVertex);
}

TEST(Validate, ReportsEveryViolation) {
  GraphDocument doc{4, {}, {{1, 2}, {3, 3}, {2, 1}, {1, 3}}, {1, 2, 3}};
  const ValidationReport report = validate(doc);
  std::vector<GraphErrc> codes;
  for (const Violation& v : report) codes.push_back(v.code);
  EXPECT_NE(std::find(codes.begin(), codes.end(), GraphErrc::SelfLoop), codes.end());
  EXPECT_NE(std::find(codes.begin(), codes.end(), GraphErrc::DuplicateEdge), codes.end());
  EXPECT_EQ(std::count(codes.begin(), codes.end(), GraphErrc::PinsNotIndependent), 2);
}

TEST(PinnedGraph, FromDocumentThrowsFirstViolation) {
  try {
    PinnedGraph::from_document({2, {}, {{1, 2}}, {1, 2}});
    FAIL() << "expected GraphError";
  } catch (const GraphError& e) {
    EXPECT_EQ(e.code(), GraphErrc::PinsNotIndependent);
  }
}

TEST(PinnedGraph, CanonicalEdgesAndSortedNeighbours) {
  const PinnedGraph g = PinnedGraph::make(5, {{5, 1}, {3, 2}, {1, 3}, {4, 1}}, {2, 4});
  const std::vector<Edge> expected{{1, 3}, {1, 4}, {1, 5}, {2, 3}};
  EXPECT_EQ(g.edges(), expected);
  const auto n1 = g.neighbors(1);
  EXPECT_EQ(std::vector<Vertex>(n1.begin(), n1.end()), (std::vector<Vertex>{3, 4, 5}));
  EXPECT_EQ(g.degree(1), 3);
  EXPECT_EQ(g.degree(2), 1);
  EXPECT_EQ(g.max_degree(), 3);
  EXPECT_EQ(g.pins(), (std::vector<Vertex>{2, 4}));
  EXPECT_TRUE(g.is_pin(4));
  EXPECT_FALSE(g.is_pin(1));
  EXPECT_TRUE(g.adjacent(3, 1));
  EXPECT_FALSE(g.adjacent(2, 4));
  EXPECT_EQ(g.unpinned_count(), 3u);
  EXPECT_EQ(g.label(3), "v3");
}

TEST(PinnedGraph, AdjacencyAgreesWithEdgeListOnRandomGraphs) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    const PinnedGraph g = testing::random_pinned_graph(rng, 1 + trial % 12, 0.4, 0.3);
    const testing::Matrix adj = testing::adjacency_matrix(g);
    std::size_t degree_sum = 0;
    for (Vertex v = 1; v <= g.vertex_count(); ++v) {
      const auto ns = g.neighbors(v);
      EXPECT_TRUE(std::is_sorted(ns.begin(), ns.end()));
      degree_sum += ns.size();
      for (Vertex w = 1; w <= g.vertex_count(); ++w) {
        EXPECT_EQ(g.adjacent(v, w), static_cast<bool>(adj[v][w]));
        EXPECT_EQ(std::count(ns.begin(), ns.end(), w), adj[v][w] ? 1 : 0);
      }
    }
    EXPECT_EQ(degree_sum, 2 * g.edge_count());
  }
}

TEST(GraphIo, EdgeListAndJsonAgree) {
  const PinnedGraph a = parse_graph("# triangle\n3\n1 2\n2 3\n1 3\npins: 1\n");
  const PinnedGraph b = parse_graph(R"({"vertices": 3, "edges": [[1,2],[2,3],[3,1]], "pins": [1]})");
  EXPECT_EQ(a, b);
  EXPECT_EQ(a.edge_count(), 3u);
}

TEST(GraphIo, LabelsRoundTrip) {
  const PinnedGraph g =
      parse_graph(R"({"vertices": ["a", "b", "c"], "edges": [[1,2]], "pins": [3]})");
  EXPECT_EQ(g.label(1), "a");
  EXPECT_EQ(parse_graph(serialize_graph(g)), g);
  EXPECT_EQ(parse_graph(serialize_graph(g)).labels(), g.labels());
}

TEST(GraphIo, SerializationIsCanonical) {
  const PinnedGraph g = PinnedGraph::make(4, {{4, 3}, {2, 1}, {3, 1}}, {4, 2});
  EXPECT_EQ(serialize_graph(g), R"({"edges":[[1,2],[1,3],[3,4]],"pins":[4,2],"vertices":4})");
}

TEST(GraphIo, MalformedInputThrows) {
  for (const char* text : {"", "x", "3\n1\n", "{\"edges\": []}", "{\"vertices\": 2, \"edges\": [[1]]}",
                           "2\n1 2\npins: a\n"}) {
    try {
      parse_document(text);
      ADD_FAILURE() << "accepted: " << text;
    } catch (const GraphError& e) {
      EXPECT_EQ(e.code(), GraphErrc::MalformedDocument) << text;
    }
  }
}

TEST(GraphIo, GalleryFilesLoad) {
  for (const auto& entry : std::filesystem::directory_iterator(testing::gallery_dir())) {
    EXPECT_NO_THROW(load_graph(entry.path())) << entry.path();
  }
}

TEST(Subgraph, ExtractRenumbersAndKeepsPins) {
  const PinnedGraph g = testing::gallery("cycle7");
  const Subgraph s = extract_subgraph(g, VertexSet{1, 4, 2, 5}, VertexSet{1, 2});
  EXPECT_EQ(s.origin, (std::vector<Vertex>{1, 2, 4, 5}));
  EXPECT_EQ(s.graph.vertex_count(), 4);
  // 1-4, 4-2, 5-1 survive; 1 and 2 stay pins.
  EXPECT_EQ(s.graph.edge_count(), 3u);
  EXPECT_EQ(s.graph.pins(), (std::vector<Vertex>{1, 2}));
  EXPECT_THROW(extract_subgraph(g, VertexSet{1, 4}, VertexSet{2}), GraphError);
}

TEST(Subgraph, InducedSubgraphEdgesMatchOracle) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    const PinnedGraph g = testing::random_pinned_graph(rng, 9, 0.5, 0.3);
    std::vector<Vertex> keep;
    for (Vertex v = 1; v <= g.vertex_count(); ++v) {
      if (rng() % 2) keep.push_back(v);
    }
    const Subgraph s = extract_subgraph(g, VertexSet(keep), VertexSet{});
    std::size_t expected = 0;
    for (const Edge& e : g.edges()) {
      expected += (std::count(keep.begin(), keep.end(), e.u) && std::count(keep.begin(), keep.end(), e.v));
    }
    EXPECT_EQ(s.graph.edge_count(), expected);
    for (const Edge& e : s.graph.edges()) EXPECT_TRUE(g.adjacent(s.origin[e.u - 1], s.origin[e.v - 1]));
  }
}

}  // namespace
}  // namespace kappa
