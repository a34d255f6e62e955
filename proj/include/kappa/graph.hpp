#ifndef KAPPA_GRAPH_HPP
#define KAPPA_GRAPH_HPP

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace kappa {

/// Dense 1-based vertex identifier.
using Vertex = int;

/// Undirected edge in canonical form (u < v).
struct Edge {
  Vertex u = 0;
  Vertex v = 0;

  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

enum class GraphErrc {
  MalformedDocument,
  PinsNotIndependent,
  DuplicateEdge,
  SelfLoop,
  UnknownVertex,
  InvalidSubset,
};

const char* to_string(GraphErrc code);

class GraphError : public std::runtime_error {
 public:
  GraphError(GraphErrc code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  GraphErrc code() const noexcept { return code_; }

 private:
  GraphErrc code_;
};

struct Violation {
  GraphErrc code;
  std::string message;
  Edge edge;  // offending edge as given; {0,0} when not edge-specific
};

using ValidationReport = std::vector<Violation>;

/// Unvalidated graph description, exactly as read from a document. Edges keep
/// their input orientation so violations can be reported verbatim.
struct GraphDocument {
  int vertex_count = 0;
  std::vector<std::string> labels;  // empty, or one per vertex
  std::vector<std::pair<Vertex, Vertex>> edges;
  std::vector<Vertex> pins;
};

/// Lists every violated invariant of the pinned-graph model; empty iff valid.
ValidationReport validate(const GraphDocument& doc);

/// Sorted set of vertex identifiers.
class VertexSet {
 public:
  VertexSet() = default;
  VertexSet(std::initializer_list<Vertex> vs);
  explicit VertexSet(std::vector<Vertex> vs);

  bool contains(Vertex v) const;
  std::size_t size() const { return items_.size(); }
  bool empty() const { return items_.empty(); }
  auto begin() const { return items_.begin(); }
  auto end() const { return items_.end(); }
  const std::vector<Vertex>& items() const { return items_; }

  friend bool operator==(const VertexSet&, const VertexSet&) = default;

 private:
  std::vector<Vertex> items_;
};

/// Immutable simple undirected graph with an independent pin set.
///
/// Vertices are 1..n. Edges are stored canonically (u < v) in lexicographic
/// order; adjacency is kept in CSR form with sorted neighbour lists. Pins keep
/// the order in which they were given.
class PinnedGraph {
 public:
  PinnedGraph() = default;

  /// Throws GraphError with the first violation found.
  static PinnedGraph from_document(const GraphDocument& doc);
  static PinnedGraph make(int vertex_count,
                          const std::vector<std::pair<Vertex, Vertex>>& edges,
                          const std::vector<Vertex>& pins = {},
                          std::vector<std::string> labels = {});

  int vertex_count() const { return n_; }
  std::size_t edge_count() const { return edges_.size(); }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<Vertex>& pins() const { return pins_; }
  std::size_t pin_count() const { return pins_.size(); }
  std::size_t unpinned_count() const {
    return static_cast<std::size_t>(n_) - pins_.size();
  }

  bool has_vertex(Vertex v) const { return v >= 1 && v <= n_; }
  bool is_pin(Vertex v) const;
  bool adjacent(Vertex a, Vertex b) const;

  int degree(Vertex v) const;
  std::span<const Vertex> neighbors(Vertex v) const;
  int max_degree() const;

  bool has_labels() const { return !labels_.empty(); }
  const std::vector<std::string>& labels() const { return labels_; }
  /// Explicit label, or "v<id>" when the graph has none.
  std::string label(Vertex v) const;

  GraphDocument to_document() const;

  friend bool operator==(const PinnedGraph& a, const PinnedGraph& b) {
    return a.n_ == b.n_ && a.edges_ == b.edges_ && a.pins_ == b.pins_;
  }

 private:
  void check_vertex(Vertex v) const;

  int n_ = 0;
  std::vector<Edge> edges_;
  std::vector<Vertex> pins_;
  std::vector<std::uint8_t> pin_mask_;  // index v
  std::vector<std::size_t> offsets_;    // size n+2, index v
  std::vector<Vertex> adjacency_;
  std::vector<std::string> labels_;
};

/// Induced subgraph on `keep`, renumbered 1..|keep| in increasing order of
/// the original ids; `origin[i-1]` is the original id of new vertex i.
struct Subgraph {
  PinnedGraph graph;
  std::vector<Vertex> origin;
};

Subgraph extract_subgraph(const PinnedGraph& g, const VertexSet& keep,
                          const VertexSet& keep_pins);

/// Pinned subgraph: induced on `keep`, pins restricted to `keep_pins`.
/// Requires keep ⊆ V(g) and keep_pins ⊆ pins(g) ∩ keep.
PinnedGraph induced_pinned_subgraph(const PinnedGraph& g, const VertexSet& keep,
                                    const VertexSet& keep_pins);

VertexSet all_vertices(const PinnedGraph& g);
VertexSet pin_set(const PinnedGraph& g);

/// Same graph, different pins. Throws if the new pins are not independent.
PinnedGraph with_pins(const PinnedGraph& g, const std::vector<Vertex>& pins);

}  // namespace kappa

#endif  // KAPPA_GRAPH_HPP
