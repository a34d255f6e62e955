#include "kappa/graph.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

namespace kappa {

const char* to_string(GraphErrc code) {
  switch (code) {
    case GraphErrc::MalformedDocument: return "MalformedDocument";
    case GraphErrc::PinsNotIndependent: return "PinsNotIndependent";
    case GraphErrc::DuplicateEdge: return "DuplicateEdge";
    case GraphErrc::SelfLoop: return "SelfLoop";
    case GraphErrc::UnknownVertex: return "UnknownVertex";
    case GraphErrc::InvalidSubset: return "InvalidSubset";
  }
  return "Unknown";
}

namespace {

std::string edge_text(Vertex a, Vertex b) {
  std::ostringstream os;
  os << "(" << a << "," << b << ")";
  return os.str();
}

Edge canonical(Vertex a, Vertex b) { return a < b ? Edge{a, b} : Edge{b, a}; }

}  // namespace

ValidationReport validate(const GraphDocument& doc) {
  ValidationReport report;
  const int n = doc.vertex_count;
  if (n < 0) {
    report.push_back({GraphErrc::MalformedDocument, "negative vertex count", {}});
    return report;
  }
  if (!doc.labels.empty() && static_cast<int>(doc.labels.size()) != n) {
    report.push_back({GraphErrc::MalformedDocument,
                      "label list length does not match vertex count", {}});
  }
  auto in_range = [n](Vertex v) { return v >= 1 && v <= n; };

  std::set<Edge> seen;
  for (const auto& [a, b] : doc.edges) {
    if (!in_range(a) || !in_range(b)) {
      report.push_back({GraphErrc::UnknownVertex,
                        "edge " + edge_text(a, b) + " has an endpoint outside 1.." +
                            std::to_string(n),
                        Edge{a, b}});
      continue;
    }
    if (a == b) {
      report.push_back(
          {GraphErrc::SelfLoop, "self-loop at vertex " + std::to_string(a), Edge{a, b}});
      continue;
    }
    if (!seen.insert(canonical(a, b)).second) {
      report.push_back({GraphErrc::DuplicateEdge,
                        "duplicate edge " + edge_text(a, b), canonical(a, b)});
    }
  }

  std::vector<std::uint8_t> pinned(static_cast<std::size_t>(n) + 1, 0);
  for (Vertex p : doc.pins) {
    if (!in_range(p)) {
      report.push_back(
          {GraphErrc::UnknownVertex, "pin " + std::to_string(p) + " is not a vertex", {}});
      continue;
    }
    if (pinned[p]) {
      report.push_back(
          {GraphErrc::MalformedDocument, "pin " + std::to_string(p) + " listed twice", {}});
    }
    pinned[p] = 1;
  }
  for (const Edge& e : seen) {
    if (pinned[e.u] && pinned[e.v]) {
      report.push_back({GraphErrc::PinsNotIndependent,
                        "edge " + edge_text(e.u, e.v) + " joins two pins", e});
    }
  }
  return report;
}

VertexSet::VertexSet(std::initializer_list<Vertex> vs) : VertexSet(std::vector<Vertex>(vs)) {}

VertexSet::VertexSet(std::vector<Vertex> vs) : items_(std::move(vs)) {
  std::sort(items_.begin(), items_.end());
  items_.erase(std::unique(items_.begin(), items_.end()), items_.end());
}

bool VertexSet::contains(Vertex v) const {
  return std::binary_search(items_.begin(), items_.end(), v);
}

PinnedGraph PinnedGraph::from_document(const GraphDocument& doc) {
  if (auto report = validate(doc); !report.empty()) {
    throw GraphError(report.front().code, report.front().message);
  }
  PinnedGraph g;
  g.n_ = doc.vertex_count;
  g.labels_ = doc.labels;
  g.pins_ = doc.pins;
  g.pin_mask_.assign(static_cast<std::size_t>(g.n_) + 1, 0);
  for (Vertex p : g.pins_) g.pin_mask_[p] = 1;

  g.edges_.reserve(doc.edges.size());
  for (const auto& [a, b] : doc.edges) g.edges_.push_back(canonical(a, b));
  std::sort(g.edges_.begin(), g.edges_.end());

  std::vector<std::size_t> deg(static_cast<std::size_t>(g.n_) + 2, 0);
  for (const Edge& e : g.edges_) {
    ++deg[e.u];
    ++deg[e.v];
  }
  g.offsets_.assign(static_cast<std::size_t>(g.n_) + 2, 0);
  for (int v = 1; v <= g.n_; ++v) g.offsets_[v + 1] = g.offsets_[v] + deg[v];
  g.adjacency_.resize(2 * g.edges_.size());
  std::vector<std::size_t> fill(g.offsets_.begin(), g.offsets_.end());
  // Smaller neighbours first, then larger; lexicographic edge order keeps
  // both runs increasing, so each list comes out sorted.
  for (const Edge& e : g.edges_) g.adjacency_[fill[e.v]++] = e.u;
  for (const Edge& e : g.edges_) g.adjacency_[fill[e.u]++] = e.v;
  return g;
}

PinnedGraph PinnedGraph::make(int vertex_count,
                              const std::vector<std::pair<Vertex, Vertex>>& edges,
                              const std::vector<Vertex>& pins,
                              std::vector<std::string> labels) {
  GraphDocument doc;
  doc.vertex_count = vertex_count;
  doc.edges = edges;
  doc.pins = pins;
  doc.labels = std::move(labels);
  return from_document(doc);
}

void PinnedGraph::check_vertex(Vertex v) const {
  if (!has_vertex(v)) {
    throw GraphError(GraphErrc::UnknownVertex,
                     "vertex " + std::to_string(v) + " is not in 1.." + std::to_string(n_));
  }
}

bool PinnedGraph::is_pin(Vertex v) const {
  check_vertex(v);
  return pin_mask_[v] != 0;
}

bool PinnedGraph::adjacent(Vertex a, Vertex b) const {
  auto nb = neighbors(a);
  check_vertex(b);
  return std::binary_search(nb.begin(), nb.end(), b);
}

int PinnedGraph::degree(Vertex v) const {
  check_vertex(v);
  return static_cast<int>(offsets_[v + 1] - offsets_[v]);
}

std::span<const Vertex> PinnedGraph::neighbors(Vertex v) const {
  check_vertex(v);
  return {adjacency_.data() + offsets_[v], offsets_[v + 1] - offsets_[v]};
}

int PinnedGraph::max_degree() const {
  int best = 0;
  for (int v = 1; v <= n_; ++v) {
    best = std::max(best, static_cast<int>(offsets_[v + 1] - offsets_[v]));
  }
  return best;
}

std::string PinnedGraph::label(Vertex v) const {
  check_vertex(v);
  if (!labels_.empty()) return labels_[v - 1];
  return "v" + std::to_string(v);
}

GraphDocument PinnedGraph::to_document() const {
  GraphDocument doc;
  doc.vertex_count = n_;
  doc.labels = labels_;
  doc.pins = pins_;
  doc.edges.reserve(edges_.size());
  for (const Edge& e : edges_) doc.edges.emplace_back(e.u, e.v);
  return doc;
}

Subgraph extract_subgraph(const PinnedGraph& g, const VertexSet& keep,
                          const VertexSet& keep_pins) {
  for (Vertex v : keep) {
    if (!g.has_vertex(v)) {
      throw GraphError(GraphErrc::InvalidSubset,
                       "vertex " + std::to_string(v) + " is not in the graph");
    }
  }
  for (Vertex p : keep_pins) {
    if (!keep.contains(p) || !g.has_vertex(p) || !g.is_pin(p)) {
      throw GraphError(GraphErrc::InvalidSubset,
                       "pin " + std::to_string(p) + " is not a kept pin of the graph");
    }
  }
  std::vector<Vertex> renumber(static_cast<std::size_t>(g.vertex_count()) + 1, 0);
  Subgraph out;
  out.origin = keep.items();
  for (std::size_t i = 0; i < out.origin.size(); ++i) {
    renumber[out.origin[i]] = static_cast<Vertex>(i + 1);
  }

  GraphDocument doc;
  doc.vertex_count = static_cast<int>(keep.size());
  if (g.has_labels()) {
    for (Vertex v : keep) doc.labels.push_back(g.label(v));
  }
  for (const Edge& e : g.edges()) {
    if (renumber[e.u] && renumber[e.v]) doc.edges.emplace_back(renumber[e.u], renumber[e.v]);
  }
  // Preserve the parent's pin order.
  for (Vertex p : g.pins()) {
    if (keep_pins.contains(p)) doc.pins.push_back(renumber[p]);
  }
  out.graph = PinnedGraph::from_document(doc);
  return out;
}

PinnedGraph induced_pinned_subgraph(const PinnedGraph& g, const VertexSet& keep,
                                    const VertexSet& keep_pins) {
  return extract_subgraph(g, keep, keep_pins).graph;
}

VertexSet all_vertices(const PinnedGraph& g) {
  std::vector<Vertex> vs(static_cast<std::size_t>(g.vertex_count()));
  std::iota(vs.begin(), vs.end(), 1);
  return VertexSet(std::move(vs));
}

VertexSet pin_set(const PinnedGraph& g) { return VertexSet(g.pins()); }

PinnedGraph with_pins(const PinnedGraph& g, const std::vector<Vertex>& pins) {
  GraphDocument doc = g.to_document();
  doc.pins = pins;
  return PinnedGraph::from_document(doc);
}

}  // namespace kappa
