#include "support/oracles.hpp"

#include <algorithm>
#include <numeric>

#include "kappa/graph_io.hpp"

namespace kappa::testing {

std::filesystem::path gallery_dir() { return std::filesystem::path(KAPPA_SOURCE_DIR) / "data" / "gallery"; }

PinnedGraph gallery(const std::string& name) { return load_graph(gallery_dir() / (name + ".json")); }

PinnedGraph random_pinned_graph(std::mt19937_64& rng, int n, double edge_probability,
                                double pin_probability) {
  std::bernoulli_distribution edge(edge_probability);
  std::bernoulli_distribution pin(pin_probability);
  std::vector<std::pair<Vertex, Vertex>> edges;
  Matrix adj(n + 1, std::vector<bool>(n + 1, false));
  for (Vertex u = 1; u <= n; ++u) {
    for (Vertex v = u + 1; v <= n; ++v) {
      if (edge(rng)) {
        edges.emplace_back(u, v);
        adj[u][v] = adj[v][u] = true;
      }
    }
  }
  std::vector<Vertex> pins;
  for (Vertex v = 1; v <= n; ++v) {
    if (!pin(rng)) continue;
    bool free_of_pins = true;
    for (Vertex p : pins) free_of_pins = free_of_pins && !adj[v][p];
    if (free_of_pins) pins.push_back(v);
  }
  std::shuffle(pins.begin(), pins.end(), rng);
  return PinnedGraph::make(n, edges, pins);
}

PinnedGraph random_with_free(std::mt19937_64& rng, int free_count, int max_pins,
                             double edge_probability) {
  const int pin_count = std::uniform_int_distribution<int>(0, max_pins)(rng);
  const int n = free_count + pin_count;
  std::vector<Vertex> perm(n);
  std::iota(perm.begin(), perm.end(), 1);
  std::shuffle(perm.begin(), perm.end(), rng);
  std::vector<Vertex> pins(perm.begin(), perm.begin() + pin_count);
  std::vector<bool> is_pin(n + 1, false);
  for (Vertex p : pins) is_pin[p] = true;
  std::bernoulli_distribution edge(edge_probability);
  std::vector<std::pair<Vertex, Vertex>> edges;
  for (Vertex u = 1; u <= n; ++u) {
    for (Vertex v = u + 1; v <= n; ++v) {
      if (is_pin[u] && is_pin[v]) continue;
      if (edge(rng)) edges.emplace_back(u, v);
    }
  }
  return PinnedGraph::make(n, edges, pins);
}

std::vector<PinnedGraph> all_pinned_graphs(int n) {
  std::vector<std::pair<Vertex, Vertex>> slots;
  for (Vertex u = 1; u <= n; ++u) {
    for (Vertex v = u + 1; v <= n; ++v) slots.emplace_back(u, v);
  }
  std::vector<PinnedGraph> out;
  for (std::uint32_t mask = 0; mask < (1u << slots.size()); ++mask) {
    std::vector<std::pair<Vertex, Vertex>> edges;
    for (std::size_t i = 0; i < slots.size(); ++i) {
      if (mask >> i & 1u) edges.push_back(slots[i]);
    }
    for (std::uint32_t pins_mask = 0; pins_mask < (1u << n); ++pins_mask) {
      bool independent = true;
      for (const auto& [u, v] : edges) {
        if ((pins_mask >> (u - 1) & 1u) && (pins_mask >> (v - 1) & 1u)) independent = false;
      }
      if (!independent) continue;
      std::vector<Vertex> pins;
      for (Vertex v = 1; v <= n; ++v) {
        if (pins_mask >> (v - 1) & 1u) pins.push_back(v);
      }
      out.push_back(PinnedGraph::make(n, edges, pins));
    }
  }
  return out;
}

Matrix adjacency_matrix(const PinnedGraph& g) {
  const int n = g.vertex_count();
  Matrix adj(n + 1, std::vector<bool>(n + 1, false));
  for (const Edge& e : g.edges()) adj[e.u][e.v] = adj[e.v][e.u] = true;
  return adj;
}

int back_degree_naive(const PinnedGraph& g, const std::vector<Vertex>& order, std::size_t position) {
  const Matrix adj = adjacency_matrix(g);
  int count = 0;
  for (std::size_t i = 0; i < position; ++i) count += adj[order[position]][order[i]] ? 1 : 0;
  return count;
}

int kappa_by_permutations(const PinnedGraph& g) {
  const Matrix adj = adjacency_matrix(g);
  std::vector<Vertex> free;
  for (Vertex v = 1; v <= g.vertex_count(); ++v) {
    if (!g.is_pin(v)) free.push_back(v);
  }
  if (free.empty()) return 0;
  int best = g.vertex_count();
  do {
    int worst = 0;
    for (std::size_t i = 0; i < free.size(); ++i) {
      int back = 0;
      for (Vertex p : g.pins()) back += adj[free[i]][p] ? 1 : 0;
      for (std::size_t j = 0; j < i; ++j) back += adj[free[i]][free[j]] ? 1 : 0;
      worst = std::max(worst, back);
    }
    best = std::min(best, worst);
  } while (std::next_permutation(free.begin(), free.end()));
  return best;
}

bool k_algorithm_by_rescanning(const PinnedGraph& g, int k) {
  const int n = g.vertex_count();
  const Matrix adj = adjacency_matrix(g);
  std::vector<bool> alive(n + 1, true);
  std::size_t left = g.unpinned_count();
  bool progress = true;
  while (left > 0 && progress) {
    progress = false;
    for (Vertex v = 1; v <= n; ++v) {
      if (!alive[v] || g.is_pin(v)) continue;
      int degree = 0;
      for (Vertex w = 1; w <= n; ++w) degree += (alive[w] && adj[v][w]) ? 1 : 0;
      if (degree <= k) {
        alive[v] = false;
        --left;
        progress = true;
        break;
      }
    }
  }
  return left == 0;
}

int degeneracy_by_rescanning(const PinnedGraph& g) {
  const int n = g.vertex_count();
  const Matrix adj = adjacency_matrix(g);
  std::vector<bool> alive(n + 1, true);
  int result = 0;
  for (int round = 0; round < n; ++round) {
    Vertex pick = 0;
    int pick_degree = n + 1;
    for (Vertex v = 1; v <= n; ++v) {
      if (!alive[v]) continue;
      int degree = 0;
      for (Vertex w = 1; w <= n; ++w) degree += (alive[w] && adj[v][w]) ? 1 : 0;
      if (degree < pick_degree) {
        pick = v;
        pick_degree = degree;
      }
    }
    result = std::max(result, pick_degree);
    alive[pick] = false;
  }
  return result;
}

}  // namespace kappa::testing
