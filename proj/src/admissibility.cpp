#include "kappa/admissibility.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <queue>
#include <random>
#include <set>

namespace kappa {

namespace {

/// Position of every vertex in `order` (index v); throws unless `order` is a
/// permutation of 1..n.
std::vector<std::size_t> positions_of(const PinnedGraph& g, const std::vector<Vertex>& order) {
  const auto n = static_cast<std::size_t>(g.vertex_count());
  if (order.size() != n) {
    throw OrderError(OrderErrc::NotAPermutation,
                     "order has " + std::to_string(order.size()) + " entries for " +
                         std::to_string(n) + " vertices");
  }
  constexpr auto unset = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> pos(n + 1, unset);
  for (std::size_t i = 0; i < order.size(); ++i) {
    Vertex v = order[i];
    if (!g.has_vertex(v) || pos[v] != unset) {
      throw OrderError(OrderErrc::NotAPermutation,
                       "order entry " + std::to_string(v) + " is out of range or repeated");
    }
    pos[v] = i;
  }
  return pos;
}

void require_pins_first(const PinnedGraph& g, const std::vector<Vertex>& order) {
  for (std::size_t i = 0; i < g.pin_count(); ++i) {
    if (!g.is_pin(order[i])) {
      throw OrderError(OrderErrc::PinsNotFirst,
                       "position " + std::to_string(i) + " holds unpinned vertex " +
                           std::to_string(order[i]) + " inside the pin prefix");
    }
  }
}

/// Current degrees plus removal flags shared by the dismantling variants.
struct Residual {
  std::vector<int> degree;
  std::vector<std::uint8_t> removed;

  explicit Residual(const PinnedGraph& g)
      : degree(static_cast<std::size_t>(g.vertex_count()) + 1, 0),
        removed(static_cast<std::size_t>(g.vertex_count()) + 1, 0) {
    for (Vertex v = 1; v <= g.vertex_count(); ++v) degree[v] = g.degree(v);
  }
};

}  // namespace

int ConstructionOrder::max_back_degree() const {
  int best = 0;
  for (int d : back_degrees) best = std::max(best, d);
  return best;
}

ConstructionOrder make_construction_order(const PinnedGraph& g, std::vector<Vertex> order) {
  auto pos = positions_of(g, order);
  require_pins_first(g, order);
  ConstructionOrder out;
  out.pin_count = g.pin_count();
  out.back_degrees.reserve(order.size() - out.pin_count);
  for (std::size_t i = out.pin_count; i < order.size(); ++i) {
    int count = 0;
    for (Vertex w : g.neighbors(order[i])) count += pos[w] < i ? 1 : 0;
    out.back_degrees.push_back(count);
  }
  out.order = std::move(order);
  return out;
}

int back_degree(const PinnedGraph& g, const std::vector<Vertex>& order, std::size_t position) {
  auto pos = positions_of(g, order);
  if (position < g.pin_count()) {
    throw OrderError(OrderErrc::PositionInPinPrefix,
                     "position " + std::to_string(position) + " lies in the pin prefix");
  }
  if (position >= order.size()) {
    throw OrderError(OrderErrc::NotAPermutation, "position past the end of the order");
  }
  int count = 0;
  for (Vertex w : g.neighbors(order[position])) count += pos[w] < position ? 1 : 0;
  return count;
}

bool is_k_admissible_order(const PinnedGraph& g, const std::vector<Vertex>& order, int k) {
  return make_construction_order(g, order).max_back_degree() <= k;
}

DismantleTrace run_k_algorithm(const PinnedGraph& g, int k, ChoicePolicy policy) {
  Residual res(g);
  DismantleTrace trace;
  trace.k = k;
  const std::size_t target = g.unpinned_count();
  trace.deletions.reserve(target);

  auto eligible = [&](Vertex v) { return !res.removed[v] && !g.is_pin(v) && res.degree[v] <= k; };

  // Eligibility is monotone: degrees only fall, so a vertex enters the pool
  // once and leaves it only when deleted.
  std::vector<std::uint8_t> pooled(res.degree.size(), 0);

  auto remove = [&](Vertex v, auto&& on_degree_drop) {
    trace.deletions.push_back({v, res.degree[v]});
    res.removed[v] = 1;
    for (Vertex w : g.neighbors(v)) {
      if (res.removed[w]) continue;
      --res.degree[w];
      on_degree_drop(w);
    }
  };

  switch (policy.kind) {
    case ChoicePolicy::Kind::FirstEligible: {
      std::priority_queue<Vertex, std::vector<Vertex>, std::greater<>> pool;
      auto offer = [&](Vertex w) {
        if (!pooled[w] && eligible(w)) {
          pooled[w] = 1;
          pool.push(w);
        }
      };
      for (Vertex v = 1; v <= g.vertex_count(); ++v) offer(v);
      while (!pool.empty()) {
        Vertex v = pool.top();
        pool.pop();
        remove(v, offer);
      }
      break;
    }
    case ChoicePolicy::Kind::MinDegree: {
      std::set<std::pair<int, Vertex>> pool;
      auto offer = [&](Vertex w) {
        if (g.is_pin(w) || res.degree[w] > k) return;
        if (pooled[w]) pool.erase({res.degree[w] + 1, w});
        pooled[w] = 1;
        pool.insert({res.degree[w], w});
      };
      for (Vertex v = 1; v <= g.vertex_count(); ++v) {
        if (eligible(v)) {
          pooled[v] = 1;
          pool.insert({res.degree[v], v});
        }
      }
      while (!pool.empty()) {
        Vertex v = pool.begin()->second;
        pool.erase(pool.begin());
        remove(v, offer);
      }
      break;
    }
    case ChoicePolicy::Kind::Random: {
      std::mt19937_64 rng(policy.seed);
      std::vector<Vertex> pool;
      auto offer = [&](Vertex w) {
        if (!pooled[w] && eligible(w)) {
          pooled[w] = 1;
          pool.push_back(w);
        }
      };
      for (Vertex v = 1; v <= g.vertex_count(); ++v) offer(v);
      while (!pool.empty()) {
        std::size_t pick = static_cast<std::size_t>(rng() % pool.size());
        Vertex v = pool[pick];
        pool[pick] = pool.back();
        pool.pop_back();
        remove(v, offer);
      }
      break;
    }
  }

  trace.succeeded = trace.deletions.size() == target;
  for (Vertex v = 1; v <= g.vertex_count(); ++v) {
    if (!res.removed[v] && !g.is_pin(v)) trace.remaining.push_back(v);
  }
  return trace;
}

bool k_algorithm_succeeds(const PinnedGraph& g, int k) {
  Residual res(g);
  std::vector<Vertex> stack;
  std::vector<std::uint8_t> queued(res.degree.size(), 0);
  for (Vertex v = 1; v <= g.vertex_count(); ++v) {
    if (!g.is_pin(v) && res.degree[v] <= k) {
      queued[v] = 1;
      stack.push_back(v);
    }
  }
  std::size_t deleted = 0;
  while (!stack.empty()) {
    Vertex v = stack.back();
    stack.pop_back();
    res.removed[v] = 1;
    ++deleted;
    for (Vertex w : g.neighbors(v)) {
      if (res.removed[w]) continue;
      if (--res.degree[w] <= k && !queued[w] && !g.is_pin(w)) {
        queued[w] = 1;
        stack.push_back(w);
      }
    }
  }
  return deleted == g.unpinned_count();
}

namespace {

int min_unpinned_degree(const PinnedGraph& g) {
  int lb = std::numeric_limits<int>::max();
  for (Vertex v = 1; v <= g.vertex_count(); ++v) {
    if (!g.is_pin(v)) lb = std::min(lb, g.degree(v));
  }
  return lb;
}

}  // namespace

int admissibility_number(const PinnedGraph& g) {
  if (g.unpinned_count() == 0) return 0;
  int k = min_unpinned_degree(g);
  while (!k_algorithm_succeeds(g, k)) ++k;
  return k;
}

AdmissibilityResult analyze_admissibility(const PinnedGraph& g, ChoicePolicy policy) {
  AdmissibilityResult out;
  out.lower_bound = g.unpinned_count() == 0 ? 0 : min_unpinned_degree(g);
  out.kappa = admissibility_number(g);
  out.trace = run_k_algorithm(g, out.kappa, policy);
  out.order = construction_order_from_trace(g, out.trace);
  return out;
}

ConstructionOrder construction_order_from_trace(const PinnedGraph& g, const DismantleTrace& trace) {
  if (!trace.succeeded) {
    throw OrderError(OrderErrc::TraceFailed,
                     std::to_string(trace.k) + "-algorithm trace did not delete every unpinned vertex");
  }
  std::vector<Vertex> order = g.pins();
  order.reserve(static_cast<std::size_t>(g.vertex_count()));
  for (auto it = trace.deletions.rbegin(); it != trace.deletions.rend(); ++it) {
    order.push_back(it->vertex);
  }
  return make_construction_order(g, std::move(order));
}

int degeneracy(const PinnedGraph& g) {
  const int n = g.vertex_count();
  if (n == 0) return 0;
  const int max_deg = g.max_degree();
  std::vector<int> deg(static_cast<std::size_t>(n) + 1);
  std::vector<int> bin(static_cast<std::size_t>(max_deg) + 1, 0);
  for (Vertex v = 1; v <= n; ++v) {
    deg[v] = g.degree(v);
    ++bin[deg[v]];
  }
  int start = 0;
  for (int d = 0; d <= max_deg; ++d) {
    int count = bin[d];
    bin[d] = start;
    start += count;
  }
  // vert: vertices sorted by current degree; pos: index of each in vert.
  std::vector<Vertex> vert(static_cast<std::size_t>(n));
  std::vector<int> pos(static_cast<std::size_t>(n) + 1);
  for (Vertex v = 1; v <= n; ++v) {
    pos[v] = bin[deg[v]]++;
    vert[pos[v]] = v;
  }
  for (int d = max_deg; d > 0; --d) bin[d] = bin[d - 1];
  bin[0] = 0;

  int best = 0;
  for (int i = 0; i < n; ++i) {
    Vertex v = vert[i];
    best = std::max(best, deg[v]);
    for (Vertex w : g.neighbors(v)) {
      if (deg[w] > deg[v]) {
        // Swap w with the first vertex of its bucket, then shrink the bucket.
        int dw = deg[w];
        int pw = pos[w];
        int pf = bin[dw];
        Vertex first = vert[pf];
        if (first != w) {
          vert[pw] = first;
          pos[first] = pw;
          vert[pf] = w;
          pos[w] = pf;
        }
        ++bin[dw];
        --deg[w];
      }
    }
  }
  return best;
}

int brute_force_kappa(const PinnedGraph& g, std::size_t cap) {
  std::vector<Vertex> free;
  for (Vertex v = 1; v <= g.vertex_count(); ++v) {
    if (!g.is_pin(v)) free.push_back(v);
  }
  if (free.size() > cap || free.size() > 24) {
    throw OrderError(OrderErrc::TooLarge, std::to_string(free.size()) +
                                              " unpinned vertices exceed the brute-force cap of " +
                                              std::to_string(cap));
  }
  const std::size_t u = free.size();
  if (u == 0) return 0;

  std::vector<int> index(static_cast<std::size_t>(g.vertex_count()) + 1, -1);
  for (std::size_t i = 0; i < u; ++i) index[free[i]] = static_cast<int>(i);
  std::vector<int> pinned_neighbors(u, 0);
  std::vector<std::uint32_t> free_neighbors(u, 0);
  for (std::size_t i = 0; i < u; ++i) {
    for (Vertex w : g.neighbors(free[i])) {
      if (index[w] < 0) {
        ++pinned_neighbors[i];
      } else {
        free_neighbors[i] |= 1u << index[w];
      }
    }
  }

  const std::uint32_t full = (u == 32) ? ~0u : ((1u << u) - 1);
  int best = std::numeric_limits<int>::max();
  // Smallest running maximum with which each placed-set has been reached;
  // arriving again with a larger maximum cannot improve on the earlier visit.
  std::vector<int> reached(std::size_t{1} << u, std::numeric_limits<int>::max());

  auto search = [&](auto&& self, std::uint32_t placed, int running) -> void {
    if (running >= best) return;
    if (placed == full) {
      best = running;
      return;
    }
    if (reached[placed] <= running) return;
    reached[placed] = running;
    for (std::size_t i = 0; i < u; ++i) {
      if (placed & (1u << i)) continue;
      int back = pinned_neighbors[i] + std::popcount(free_neighbors[i] & placed);
      self(self, placed | (1u << i), std::max(running, back));
    }
  };
  search(search, 0u, 0);
  return best;
}

}  // namespace kappa
