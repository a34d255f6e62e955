#ifndef KAPPA_ADMISSIBILITY_HPP
#define KAPPA_ADMISSIBILITY_HPP

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "kappa/graph.hpp"

namespace kappa {

enum class OrderErrc { NotAPermutation, PinsNotFirst, PositionInPinPrefix, TraceFailed, TooLarge };

class OrderError : public std::runtime_error {
 public:
  OrderError(OrderErrc code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  OrderErrc code() const noexcept { return code_; }

 private:
  OrderErrc code_;
};

/// Pins-first vertex ordering together with the back-degree of every
/// non-pin position.
struct ConstructionOrder {
  std::vector<Vertex> order;
  std::size_t pin_count = 0;
  /// back_degrees[i] belongs to order[pin_count + i].
  std::vector<int> back_degrees;

  int max_back_degree() const;
};

/// Validates that `order` is a permutation of V(g) with the pins in front and
/// computes its back-degrees.
ConstructionOrder make_construction_order(const PinnedGraph& g, std::vector<Vertex> order);

/// Number of neighbours of order[position] among order[0..position).
/// `position` is 0-based and must lie past the pin prefix.
int back_degree(const PinnedGraph& g, const std::vector<Vertex>& order, std::size_t position);

bool is_k_admissible_order(const PinnedGraph& g, const std::vector<Vertex>& order, int k);

struct Deletion {
  Vertex vertex = 0;
  int degree_at_removal = 0;

  friend bool operator==(const Deletion&, const Deletion&) = default;
};

struct DismantleTrace {
  std::vector<Deletion> deletions;
  bool succeeded = false;
  int k = 0;
  /// Unpinned vertices left when the algorithm stopped (sorted).
  std::vector<Vertex> remaining;
};

/// Which eligible vertex the dismantling step removes next.
struct ChoicePolicy {
  enum class Kind { FirstEligible, MinDegree, Random };

  Kind kind = Kind::MinDegree;
  std::uint64_t seed = 0;

  static ChoicePolicy first_eligible() { return {Kind::FirstEligible, 0}; }
  /// Smallest current degree, ties to the lowest vertex id.
  static ChoicePolicy min_degree() { return {Kind::MinDegree, 0}; }
  static ChoicePolicy random(std::uint64_t seed) { return {Kind::Random, seed}; }
};

/// Repeatedly deletes an unpinned vertex of current degree <= k until none is
/// eligible. Succeeds iff every unpinned vertex is deleted.
DismantleTrace run_k_algorithm(const PinnedGraph& g, int k,
                               ChoicePolicy policy = ChoicePolicy::min_degree());

/// Outcome of the k-algorithm only, without recording a trace. Linear time.
bool k_algorithm_succeeds(const PinnedGraph& g, int k);

/// kappa(G, P): least k for which the k-algorithm deletes every unpinned
/// vertex. Searches upward from the minimum unpinned degree.
int admissibility_number(const PinnedGraph& g);

struct AdmissibilityResult {
  int kappa = 0;
  int lower_bound = 0;  // where the search started
  DismantleTrace trace;  // successful trace at kappa
  ConstructionOrder order;
};

AdmissibilityResult analyze_admissibility(const PinnedGraph& g,
                                          ChoicePolicy policy = ChoicePolicy::min_degree());

/// Pins in input order, then the deleted vertices in reverse deletion order.
ConstructionOrder construction_order_from_trace(const PinnedGraph& g, const DismantleTrace& trace);

/// Smallest-last degeneracy of the underlying graph (pins ignored), via the
/// bucket queue of Matula and Beck. O(|V| + |E|).
int degeneracy(const PinnedGraph& g);

inline constexpr std::size_t kDefaultBruteForceCap = 9;

/// Exact kappa by branch-and-bound over all pins-first orderings. Throws
/// OrderError(TooLarge) when the unpinned vertex count exceeds `cap`.
int brute_force_kappa(const PinnedGraph& g, std::size_t cap = kDefaultBruteForceCap);

}  // namespace kappa

#endif  // KAPPA_ADMISSIBILITY_HPP
