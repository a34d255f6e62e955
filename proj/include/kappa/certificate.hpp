#ifndef KAPPA_CERTIFICATE_HPP
#define KAPPA_CERTIFICATE_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "kappa/admissibility.hpp"
#include "kappa/edge_vector.hpp"
#include "kappa/graph.hpp"
#include "kappa/threshold.hpp"

namespace kappa {

enum class CertificateErrc { InvalidOrder, NotACycle, NotAPin, PinsAdjacent, SamePin };

class CertificateError : public std::runtime_error {
 public:
  CertificateError(CertificateErrc code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  CertificateErrc code() const noexcept { return code_; }

 private:
  CertificateErrc code_;
};

const char* to_string(CertificateErrc code);

/// One vertex addition: the star formed by v_r and its earlier neighbours.
struct StarStep {
  Vertex vertex = 0;
  std::vector<Vertex> eta_pinned;    // earlier neighbours that are pins
  std::vector<Vertex> eta_unpinned;  // earlier neighbours that are free points
  int epsilon = 0;                   // |eta_pinned| + |eta_unpinned|

  std::vector<Vertex> eta() const;
};

/// One level of the nested good-pin schedule. Level i (1-based) states the
/// star condition for steps[i-1] and, for i >= 2, introduces the full-measure
/// subset of the previous step's set from which that free point is drawn.
struct PlanLevel {
  int level = 0;
  Vertex vertex = 0;
  std::vector<Vertex> chosen;  // free points fixed by the enclosing levels
  std::optional<Vertex> refines;
  bool refines_whole = false;  // the introduced subset is the whole set
  int t_first = 0;             // integration variables t_first..t_last
  int t_last = 0;
};

struct StarCertificate {
  ConstructionOrder order;
  /// Set when the graph had no pins and the first vertex of the order is
  /// treated as a pin.
  std::optional<Vertex> promoted_pin;
  std::vector<StarStep> steps;
  int kappa = 0;
  int edge_total = 0;
  EdgeVectorKind phi = EdgeVectorKind::Euclidean;
  std::vector<PlanLevel> plan;
};

/// Star decomposition of `order`. kappa is the order's max back-degree.
StarCertificate star_schedule(const PinnedGraph& g, const ConstructionOrder& order,
                              EdgeVectorKind phi = EdgeVectorKind::Euclidean);

/// Certificate for the kappa-optimal order produced by the dismantling trace.
StarCertificate certify(const PinnedGraph& g, EdgeVectorKind phi = EdgeVectorKind::Euclidean,
                        ChoicePolicy policy = ChoicePolicy::min_degree());

/// Connected components (ordered by smallest vertex) with pins restricted.
std::vector<Subgraph> component_split(const PinnedGraph& g);

/// Splits a cycle at two nonadjacent pins into the two chains between them.
/// The first chain leaves `pin_a` through its lower-numbered neighbour.
std::pair<Subgraph, Subgraph> cycle_split(const PinnedGraph& g, Vertex pin_a, Vertex pin_b);

struct PlanDocument {
  std::string text;
  nlohmann::json structured;
};

/// Iterated-integral skeleton of the certificate, as text and as nested JSON.
PlanDocument render_plan(const StarCertificate& cert);

}  // namespace kappa

#endif  // KAPPA_CERTIFICATE_HPP
