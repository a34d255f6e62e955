#ifndef KAPPA_EDGE_VECTOR_HPP
#define KAPPA_EDGE_VECTOR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace kappa {

/// Two-point function applied along every edge; both kinds are symmetric.
enum class EdgeVectorKind { Euclidean, DotProduct };

inline const char* to_string(EdgeVectorKind kind) {
  return kind == EdgeVectorKind::Euclidean ? "euclidean" : "dot_product";
}

inline EdgeVectorKind parse_edge_vector_kind(std::string_view text) {
  if (text == "euclidean") return EdgeVectorKind::Euclidean;
  if (text == "dot_product" || text == "dot-product" || text == "dot") {
    return EdgeVectorKind::DotProduct;
  }
  throw std::invalid_argument("unknown edge vector kind '" + std::string(text) + "'");
}

}  // namespace kappa

#endif  // KAPPA_EDGE_VECTOR_HPP
