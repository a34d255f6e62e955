#ifndef KAPPA_SERIALIZE_HPP
#define KAPPA_SERIALIZE_HPP

#include <string>

#include <json.hpp>

#include "kappa/admissibility.hpp"
#include "kappa/certificate.hpp"
#include "kappa/threshold.hpp"

namespace kappa {

nlohmann::json to_json(const DismantleTrace& trace);
nlohmann::json to_json(const ConstructionOrder& order);
nlohmann::json to_json(const StarStep& step);
nlohmann::json to_json(const ThresholdReport& report);

/// The certificate document: order, steps, kappa, thresholds, plan.
/// Field names are stable; keys are emitted in sorted order.
nlohmann::json certificate_document(const StarCertificate& cert, const ThresholdReport& thresholds);

/// Dimensions tabulated when the caller gives none: 2 .. max(6, kappa + 2).
std::vector<int> default_dims(int kappa);

/// certify + certificate_document with thresholds at k = kappa. Shared by the
/// command line and the HTTP facade.
nlohmann::json analysis_document(const PinnedGraph& g, const std::vector<int>& dims,
                                 EdgeVectorKind phi = EdgeVectorKind::Euclidean);

ChoicePolicy parse_policy(const std::string& name, std::uint64_t seed);
const char* to_string(ChoicePolicy::Kind kind);

/// Pretty-printed JSON followed by a newline; byte-stable for goldens.
std::string dump_document(const nlohmann::json& j);

}  // namespace kappa

#endif  // KAPPA_SERIALIZE_HPP
