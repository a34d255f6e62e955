#include "kappa/serialize.hpp"

#include <algorithm>
#include <stdexcept>

namespace kappa {

using nlohmann::json;

json to_json(const DismantleTrace& trace) {
  json deletions = json::array();
  for (const Deletion& d : trace.deletions) {
    deletions.push_back({{"vertex", d.vertex}, {"degree", d.degree_at_removal}});
  }
  return {{"k", trace.k},
          {"succeeded", trace.succeeded},
          {"deletions", std::move(deletions)},
          {"remaining", trace.remaining}};
}

json to_json(const ConstructionOrder& order) {
  return {{"order", order.order},
          {"pin_count", order.pin_count},
          {"back_degrees", order.back_degrees}};
}

json to_json(const StarStep& step) {
  return {{"vertex", step.vertex},
          {"eta_pinned", step.eta_pinned},
          {"eta_unpinned", step.eta_unpinned},
          {"epsilon", step.epsilon}};
}

json to_json(const ThresholdReport& report) {
  json rows = json::array();
  for (const ThresholdRow& row : report.rows) {
    json item{{"d", row.d},
              {"value_num", row.value.numerator()},
              {"value_den", row.value.denominator()},
              {"valid", row.valid}};
    if (row.sharpened) {
      item["sharpened_num"] = row.sharpened->numerator();
      item["sharpened_den"] = row.sharpened->denominator();
    }
    rows.push_back(std::move(item));
  }
  return rows;
}

json certificate_document(const StarCertificate& cert, const ThresholdReport& thresholds) {
  json steps = json::array();
  for (const StarStep& s : cert.steps) steps.push_back(to_json(s));
  return {{"order", cert.order.order},
          {"pin_count", cert.order.pin_count},
          {"back_degrees", cert.order.back_degrees},
          {"promoted_pin", cert.promoted_pin ? json(*cert.promoted_pin) : json(nullptr)},
          {"steps", std::move(steps)},
          {"kappa", cert.kappa},
          {"edge_total", cert.edge_total},
          {"phi", to_string(cert.phi)},
          {"exploratory", cert.phi != EdgeVectorKind::Euclidean},
          {"thresholds", to_json(thresholds)},
          {"plan", render_plan(cert).structured}};
}

std::vector<int> default_dims(int kappa) {
  std::vector<int> dims;
  for (int d = 2; d <= std::max(6, kappa + 2); ++d) dims.push_back(d);
  return dims;
}

json analysis_document(const PinnedGraph& g, const std::vector<int>& dims, EdgeVectorKind phi) {
  const StarCertificate cert = certify(g, phi);
  return certificate_document(
      cert, threshold_table(cert.kappa, dims.empty() ? default_dims(cert.kappa) : dims));
}

ChoicePolicy parse_policy(const std::string& name, std::uint64_t seed) {
  if (name == "min-degree") return ChoicePolicy::min_degree();
  if (name == "first-eligible") return ChoicePolicy::first_eligible();
  if (name == "random") return ChoicePolicy::random(seed);
  throw std::invalid_argument("unknown policy '" + name + "'");
}

const char* to_string(ChoicePolicy::Kind kind) {
  switch (kind) {
    case ChoicePolicy::Kind::FirstEligible: return "first-eligible";
    case ChoicePolicy::Kind::MinDegree: return "min-degree";
    case ChoicePolicy::Kind::Random: return "random";
  }
  return "unknown";
}

std::string dump_document(const json& j) { return j.dump(2) + "\n"; }

}  // namespace kappa
