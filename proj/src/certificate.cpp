#include "kappa/certificate.hpp"

#include <algorithm>
#include <sstream>

namespace kappa {

using nlohmann::json;

const char* to_string(CertificateErrc code) {
  switch (code) {
    case CertificateErrc::InvalidOrder: return "InvalidOrder";
    case CertificateErrc::NotACycle: return "NotACycle";
    case CertificateErrc::NotAPin: return "NotAPin";
    case CertificateErrc::PinsAdjacent: return "PinsAdjacent";
    case CertificateErrc::SamePin: return "SamePin";
  }
  return "Unknown";
}

std::vector<Vertex> StarStep::eta() const {
  std::vector<Vertex> all = eta_pinned;
  all.insert(all.end(), eta_unpinned.begin(), eta_unpinned.end());
  std::sort(all.begin(), all.end());
  return all;
}

StarCertificate star_schedule(const PinnedGraph& g, const ConstructionOrder& order,
                              EdgeVectorKind phi) {
  ConstructionOrder checked;
  try {
    checked = make_construction_order(g, order.order);
  } catch (const OrderError& e) {
    throw CertificateError(CertificateErrc::InvalidOrder, e.what());
  }
  if (checked.pin_count != order.pin_count || checked.back_degrees != order.back_degrees) {
    throw CertificateError(CertificateErrc::InvalidOrder,
                           "order's pin prefix or back-degrees do not match the graph");
  }

  StarCertificate cert;
  cert.order = checked;
  cert.phi = phi;
  const auto n = checked.order.size();
  std::size_t first_free = checked.pin_count;
  if (first_free == 0 && n > 0) {
    cert.promoted_pin = checked.order.front();
    first_free = 1;
  }

  std::vector<std::uint8_t> treated_as_pin(n + 1, 0);
  std::vector<std::size_t> pos(n + 1, 0);
  for (std::size_t i = 0; i < n; ++i) {
    pos[checked.order[i]] = i;
    if (i < first_free) treated_as_pin[checked.order[i]] = 1;
  }

  for (std::size_t i = first_free; i < n; ++i) {
    StarStep step;
    step.vertex = checked.order[i];
    for (Vertex w : g.neighbors(step.vertex)) {
      if (pos[w] >= i) continue;
      (treated_as_pin[w] ? step.eta_pinned : step.eta_unpinned).push_back(w);
    }
    step.epsilon = static_cast<int>(step.eta_pinned.size() + step.eta_unpinned.size());
    cert.edge_total += step.epsilon;
    cert.kappa = std::max(cert.kappa, step.epsilon);
    cert.steps.push_back(std::move(step));
  }

  // A free point's good subset restricts E only if some later star uses it.
  std::vector<std::uint8_t> used_later(n + 1, 0);
  for (const StarStep& s : cert.steps) {
    for (Vertex w : s.eta_unpinned) used_later[w] = 1;
  }
  int t = 0;
  for (std::size_t i = 0; i < cert.steps.size(); ++i) {
    PlanLevel level;
    level.level = static_cast<int>(i) + 1;
    level.vertex = cert.steps[i].vertex;
    for (std::size_t j = 0; j < i; ++j) level.chosen.push_back(cert.steps[j].vertex);
    if (i > 0) {
      level.refines = cert.steps[i - 1].vertex;
      level.refines_whole = !used_later[*level.refines];
    }
    level.t_first = t + 1;
    t += cert.steps[i].epsilon;
    level.t_last = t;
    cert.plan.push_back(std::move(level));
  }
  return cert;
}

StarCertificate certify(const PinnedGraph& g, EdgeVectorKind phi, ChoicePolicy policy) {
  auto result = analyze_admissibility(g, policy);
  StarCertificate cert = star_schedule(g, result.order, phi);
  cert.kappa = result.kappa;
  return cert;
}

std::vector<Subgraph> component_split(const PinnedGraph& g) {
  const int n = g.vertex_count();
  std::vector<int> component(static_cast<std::size_t>(n) + 1, -1);
  std::vector<std::vector<Vertex>> members;
  for (Vertex s = 1; s <= n; ++s) {
    if (component[s] >= 0) continue;
    const int id = static_cast<int>(members.size());
    members.emplace_back();
    std::vector<Vertex> stack{s};
    component[s] = id;
    while (!stack.empty()) {
      Vertex v = stack.back();
      stack.pop_back();
      members[id].push_back(v);
      for (Vertex w : g.neighbors(v)) {
        if (component[w] < 0) {
          component[w] = id;
          stack.push_back(w);
        }
      }
    }
  }
  std::vector<Subgraph> out;
  out.reserve(members.size());
  for (auto& vs : members) {
    std::vector<Vertex> pins;
    for (Vertex p : g.pins()) {
      if (component[p] == component[vs.front()]) pins.push_back(p);
    }
    out.push_back(extract_subgraph(g, VertexSet(std::move(vs)), VertexSet(std::move(pins))));
  }
  return out;
}

namespace {

bool is_single_cycle(const PinnedGraph& g) {
  const int n = g.vertex_count();
  if (n < 3 || static_cast<int>(g.edge_count()) != n) return false;
  for (Vertex v = 1; v <= n; ++v) {
    if (g.degree(v) != 2) return false;
  }
  return component_split(g).size() == 1;
}

Subgraph chain_between(const PinnedGraph& g, const std::vector<Vertex>& path) {
  std::vector<Vertex> pins;
  for (Vertex v : path) {
    if (g.is_pin(v)) pins.push_back(v);
  }
  return extract_subgraph(g, VertexSet(path), VertexSet(std::move(pins)));
}

}  // namespace

std::pair<Subgraph, Subgraph> cycle_split(const PinnedGraph& g, Vertex pin_a, Vertex pin_b) {
  if (!is_single_cycle(g)) {
    throw CertificateError(CertificateErrc::NotACycle, "graph is not a single cycle");
  }
  if (pin_a == pin_b) {
    throw CertificateError(CertificateErrc::SamePin, "split pins must be distinct");
  }
  for (Vertex p : {pin_a, pin_b}) {
    if (!g.has_vertex(p) || !g.is_pin(p)) {
      throw CertificateError(CertificateErrc::NotAPin,
                             "vertex " + std::to_string(p) + " is not a pin");
    }
  }
  // Pins are independent, so this only fires on inputs that bypassed validation.
  if (g.adjacent(pin_a, pin_b)) {
    throw CertificateError(CertificateErrc::PinsAdjacent, "split pins are adjacent");
  }

  std::vector<Vertex> first{pin_a};
  std::vector<Vertex> second{pin_b};
  Vertex prev = pin_a;
  Vertex cur = g.neighbors(pin_a).front();
  std::vector<Vertex>* path = &first;
  while (cur != pin_a) {
    path->push_back(cur);
    if (cur == pin_b) path = &second;
    auto nb = g.neighbors(cur);
    Vertex next = nb[0] == prev ? nb[1] : nb[0];
    prev = cur;
    cur = next;
  }
  second.push_back(pin_a);
  return {chain_between(g, first), chain_between(g, second)};
}

namespace {

std::string join(const std::vector<std::string>& parts, const char* sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

struct Notation {
  const StarCertificate& cert;

  std::vector<Vertex> pins() const {
    std::vector<Vertex> xs(cert.order.order.begin(),
                           cert.order.order.begin() +
                               static_cast<std::ptrdiff_t>(cert.order.pin_count));
    if (cert.promoted_pin) xs.push_back(*cert.promoted_pin);
    return xs;
  }

  static std::string x(Vertex v) { return "x" + std::to_string(v); }
  static std::string y(Vertex v) { return "y" + std::to_string(v); }
  static std::string set(Vertex v) { return "E" + std::to_string(v); }

  std::vector<std::string> star_points(const StarStep& s) const {
    std::vector<std::string> pts;
    for (Vertex p : s.eta_pinned) pts.push_back(x(p));
    for (Vertex u : s.eta_unpinned) pts.push_back(y(u));
    return pts;
  }

  std::string star_map(const StarStep& s) const {
    std::string phi = cert.phi == EdgeVectorKind::Euclidean ? "" : ",Phi";
    return "d^{" + std::to_string(s.epsilon) + "-star" + phi + "}_{" +
           join(star_points(s), ",") + "}";
  }

  std::string star_set(const StarStep& s, const std::string& domain) const {
    std::string phi = cert.phi == EdgeVectorKind::Euclidean ? "" : ",Phi";
    return "Delta^{" + std::to_string(s.epsilon) + "-star" + phi + "}_{" +
           join(star_points(s), ",") + "}(" + domain + ")";
  }

  /// (E_v)^G_{x..., y...} with the free points chosen before v.
  std::string good_set(Vertex v, const std::vector<Vertex>& before) const {
    std::vector<std::string> subs;
    for (Vertex p : pins()) subs.push_back(x(p));
    for (Vertex u : before) subs.push_back(y(u));
    return "(" + set(v) + ")^G_{" + join(subs, ",") + "}";
  }

  std::string lp() const { return cert.phi == EdgeVectorKind::Euclidean ? "L^2" : "L^p"; }

  std::string condition(const PlanLevel& level, const StarStep& step) const {
    std::string target;
    if (step.epsilon == 0) {
      target = "no condition (" + y(step.vertex) + " has no earlier neighbours)";
    } else {
      target = "(" + star_map(step) + ")_*(mu_" + set(step.vertex) + ") in " + lp() + "(R^" +
               std::to_string(step.epsilon) + ")";
    }
    if (!level.refines) return target;
    const Vertex prev = *level.refines;
    std::vector<Vertex> earlier(level.chosen.begin(), level.chosen.end() - 1);
    std::string out;
    if (!earlier.empty()) {
      std::vector<std::string> picks;
      std::vector<Vertex> before;
      for (Vertex u : earlier) {
        picks.push_back(y(u) + " in " + good_set(u, before));
        before.push_back(u);
      }
      out += "for each " + join(picks, ", ") + ", ";
    }
    out += "there is a mu_" + set(prev) + "-full subset " + good_set(prev, earlier) + " of " +
           set(prev);
    if (level.refines_whole) out += " (equal to " + set(prev) + ")";
    out += " such that for every " + y(prev) + " in it, " + target;
    return out;
  }
};

}  // namespace

PlanDocument render_plan(const StarCertificate& cert) {
  Notation nt{cert};
  const auto pins = nt.pins();
  PlanDocument doc;
  std::ostringstream text;

  std::vector<std::string> pin_names, free_names, xs, sets;
  for (std::size_t i = 0; i < cert.order.order.size(); ++i) {
    Vertex v = cert.order.order[i];
    (i < cert.order.pin_count ? pin_names : free_names).push_back("v" + std::to_string(v));
  }
  for (Vertex p : pins) xs.push_back(Notation::x(p));
  for (const StarStep& s : cert.steps) sets.push_back(Notation::set(s.vertex));

  text << "# star certificate: kappa=" << cert.kappa << " |E|=" << cert.edge_total
       << " phi=" << to_string(cert.phi) << "\n";
  text << "# order: " << join(pin_names, " ") << " | " << join(free_names, " ") << "\n";
  if (cert.promoted_pin) {
    text << "# promoted pin: v" << *cert.promoted_pin << " (graph has no pins)\n";
  }
  if (cert.phi != EdgeVectorKind::Euclidean) {
    text << "# star suitability for phi=" << to_string(cert.phi) << ": declared, not verified\n";
  }
  text << "L^" << cert.edge_total << "(Delta^G_{" << join(xs, ",") << "}(" << join(sets, ",")
       << ")) >=\n";

  std::vector<json> levels;
  for (std::size_t i = 0; i < cert.plan.size(); ++i) {
    const PlanLevel& level = cert.plan[i];
    const StarStep& step = cert.steps[i];
    const bool last = i + 1 == cert.plan.size();
    std::string domain = last ? Notation::set(step.vertex) : nt.good_set(step.vertex, level.chosen);

    std::vector<std::string> dts;
    for (int t = level.t_first; t <= level.t_last; ++t) dts.push_back("dt" + std::to_string(t));
    text << std::string(2 * (i + 1), ' ');
    if (step.epsilon == 0) {
      text << "[y" << step.vertex << " in " << domain << ": no star]\n";
    } else {
      text << "int_{" << nt.star_set(step, domain) << "} " << join(dts, " ") << "\n";
    }

    json item{{"level", level.level},
              {"vertex", level.vertex},
              {"epsilon", step.epsilon},
              {"star", {{"pins", step.eta_pinned}, {"free", step.eta_unpinned}}},
              {"chosen", level.chosen},
              {"domain", domain},
              {"t", {level.t_first, level.t_last}},
              {"condition", nt.condition(level, step)}};
    if (level.refines) {
      item["refines"] = *level.refines;
      item["refines_whole"] = level.refines_whole;
    } else {
      item["refines"] = nullptr;
      item["refines_whole"] = false;
    }
    levels.push_back(std::move(item));
  }
  text << "conditions:\n";
  for (std::size_t i = 0; i < levels.size(); ++i) {
    text << "  (" << (i + 1) << ") " << levels[i]["condition"].get<std::string>() << "\n";
  }

  // Nest innermost-out.
  json nested = json::array();
  for (auto it = levels.rbegin(); it != levels.rend(); ++it) {
    (*it)["inner"] = nested;
    nested = json::array({*it});
  }
  doc.structured = {{"header",
                     {{"pins", pins},
                      {"promoted_pin", cert.promoted_pin ? json(*cert.promoted_pin) : json(nullptr)},
                      {"phi", to_string(cert.phi)},
                      {"suitability",
                       cert.phi == EdgeVectorKind::Euclidean ? "known (euclidean k-star bound)"
                                                             : "declared, not verified"}}},
                    {"levels", nested}};
  doc.text = text.str();
  return doc;
}

}  // namespace kappa
