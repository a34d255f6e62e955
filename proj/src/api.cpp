#include "kappa/api.hpp"

#include <regex>
#include <utility>

#include "kappa/admissibility.hpp"
#include "kappa/graph_io.hpp"
#include "kappa/measure.hpp"
#include "kappa/serialize.hpp"

// After Eigen: <resolv.h>, pulled in by httplib, defines a `_res` macro.
#include <httplib.h>

namespace kappa::api {

using nlohmann::json;

namespace {

struct Rejection {
  int status;
  std::string code;
  std::string message;
  json details;
};

[[noreturn]] void reject(int status, std::string code, std::string message,
                         json details = json::object()) {
  throw Rejection{status, std::move(code), std::move(message), std::move(details)};
}

json parse_body(const std::string& body) {
  json j = json::parse(body, nullptr, false);
  if (j.is_discarded() || !j.is_object()) reject(400, "MalformedRequest", "body must be a JSON object");
  return j;
}

template <typename T>
T field(const json& j, const char* key, T fallback) {
  if (!j.contains(key)) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    reject(400, "MalformedRequest", std::string("bad value for '") + key + "'");
  }
}

PinnedGraph request_graph(const json& body, const Limits& limits) {
  const json& g = body.contains("graph") ? body.at("graph") : body;
  GraphDocument doc;
  try {
    doc = g.is_string() ? parse_document(g.get<std::string>()) : document_from_json(g);
  } catch (const GraphError& e) {
    reject(400, to_string(e.code()), e.what());
  }
  if (body.contains("pins")) doc.pins = field<std::vector<Vertex>>(body, "pins", {});
  if (doc.vertex_count < 0 || static_cast<std::size_t>(doc.vertex_count) > limits.max_vertices) {
    reject(413, "TooLarge",
           "graph has " + std::to_string(doc.vertex_count) + " vertices; the cap is " +
               std::to_string(limits.max_vertices),
           {{"max_vertices", limits.max_vertices}});
  }
  const ValidationReport report = validate(doc);
  if (!report.empty()) {
    reject(400, to_string(report.front().code), report.front().message,
           {{"validation", to_json(report)}});
  }
  return PinnedGraph::from_document(doc);
}

template <typename Fn>
Response guarded(Fn&& fn) {
  try {
    return {200, fn()};
  } catch (const Rejection& r) {
    return {r.status, {{"code", r.code}, {"message", r.message}, {"details", r.details}}};
  } catch (const MeasureError& e) {
    return {400, {{"code", to_string(e.code())}, {"message", e.what()}, {"details", json::object()}}};
  } catch (const std::invalid_argument& e) {
    return {400, {{"code", "BadParameter"}, {"message", e.what()}, {"details", json::object()}}};
  } catch (const std::exception& e) {
    return {500, {{"code", "Internal"}, {"message", e.what()}, {"details", json::object()}}};
  }
}

}  // namespace

Response analyze(const std::string& body, const Limits& limits) {
  return guarded([&] {
    const json req = parse_body(body);
    const PinnedGraph g = request_graph(req, limits);
    const auto dims = field<std::vector<int>>(req, "dims", {});
    const auto phi = parse_edge_vector_kind(field<std::string>(req, "phi", "euclidean"));
    json doc = analysis_document(g, dims, phi);
    doc["validation"] = json::array();
    return doc;
  });
}

Response dismantle(const std::string& body, const Limits& limits) {
  return guarded([&] {
    const json req = parse_body(body);
    const PinnedGraph g = request_graph(req, limits);
    if (!req.contains("k")) reject(400, "MalformedRequest", "missing 'k'");
    const int k = field<int>(req, "k", 0);
    if (k < 0) reject(400, "BadParameter", "k must be nonnegative");
    const auto seed = field<std::uint64_t>(req, "seed", 0);
    const ChoicePolicy policy = parse_policy(field<std::string>(req, "policy", "min-degree"), seed);
    json out = to_json(run_k_algorithm(g, k, policy));
    out["policy"] = to_string(policy.kind);
    out["seed"] = seed;
    return out;
  });
}

Response volume_sweep(const std::string& body, const Limits& limits) {
  return guarded([&] {
    const json req = parse_body(body);
    const PinnedGraph g = request_graph(req, limits);
    const int dim = field<int>(req, "dim", 2);
    const auto generators = field<std::vector<std::string>>(req, "generators", {});
    if (generators.empty()) reject(400, "MalformedRequest", "'generators' must be a nonempty list");
    if (generators.size() > limits.max_sweep_settings) {
      reject(413, "TooLarge", "too many generator settings");
    }
    ConfigOptions options;
    options.count = field<std::size_t>(req, "n", 10000);
    options.pool = field<std::size_t>(req, "pool", 0);
    options.gap = field<double>(req, "gap", options.gap);
    options.seed = field<std::uint64_t>(req, "seed", 1);
    options.phi = parse_edge_vector_kind(field<std::string>(req, "phi", "euclidean"));
    if (options.count < 1) reject(400, "BadParameter", "n must be positive");
    if (options.count > limits.max_samples || options.pool > limits.max_samples) {
      reject(413, "TooLarge", "sample count above the cap",
             {{"max_samples", limits.max_samples}});
    }
    const double delta = field<double>(req, "delta", 1.0 / 64);
    if (!(delta > 0.0)) reject(400, "BadParameter", "delta must be positive");

    json records = json::array();
    for (const std::string& text : generators) {
      const GeneratorSpec spec = parse_generator(text, dim);
      const ConfigSample sample = sample_configurations(g, spec, options);
      const VolumeEstimate est = estimate_image_volume(sample.image, delta);
      records.push_back({{"generator", describe(spec)},
                         {"dimension", spec.dimension()},
                         {"seed", options.seed},
                         {"n", options.count},
                         {"delta", est.delta},
                         {"N", est.covering_count},
                         {"estimate", est.estimate},
                         {"K", est.dimension},
                         {"exploratory", options.phi != EdgeVectorKind::Euclidean}});
    }
    return json{{"records", std::move(records)}};
  });
}

bool is_loopback_origin(const std::string& origin) {
  static const std::regex pattern(R"(^https?://(localhost|127\.0\.0\.1|\[::1\])(:[0-9]{1,5})?$)");
  return std::regex_match(origin, pattern);
}

struct Server::Impl {
  ServerOptions options;
  httplib::Server http;
  int port = -1;
};

Server::Server(ServerOptions options) : impl_(std::make_unique<Impl>()) {
  impl_->options = std::move(options);
  httplib::Server& http = impl_->http;
  const Limits limits = impl_->options.limits;

  auto route = [&http, limits](const char* path, Response (*handler)(const std::string&, const Limits&)) {
    http.Post(path, [handler, limits](const httplib::Request& req, httplib::Response& res) {
      const Response r = handler(req.body, limits);
      res.status = r.status;
      res.set_content(r.body.dump(), "application/json");
    });
  };
  route("/analyze", &analyze);
  route("/dismantle", &dismantle);
  route("/volume-sweep", &volume_sweep);

  http.Options(R"(.*)", [](const httplib::Request&, httplib::Response& res) { res.status = 204; });
  http.set_post_routing_handler([](const httplib::Request& req, httplib::Response& res) {
    const std::string origin = req.get_header_value("Origin");
    if (!origin.empty() && is_loopback_origin(origin)) {
      res.set_header("Access-Control-Allow-Origin", origin);
      res.set_header("Access-Control-Allow-Methods", "POST, OPTIONS");
      res.set_header("Access-Control-Allow-Headers", "Content-Type");
      res.set_header("Vary", "Origin");
    }
  });
  if (!impl_->options.static_dir.empty()) {
    http.set_mount_point("/", impl_->options.static_dir);
  }
}

Server::~Server() { stop(); }

int Server::bind() {
  if (impl_->options.port == 0) {
    impl_->port = impl_->http.bind_to_any_port(impl_->options.bind);
  } else {
    impl_->port = impl_->http.bind_to_port(impl_->options.bind, impl_->options.port)
                      ? impl_->options.port
                      : -1;
  }
  return impl_->port;
}

bool Server::listen() {
  if (impl_->port < 0 && bind() < 0) return false;
  return impl_->http.listen_after_bind();
}

void Server::stop() {
  if (impl_->http.is_running()) impl_->http.stop();
}

}  // namespace kappa::api
