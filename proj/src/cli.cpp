#include "kappa/cli.hpp"

#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "kappa/admissibility.hpp"
#include "kappa/api.hpp"
#include "kappa/certificate.hpp"
#include "kappa/graph_io.hpp"
#include "kappa/measure.hpp"
#include "kappa/serialize.hpp"
#include "kappa/threshold.hpp"

namespace kappa::cli {

using nlohmann::json;

namespace {

struct Common {
  std::string input;
  std::string output;
  std::string format;
  std::uint64_t seed = 1;
};

struct Options {
  Common common;
  std::string policy = "min-degree";
  std::string phi = "euclidean";
  std::vector<int> dims;
  int k = 0;
  std::vector<Vertex> cycle;
  std::vector<std::string> generators;
  std::vector<double> deltas;
  std::size_t n = 10000;
  std::size_t pool = 0;
  int dim = 2;
  double gap = 0.05;
  int port = 7474;
  std::string bind = "127.0.0.1";
  std::string static_dir;
};

// Bad input rather than a failure of the tool.
struct InvalidInput : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void add_common(CLI::App* sub, Common& c, bool needs_graph, const std::string& default_format) {
  if (needs_graph) {
    sub->add_option("-i,--input,--graph", c.input, "Graph file (JSON or edge list)")->required();
  }
  sub->add_option("-o,--output", c.output, "Write output to this file instead of stdout");
  sub->add_option("--format", c.format, "Output format")
      ->check(CLI::IsMember({"text", "structured"}))
      ->default_str(default_format);
  sub->add_option("--seed", c.seed, "Random seed")->capture_default_str();
}

std::string read_input(const Common& c);

PinnedGraph load(const Common& c) {
  GraphDocument doc = parse_document(read_input(c));
  const ValidationReport report = validate(doc);
  if (!report.empty()) {
    std::ostringstream os;
    os << c.input << ": " << to_string(report.front().code) << ": " << report.front().message;
    throw InvalidInput(os.str());
  }
  return PinnedGraph::from_document(doc);
}

bool structured(const Common& c) { return c.format == "structured"; }

void print_vertices(std::ostream& os, const std::vector<Vertex>& vs) {
  for (std::size_t i = 0; i < vs.size(); ++i) os << (i ? " " : "") << vs[i];
}

std::string threshold_text(const ThresholdReport& report) {
  std::ostringstream os;
  for (const ThresholdRow& row : report.rows) {
    os << "d=" << row.d << " " << format_rational(row.value);
    if (row.sharpened) os << " sharpened=" << format_rational(*row.sharpened);
    if (!row.valid) os << " (not valid: d <= k)";
    os << '\n';
  }
  return os.str();
}

std::string read_input(const Common& c) {
  try {
    return read_text_file(c.input);
  } catch (const std::exception& e) {
    throw InvalidInput(e.what());
  }
}

int cmd_validate(const Options& o, std::ostream& out) {
  const GraphDocument doc = parse_document(read_input(o.common));
  const ValidationReport report = validate(doc);
  if (structured(o.common)) {
    out << dump_document({{"valid", report.empty()}, {"validation", to_json(report)}});
  } else if (report.empty()) {
    out << "valid\n";
  } else {
    for (const Violation& v : report) out << to_string(v.code) << ": " << v.message << '\n';
  }
  return report.empty() ? kExitOk : kExitInvalid;
}

int cmd_kappa(const Options& o, std::ostream& out) {
  const PinnedGraph g = load(o.common);
  const ChoicePolicy policy = parse_policy(o.policy, o.common.seed);
  const AdmissibilityResult result = analyze_admissibility(g, policy);
  std::optional<DismantleTrace> below;
  if (result.kappa > 0) below = run_k_algorithm(g, result.kappa - 1, policy);
  if (structured(o.common)) {
    out << dump_document({{"kappa", result.kappa},
                          {"witness", to_json(result.trace)},
                          {"below", below ? to_json(*below) : json(nullptr)}});
    return kExitOk;
  }
  out << result.kappa << '\n';
  out << "witness: k=" << result.kappa << " deletes all " << result.trace.deletions.size()
      << " unpinned vertices";
  if (below) {
    out << "; k=" << below->k << " stops with " << below->remaining.size() << " left";
  }
  out << '\n';
  return kExitOk;
}

int cmd_order(const Options& o, std::ostream& out) {
  const PinnedGraph g = load(o.common);
  const AdmissibilityResult result =
      analyze_admissibility(g, parse_policy(o.policy, o.common.seed));
  const ConstructionOrder& order = result.order;
  if (structured(o.common)) {
    out << dump_document(to_json(order));
    return kExitOk;
  }
  out << "order:";
  for (std::size_t i = 0; i < order.order.size(); ++i) {
    if (i == order.pin_count && i > 0) out << " |";
    out << ' ' << order.order[i];
  }
  out << "\nback-degrees:";
  for (int b : order.back_degrees) out << ' ' << b;
  out << "\nmax back-degree: " << order.max_back_degree() << '\n';
  return kExitOk;
}

int cmd_certify(const Options& o, std::ostream& out) {
  const PinnedGraph g = load(o.common);
  const EdgeVectorKind phi = parse_edge_vector_kind(o.phi);
  if (structured(o.common)) {
    out << dump_document(analysis_document(g, o.dims, phi));
    return kExitOk;
  }
  const StarCertificate cert = certify(g, phi, parse_policy(o.policy, o.common.seed));
  out << render_plan(cert).text;
  out << "thresholds (k=" << cert.kappa << "):\n"
      << threshold_text(threshold_table(cert.kappa, o.dims.empty() ? default_dims(cert.kappa) : o.dims));
  return kExitOk;
}

int cmd_threshold(const Options& o, std::ostream& out) {
  const std::vector<int> dims = o.dims.empty() ? default_dims(o.k) : o.dims;
  const ThresholdReport report = threshold_table(o.k, dims);
  if (structured(o.common)) {
    out << dump_document({{"k", report.k}, {"thresholds", to_json(report)}});
  } else {
    out << threshold_text(report);
  }
  return kExitOk;
}

int cmd_split(const Options& o, std::ostream& out) {
  const PinnedGraph g = load(o.common);
  std::vector<Subgraph> parts;
  if (o.cycle.empty()) {
    parts = component_split(g);
  } else {
    if (o.cycle.size() != 2) throw InvalidInput("--cycle takes exactly two pins");
    auto [a, b] = cycle_split(g, o.cycle[0], o.cycle[1]);
    parts = {std::move(a), std::move(b)};
  }
  if (structured(o.common)) {
    json items = json::array();
    for (const Subgraph& s : parts) items.push_back({{"graph", to_json(s.graph)}, {"origin", s.origin}});
    out << dump_document({{"parts", std::move(items)}});
    return kExitOk;
  }
  for (std::size_t i = 0; i < parts.size(); ++i) {
    out << "part " << i + 1 << ": vertices ";
    print_vertices(out, parts[i].origin);
    std::vector<Vertex> pins;
    for (Vertex p : parts[i].graph.pins()) pins.push_back(parts[i].origin[p - 1]);
    out << "; pins ";
    print_vertices(out, pins);
    out << "; " << parts[i].graph.edge_count() << " edges; kappa "
        << admissibility_number(parts[i].graph) << '\n';
  }
  return kExitOk;
}

int cmd_sample(const Options& o, std::ostream& out) {
  if (o.generators.size() != 1) throw InvalidInput("sample takes exactly one --generator");
  const GeneratorSpec spec = parse_generator(o.generators.front(), o.dim);
  PointMatrix<double> points;
  std::string header;
  if (o.common.input.empty()) {
    const PointCloud cloud = sample_cloud(spec, o.n, o.common.seed);
    points = cloud.points;
    header = cloud_header(cloud);
  } else {
    const PinnedGraph g = load(o.common);
    ConfigOptions options{o.n, o.pool, o.gap, o.common.seed, parse_edge_vector_kind(o.phi)};
    const ConfigSample sample = sample_configurations(g, spec, options);
    points = sample.image;
    header = "dim=" + std::to_string(points.rows()) + " seed=" + std::to_string(o.common.seed) +
             " generator=" + describe(spec) + " count=" + std::to_string(points.cols()) +
             " phi=" + to_string(options.phi);
  }
  if (structured(o.common)) {
    json rows = json::array();
    for (Eigen::Index c = 0; c < points.cols(); ++c) {
      rows.push_back(std::vector<double>(points.col(c).data(), points.col(c).data() + points.rows()));
    }
    out << dump_document({{"header", header}, {"points", std::move(rows)}});
  } else {
    write_columns(out, points, header);
  }
  return kExitOk;
}

int cmd_volume(const Options& o, std::ostream& out) {
  const PinnedGraph g = load(o.common);
  const std::vector<double> deltas = o.deltas.empty() ? std::vector<double>{1.0 / 64} : o.deltas;
  ConfigOptions options{o.n, o.pool, o.gap, o.common.seed, parse_edge_vector_kind(o.phi)};
  json records = json::array();
  for (const std::string& text : o.generators) {
    const GeneratorSpec spec = parse_generator(text, o.dim);
    const ConfigSample sample = sample_configurations(g, spec, options);
    for (double delta : deltas) {
      if (!(delta > 0.0)) throw InvalidInput("--delta must be positive");
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
  }
  if (structured(o.common)) {
    out << dump_document({{"records", std::move(records)}});
    return kExitOk;
  }
  for (const json& r : records) {
    out << "delta=" << r["delta"].dump() << " N=" << r["N"].dump() << " estimate=" << r["estimate"].dump()
        << " K=" << r["K"].dump() << " generator=" << r["generator"].get<std::string>()
        << (r["exploratory"].get<bool>() ? " exploratory" : "") << '\n';
  }
  return kExitOk;
}

int cmd_serve(const Options& o, std::ostream& out) {
  api::Server server({o.bind, o.port, {}, o.static_dir});
  const int port = server.bind();
  if (port < 0) throw InvalidInput("cannot bind " + o.bind + ":" + std::to_string(o.port));
  out << "listening on http://" << o.bind << ":" << port << std::endl;
  return server.listen() ? kExitOk : kExitInternal;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Admissibility analysis of pinned graphs and configuration-set probes", "kappa-lab"};
  app.require_subcommand(1, 1);
  Options o;

  auto* validate_cmd = app.add_subcommand("validate", "Check a graph file against the pinned-graph rules");
  add_common(validate_cmd, o.common, true, "text");

  auto* kappa_cmd = app.add_subcommand("kappa", "Print the admissibility number and its witness");
  add_common(kappa_cmd, o.common, true, "text");

  auto* order_cmd = app.add_subcommand("order", "Print a kappa-optimal construction order");
  add_common(order_cmd, o.common, true, "text");

  auto* certify_cmd = app.add_subcommand("certify", "Emit the star certificate document");
  add_common(certify_cmd, o.common, true, "structured");
  certify_cmd->add_option("--dims", o.dims, "Ambient dimensions for the threshold table")->delimiter(',');
  certify_cmd->add_option("--phi", o.phi, "Edge vector function")
      ->check(CLI::IsMember({"euclidean", "dot_product", "dot-product", "dot"}))
      ->capture_default_str();

  auto* threshold_cmd = app.add_subcommand("threshold", "Tabulate the (d + k) / 2 thresholds");
  add_common(threshold_cmd, o.common, false, "text");
  threshold_cmd->add_option("--k", o.k, "Admissibility level")->required()->check(CLI::NonNegativeNumber);
  threshold_cmd->add_option("--dims", o.dims, "Ambient dimensions")->delimiter(',')->check(CLI::PositiveNumber);

  auto* split_cmd = app.add_subcommand("split", "Split into components, or a cycle at two pins");
  add_common(split_cmd, o.common, true, "text");
  split_cmd->add_option("--cycle", o.cycle, "Two pins of a cycle, as A,B")->delimiter(',');

  auto* sample_cmd = app.add_subcommand("sample", "Dump a point cloud, or configuration images of a graph");
  add_common(sample_cmd, o.common, false, "text");
  sample_cmd->add_option("-i,--input,--graph", o.common.input, "Graph file; omit to dump the cloud");

  auto* volume_cmd = app.add_subcommand("volume", "Box-count the configuration image");
  add_common(volume_cmd, o.common, true, "text");
  volume_cmd->add_option("--delta", o.deltas, "Cell sizes")->delimiter(',')->check(CLI::PositiveNumber);

  for (CLI::App* sub : {sample_cmd, volume_cmd}) {
    sub->add_option("--generator", o.generators,
                    "uniform | cantor:RATIO[:LEVELS] | sphere:RADIUS[:c1,c2,...]")
        ->required();
    sub->add_option("--n", o.n, "Number of samples")->capture_default_str()->check(CLI::PositiveNumber);
    sub->add_option("--pool", o.pool, "Cloud size for configuration sampling (0: same as --n)");
    sub->add_option("--dim", o.dim, "Ambient dimension")->capture_default_str()->check(CLI::PositiveNumber);
    sub->add_option("--gap", o.gap, "Separation gap between pin and free clouds")->capture_default_str();
    sub->add_option("--phi", o.phi, "Edge vector function")
        ->check(CLI::IsMember({"euclidean", "dot_product", "dot-product", "dot"}))
        ->capture_default_str();
  }
  for (CLI::App* sub : {kappa_cmd, order_cmd, certify_cmd}) {
    sub->add_option("--policy", o.policy, "Dismantling choice policy")
        ->check(CLI::IsMember({"min-degree", "first-eligible", "random"}))
        ->capture_default_str();
  }

  auto* serve_cmd = app.add_subcommand("serve", "Start the local HTTP explorer API");
  serve_cmd->add_option("--port", o.port, "TCP port")->capture_default_str()->check(CLI::Range(0, 65535));
  serve_cmd->add_option("--bind", o.bind, "Bind address")->capture_default_str();
  serve_cmd->add_option("--static", o.static_dir, "Directory of UI assets to serve at /");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInvalid;
  }

  if (o.common.format.empty()) o.common.format = *certify_cmd ? "structured" : "text";

  std::unique_ptr<std::ofstream> file;
  std::ostream* sink = &out;
  if (!o.common.output.empty()) {
    file = std::make_unique<std::ofstream>(o.common.output, std::ios::binary);
    if (!*file) {
      err << "error: cannot write " << o.common.output << '\n';
      return kExitInvalid;
    }
    sink = file.get();
  }

  try {
    if (*validate_cmd) return cmd_validate(o, *sink);
    if (*kappa_cmd) return cmd_kappa(o, *sink);
    if (*order_cmd) return cmd_order(o, *sink);
    if (*certify_cmd) return cmd_certify(o, *sink);
    if (*threshold_cmd) return cmd_threshold(o, *sink);
    if (*split_cmd) return cmd_split(o, *sink);
    if (*sample_cmd) return cmd_sample(o, *sink);
    if (*volume_cmd) return cmd_volume(o, *sink);
    if (*serve_cmd) return cmd_serve(o, *sink);
  } catch (const InvalidInput& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const GraphError& e) {
    err << "error: " << to_string(e.code()) << ": " << e.what() << '\n';
    return kExitInvalid;
  } catch (const CertificateError& e) {
    err << "error: " << to_string(e.code()) << ": " << e.what() << '\n';
    return kExitInvalid;
  } catch (const MeasureError& e) {
    err << "error: " << to_string(e.code()) << ": " << e.what() << '\n';
    return kExitInvalid;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
  return kExitInternal;
}

}  // namespace kappa::cli
