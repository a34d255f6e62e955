#include "kappa/graph_io.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

namespace kappa {

using nlohmann::json;

namespace {

[[noreturn]] void malformed(const std::string& what) {
  throw GraphError(GraphErrc::MalformedDocument, what);
}

int as_int(const json& j, const char* where) {
  if (!j.is_number_integer()) malformed(std::string(where) + ": expected an integer");
  return j.get<int>();
}

GraphDocument parse_edge_list(std::string_view text) {
  GraphDocument doc;
  std::istringstream in{std::string(text)};
  std::string line;
  bool have_count = false;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string first;
    if (!(ls >> first)) continue;
    auto where = "line " + std::to_string(line_no);
    if (first == "pins:" || first == "pins") {
      std::string tok;
      while (ls >> tok) {
        if (tok == ":") continue;
        try {
          std::size_t used = 0;
          int p = std::stoi(tok, &used);
          if (used != tok.size()) malformed(where + ": bad pin '" + tok + "'");
          doc.pins.push_back(p);
        } catch (const std::logic_error&) {
          malformed(where + ": bad pin '" + tok + "'");
        }
      }
      continue;
    }
    std::istringstream nums(line);
    long long a = 0, b = 0;
    if (!have_count) {
      if (!(nums >> a) || a < 0) malformed(where + ": expected vertex count");
      std::string rest;
      if (nums >> rest) malformed(where + ": trailing data after vertex count");
      doc.vertex_count = static_cast<int>(a);
      have_count = true;
      continue;
    }
    if (!(nums >> a >> b)) malformed(where + ": expected 'i j'");
    std::string rest;
    if (nums >> rest) malformed(where + ": trailing data after edge");
    doc.edges.emplace_back(static_cast<Vertex>(a), static_cast<Vertex>(b));
  }
  if (!have_count) malformed("missing vertex count");
  return doc;
}

}  // namespace

GraphDocument document_from_json(const json& j) {
  if (!j.is_object()) malformed("graph document must be a JSON object");
  GraphDocument doc;
  if (!j.contains("vertices")) malformed("missing key 'vertices'");
  const json& vs = j.at("vertices");
  if (vs.is_number_integer()) {
    doc.vertex_count = vs.get<int>();
  } else if (vs.is_array()) {
    for (const json& label : vs) {
      if (label.is_string()) {
        doc.labels.push_back(label.get<std::string>());
      } else if (label.is_number_integer()) {
        doc.labels.push_back(std::to_string(label.get<long long>()));
      } else {
        malformed("vertex labels must be strings or integers");
      }
    }
    doc.vertex_count = static_cast<int>(doc.labels.size());
  } else {
    malformed("'vertices' must be an integer or a list of labels");
  }
  if (j.contains("edges")) {
    const json& es = j.at("edges");
    if (!es.is_array()) malformed("'edges' must be a list");
    for (const json& e : es) {
      if (!e.is_array() || e.size() != 2) malformed("each edge must be a 2-element list");
      doc.edges.emplace_back(as_int(e[0], "edge"), as_int(e[1], "edge"));
    }
  }
  if (j.contains("pins")) {
    const json& ps = j.at("pins");
    if (!ps.is_array()) malformed("'pins' must be a list");
    for (const json& p : ps) doc.pins.push_back(as_int(p, "pin"));
  }
  return doc;
}

GraphDocument parse_document(std::string_view text) {
  auto start = text.find_first_not_of(" \t\r\n");
  if (start != std::string_view::npos && text[start] == '{') {
    json j = json::parse(text.begin(), text.end(), nullptr, /*allow_exceptions=*/false);
    if (j.is_discarded()) malformed("invalid JSON");
    return document_from_json(j);
  }
  return parse_edge_list(text);
}

PinnedGraph parse_graph(std::string_view text) {
  return PinnedGraph::from_document(parse_document(text));
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

PinnedGraph load_graph(const std::filesystem::path& path) {
  return parse_graph(read_text_file(path));
}

json to_json(const PinnedGraph& g) {
  json j;
  if (g.has_labels()) {
    j["vertices"] = g.labels();
  } else {
    j["vertices"] = g.vertex_count();
  }
  json edges = json::array();
  for (const Edge& e : g.edges()) edges.push_back({e.u, e.v});
  j["edges"] = std::move(edges);
  j["pins"] = g.pins();
  return j;
}

json to_json(const ValidationReport& report) {
  json out = json::array();
  for (const Violation& v : report) {
    json item{{"code", to_string(v.code)}, {"message", v.message}};
    if (v.edge.u != 0 || v.edge.v != 0) item["edge"] = {v.edge.u, v.edge.v};
    out.push_back(std::move(item));
  }
  return out;
}

std::string serialize_graph(const PinnedGraph& g) { return to_json(g).dump(); }

}  // namespace kappa
