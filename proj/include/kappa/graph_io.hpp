#ifndef KAPPA_GRAPH_IO_HPP
#define KAPPA_GRAPH_IO_HPP

#include <filesystem>
#include <string>
#include <string_view>

#include <json.hpp>

#include "kappa/graph.hpp"

namespace kappa {

// Graph documents come in two encodings:
//
//   JSON (canonical):  {"vertices": 4 | ["a","b",...],
//                       "edges": [[1,3],[1,4],...],
//                       "pins": [1,2]}
//
//   edge list:         4
//                      1 3
//                      1 4
//                      pins: 1 2
//
// Vertices are 1-based. '#' starts a comment in the edge-list form.

/// Syntax only; throws GraphError(MalformedDocument). No invariant checks.
GraphDocument parse_document(std::string_view text);
GraphDocument document_from_json(const nlohmann::json& j);

/// parse_document followed by validation.
PinnedGraph parse_graph(std::string_view text);
PinnedGraph load_graph(const std::filesystem::path& path);

nlohmann::json to_json(const PinnedGraph& g);
nlohmann::json to_json(const ValidationReport& report);

/// Canonical JSON text: sorted edges, pins in stored order, one line.
std::string serialize_graph(const PinnedGraph& g);

std::string read_text_file(const std::filesystem::path& path);

}  // namespace kappa

#endif  // KAPPA_GRAPH_IO_HPP
