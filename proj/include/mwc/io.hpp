#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include <json.hpp>

#include "mwc/graph.hpp"

namespace mwc {

/// Whitespace-separated edge list. Lines starting with '#' or '%' are comments;
/// a comment of the form `# nodes N` (or `vertices N`) fixes the vertex count.
Graph parse_edge_list(std::istream& in);
Graph parse_edge_list_string(const std::string& text);

void write_edge_list(std::ostream& out, const Graph& g);

/// SteinLib STP instance. `weighted` is set only when some edge weight differs from 1.
struct StpInstance {
    Graph graph;
    std::optional<WeightedGraph> weighted;
    QuerySet terminals;
    std::string name;
};

/// Reads the `SECTION Graph` and `SECTION Terminals` parts of a SteinLib file.
/// Ids are shifted to 0-based; the original labels are kept on the graph.
StpInstance parse_stp(std::istream& in);
StpInstance parse_stp_string(const std::string& text);

/// Loads a graph from disk in `edgelist` or `stp` format.
StpInstance load_graph(const std::string& path, const std::string& format);

/// Graphviz rendering of G[solution]; query vertices filled dark, added vertices light.
std::string export_dot(const Graph& g, const QuerySet& highlight, const Connector& solution);

/// {"schema":1, "vertices":[...], "wiener":..., "size":..., "density":...}
nlohmann::json connector_to_json(const Connector& c, const Graph* g = nullptr);

}  // namespace mwc
