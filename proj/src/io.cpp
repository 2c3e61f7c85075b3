#include "mwc/io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <regex>
#include <sstream>

namespace mwc {

namespace {

std::vector<std::string> split_ws(const std::string& line) {
    std::istringstream ss(line);
    std::vector<std::string> tokens;
    for (std::string t; ss >> t;) tokens.push_back(std::move(t));
    return tokens;
}

template <typename T>
std::optional<T> parse_number(const std::string& token) {
    T value{};
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc{} || ptr != token.data() + token.size()) return std::nullopt;
    return value;
}

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
    return s;
}

}  // namespace

Graph parse_edge_list(std::istream& in) {
    static const std::regex kHeader(R"(^[#%]\s*(nodes|vertices|n)\s*[:=]?\s*(\d+)\s*$)", std::regex::icase);
    std::vector<Edge> edges;
    std::optional<std::size_t> declared;
    std::size_t max_id_plus_one = 0;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        if (line[first] == '#' || line[first] == '%') {
            std::smatch m;
            std::string trimmed = line.substr(first);
            while (!trimmed.empty() && (trimmed.back() == '\r' || trimmed.back() == ' ')) trimmed.pop_back();
            if (std::regex_match(trimmed, m, kHeader)) declared = std::stoull(m[2].str());
            continue;
        }
        auto tokens = split_ws(line);
        if (tokens.size() < 2) throw ParseError("expected two vertex ids", lineno);
        auto u = parse_number<std::uint64_t>(tokens[0]);
        auto v = parse_number<std::uint64_t>(tokens[1]);
        if (!u || !v) throw ParseError("malformed vertex id", lineno);
        if (*u >= kNoVertex || *v >= kNoVertex) throw ParseError("vertex id too large", lineno);
        edges.emplace_back(static_cast<Vertex>(*u), static_cast<Vertex>(*v));
        max_id_plus_one = std::max<std::size_t>(max_id_plus_one, std::max(*u, *v) + 1);
    }
    std::size_t n = max_id_plus_one;
    if (declared) {
        if (*declared < max_id_plus_one) throw ParseError("declared vertex count smaller than largest id", 0);
        n = *declared;
    }
    return Graph::from_edges(n, edges);
}

Graph parse_edge_list_string(const std::string& text) {
    std::istringstream in(text);
    return parse_edge_list(in);
}

void write_edge_list(std::ostream& out, const Graph& g) {
    out << "# nodes " << g.num_vertices() << '\n';
    for (auto [u, v] : g.edges()) out << u << ' ' << v << '\n';
}

StpInstance parse_stp(std::istream& in) {
    enum class Section { None, Comment, Graph, Terminals, Other };
    Section section = Section::None;
    bool saw_graph = false, saw_terminals = false;
    std::optional<std::size_t> nodes, declared_edges, declared_terminals;
    std::map<Edge, double> weights;
    std::vector<Vertex> terminals;
    std::string name;

    auto fail = [](const std::string& sec, const std::string& msg, std::size_t lineno) {
        return ParseError("SECTION " + sec + ": " + msg, lineno);
    };
    auto parse_id = [&](const std::string& tok, const std::string& sec, std::size_t lineno) -> Vertex {
        auto id = parse_number<std::uint64_t>(tok);
        if (!id) throw fail(sec, "malformed vertex id '" + tok + "'", lineno);
        if (!nodes) throw fail(sec, "vertex id before Nodes declaration", lineno);
        if (*id < 1 || *id > *nodes) throw fail(sec, "vertex id " + tok + " out of range", lineno);
        return static_cast<Vertex>(*id - 1);
    };

    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto tokens = split_ws(line);
        if (tokens.empty()) continue;
        auto key = lower(tokens[0]);
        if (key == "section") {
            if (tokens.size() < 2) throw ParseError("SECTION without name", lineno);
            auto sec = lower(tokens[1]);
            if (sec == "graph") {
                section = Section::Graph;
                saw_graph = true;
            } else if (sec == "terminals") {
                section = Section::Terminals;
                saw_terminals = true;
            } else if (sec == "comment") {
                section = Section::Comment;
            } else {
                section = Section::Other;
            }
            continue;
        }
        if (key == "end") {
            section = Section::None;
            continue;
        }
        if (key == "eof") break;

        switch (section) {
        case Section::Comment:
            if (key == "name" && tokens.size() >= 2) {
                auto pos = line.find('"');
                auto end = line.rfind('"');
                name = (pos != std::string::npos && end > pos) ? line.substr(pos + 1, end - pos - 1) : tokens[1];
            }
            break;
        case Section::Graph:
            if (key == "nodes" && tokens.size() >= 2) {
                nodes = parse_number<std::size_t>(tokens[1]);
                if (!nodes) throw fail("Graph", "malformed Nodes count", lineno);
            } else if ((key == "edges" || key == "arcs") && tokens.size() >= 2) {
                declared_edges = parse_number<std::size_t>(tokens[1]);
            } else if (key == "e" || key == "a") {
                if (tokens.size() < 3) throw fail("Graph", "edge line needs two endpoints", lineno);
                Vertex u = parse_id(tokens[1], "Graph", lineno);
                Vertex v = parse_id(tokens[2], "Graph", lineno);
                double w = 1.0;
                if (tokens.size() >= 4) {
                    auto parsed = parse_number<double>(tokens[3]);
                    if (!parsed) throw fail("Graph", "malformed weight", lineno);
                    w = *parsed;
                }
                if (!(w > 0.0)) throw fail("Graph", "non-positive edge weight", lineno);
                if (u == v) break;
                Edge e{std::min(u, v), std::max(u, v)};
                auto [it, inserted] = weights.emplace(e, w);
                if (!inserted) it->second = std::min(it->second, w);
            }
            break;
        case Section::Terminals:
            if (key == "terminals" && tokens.size() >= 2) {
                declared_terminals = parse_number<std::size_t>(tokens[1]);
            } else if (key == "t") {
                if (tokens.size() < 2) throw fail("Terminals", "terminal line needs a vertex", lineno);
                terminals.push_back(parse_id(tokens[1], "Terminals", lineno));
            }
            break;
        case Section::None:
        case Section::Other:
            break;
        }
    }
    if (!saw_graph) throw ParseError("missing SECTION Graph", 0);
    if (!saw_terminals) throw ParseError("missing SECTION Terminals", 0);
    if (!nodes) throw ParseError("SECTION Graph: missing Nodes declaration", 0);
    if (terminals.empty()) throw ParseError("SECTION Terminals: no terminals", 0);
    if (declared_terminals && *declared_terminals != terminals.size())
        throw ParseError("SECTION Terminals: declared " + std::to_string(*declared_terminals) + " terminals, found " +
                             std::to_string(terminals.size()),
                         0);

    StpInstance inst;
    inst.name = name;
    std::vector<Edge> edges;
    std::vector<double> w;
    bool unit = true;
    for (auto& [e, wt] : weights) {
        edges.push_back(e);
        w.push_back(wt);
        unit = unit && wt == 1.0;
    }
    inst.graph = Graph::from_edges(*nodes, edges);
    std::vector<std::int64_t> labels(*nodes);
    for (std::size_t i = 0; i < *nodes; ++i) labels[i] = static_cast<std::int64_t>(i + 1);
    inst.graph.set_labels(std::move(labels));
    // `weights` is keyed by sorted (u, v), which is exactly the order of Graph::edges().
    if (!unit) inst.weighted = WeightedGraph::from_edge_weights(inst.graph, w);
    inst.terminals = QuerySet(std::move(terminals));
    return inst;
}

StpInstance parse_stp_string(const std::string& text) {
    std::istringstream in(text);
    return parse_stp(in);
}

StpInstance load_graph(const std::string& path, const std::string& format) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    if (format == "stp") return parse_stp(in);
    if (format != "edgelist") throw std::invalid_argument("unknown graph format: " + format);
    StpInstance inst;
    inst.graph = parse_edge_list(in);
    return inst;
}

std::string export_dot(const Graph& g, const QuerySet& highlight, const Connector& solution) {
    for (Vertex q : highlight.vertices())
        if (!std::binary_search(solution.vertices.begin(), solution.vertices.end(), q))
            throw std::invalid_argument("solution does not contain the highlighted query vertices");
    auto sub = induced_subgraph(g, solution.vertices);
    const auto& labels = g.labels();
    std::ostringstream out;
    out << "graph connector {\n";
    out << "  node [shape=circle, style=filled];\n";
    for (Vertex v : sub.to_global) {
        out << "  " << v << " [label=\"" << (labels.empty() ? static_cast<std::int64_t>(v) : labels[v]) << "\"";
        if (highlight.contains(v))
            out << ", fillcolor=\"#404040\", fontcolor=white";
        else
            out << ", fillcolor=\"#d9d9d9\"";
        out << "];\n";
    }
    for (auto [u, v] : sub.graph.edges()) out << "  " << sub.to_global[u] << " -- " << sub.to_global[v] << ";\n";
    out << "}\n";
    return out.str();
}

nlohmann::json connector_to_json(const Connector& c, const Graph* g) {
    nlohmann::json j;
    j["schema"] = 1;
    j["vertices"] = c.vertices;
    j["wiener"] = c.wiener;
    j["size"] = c.size;
    j["density"] = c.density;
    if (c.root_cost) j["root_cost"] = {{"root", c.root_cost->first}, {"A", c.root_cost->second}};
    if (g && !g->labels().empty()) {
        std::vector<std::int64_t> labels;
        for (Vertex v : c.vertices) labels.push_back(g->labels()[v]);
        j["labels"] = labels;
    }
    return j;
}

}  // namespace mwc
