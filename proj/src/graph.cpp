#include "mwc/graph.hpp"

#include <algorithm>
#include <queue>

namespace mwc {

Graph Graph::from_edges(std::size_t n, std::span<const Edge> edges) {
    Graph g;
    std::vector<Edge> arcs;
    arcs.reserve(edges.size() * 2);
    for (auto [u, v] : edges) {
        if (u >= n || v >= n)
            throw std::invalid_argument("edge endpoint out of range: " + std::to_string(std::max(u, v)));
        if (u == v) {
            ++g.dropped_self_loops_;
            continue;
        }
        arcs.emplace_back(u, v);
        arcs.emplace_back(v, u);
    }
    std::sort(arcs.begin(), arcs.end());
    auto last = std::unique(arcs.begin(), arcs.end());
    g.dropped_duplicates_ = static_cast<std::size_t>(arcs.end() - last) / 2;
    arcs.erase(last, arcs.end());

    g.offsets_.assign(n + 1, 0);
    g.targets_.reserve(arcs.size());
    for (auto [u, v] : arcs) {
        ++g.offsets_[u + 1];
        g.targets_.push_back(v);
    }
    for (std::size_t i = 0; i < n; ++i) g.offsets_[i + 1] += g.offsets_[i];
    return g;
}

bool Graph::has_edge(Vertex u, Vertex v) const {
    auto nb = neighbors(u);
    return std::binary_search(nb.begin(), nb.end(), v);
}

std::size_t Graph::arc_index(Vertex u, Vertex v) const {
    auto nb = neighbors(u);
    auto it = std::lower_bound(nb.begin(), nb.end(), v);
    if (it == nb.end() || *it != v)
        throw std::invalid_argument("no edge (" + std::to_string(u) + ", " + std::to_string(v) + ")");
    return offsets_[u] + static_cast<std::size_t>(it - nb.begin());
}

std::vector<Edge> Graph::edges() const {
    std::vector<Edge> out;
    out.reserve(num_edges());
    for (Vertex u = 0; u < num_vertices(); ++u)
        for (Vertex v : neighbors(u))
            if (u < v) out.emplace_back(u, v);
    return out;
}

void Graph::set_labels(std::vector<std::int64_t> labels) {
    if (!labels.empty() && labels.size() != num_vertices())
        throw std::invalid_argument("label count does not match vertex count");
    labels_ = std::move(labels);
}

WeightedGraph::WeightedGraph(std::shared_ptr<const Graph> topology, std::vector<double> arc_weights)
    : topology_(std::move(topology)), weights_(std::move(arc_weights)) {
    if (weights_.size() != 2 * topology_->num_edges())
        throw std::invalid_argument("arc weight count does not match topology");
    for (Vertex u = 0; u < topology_->num_vertices(); ++u) {
        auto nb = topology_->neighbors(u);
        for (std::size_t i = 0; i < nb.size(); ++i) {
            double w = weights_[topology_->arc_begin(u) + i];
            if (!(w > 0.0)) throw std::invalid_argument("edge weights must be strictly positive");
            if (u < nb[i] && w != weight(nb[i], u)) throw std::invalid_argument("asymmetric edge weight");
        }
    }
}

WeightedGraph WeightedGraph::from_edge_weights(Graph topology, std::span<const double> edge_weights) {
    auto edges = topology.edges();
    if (edges.size() != edge_weights.size())
        throw std::invalid_argument("edge weight count does not match edge count");
    std::vector<double> arcs(2 * edges.size());
    for (std::size_t i = 0; i < edges.size(); ++i) {
        auto [u, v] = edges[i];
        arcs[topology.arc_index(u, v)] = edge_weights[i];
        arcs[topology.arc_index(v, u)] = edge_weights[i];
    }
    return WeightedGraph(std::make_shared<const Graph>(std::move(topology)), std::move(arcs));
}

WeightedGraph WeightedGraph::unit(Graph topology) {
    std::vector<double> arcs(2 * topology.num_edges(), 1.0);
    return WeightedGraph(std::make_shared<const Graph>(std::move(topology)), std::move(arcs));
}

QuerySet::QuerySet(std::vector<Vertex> vertices) : vertices_(std::move(vertices)) {
    std::sort(vertices_.begin(), vertices_.end());
    vertices_.erase(std::unique(vertices_.begin(), vertices_.end()), vertices_.end());
    if (vertices_.empty()) throw std::invalid_argument("query set must be nonempty");
}

bool QuerySet::contains(Vertex v) const {
    return std::binary_search(vertices_.begin(), vertices_.end(), v);
}

void QuerySet::validate(const Graph& g) const {
    if (vertices_.empty()) throw std::invalid_argument("query set must be nonempty");
    if (vertices_.back() >= g.num_vertices())
        throw std::invalid_argument("query vertex " + std::to_string(vertices_.back()) + " out of range");
    auto comp = component_of(g, vertices_.front());
    for (Vertex q : vertices_)
        if (!std::binary_search(comp.begin(), comp.end(), q))
            throw InfeasibleError("query vertices span more than one connected component");
}

std::optional<Vertex> InducedSubgraph::to_local(Vertex global) const {
    auto it = std::lower_bound(to_global.begin(), to_global.end(), global);
    if (it == to_global.end() || *it != global) return std::nullopt;
    return static_cast<Vertex>(it - to_global.begin());
}

std::vector<Vertex> normalize_vertex_set(std::span<const Vertex> vertices, std::size_t n) {
    std::vector<Vertex> out(vertices.begin(), vertices.end());
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    if (!out.empty() && out.back() >= n)
        throw std::invalid_argument("vertex " + std::to_string(out.back()) + " out of range");
    return out;
}

InducedSubgraph induced_subgraph(const Graph& g, std::span<const Vertex> vertices) {
    InducedSubgraph sub;
    sub.to_global = normalize_vertex_set(vertices, g.num_vertices());
    std::vector<Edge> edges;
    for (Vertex i = 0; i < sub.to_global.size(); ++i) {
        for (Vertex w : g.neighbors(sub.to_global[i])) {
            auto j = sub.to_local(w);
            if (j && i < *j) edges.emplace_back(i, *j);
        }
    }
    sub.graph = Graph::from_edges(sub.to_global.size(), edges);
    return sub;
}

std::vector<Vertex> component_of(const Graph& g, Vertex v) {
    std::vector<char> seen(g.num_vertices(), 0);
    std::vector<Vertex> out{v};
    seen[v] = 1;
    for (std::size_t head = 0; head < out.size(); ++head)
        for (Vertex w : g.neighbors(out[head]))
            if (!seen[w]) {
                seen[w] = 1;
                out.push_back(w);
            }
    std::sort(out.begin(), out.end());
    return out;
}

std::pair<std::vector<std::uint32_t>, std::uint32_t> connected_components(const Graph& g) {
    constexpr auto kUnset = std::numeric_limits<std::uint32_t>::max();
    std::vector<std::uint32_t> comp(g.num_vertices(), kUnset);
    std::uint32_t count = 0;
    std::vector<Vertex> stack;
    for (Vertex s = 0; s < g.num_vertices(); ++s) {
        if (comp[s] != kUnset) continue;
        comp[s] = count;
        stack.push_back(s);
        while (!stack.empty()) {
            Vertex u = stack.back();
            stack.pop_back();
            for (Vertex w : g.neighbors(u))
                if (comp[w] == kUnset) {
                    comp[w] = count;
                    stack.push_back(w);
                }
        }
        ++count;
    }
    return {std::move(comp), count};
}

}  // namespace mwc
