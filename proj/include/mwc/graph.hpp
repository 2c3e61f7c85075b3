#pragma once

#include <cstdint>
#include <limits>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace mwc {

using Vertex = std::uint32_t;
inline constexpr Vertex kNoVertex = std::numeric_limits<Vertex>::max();

using Edge = std::pair<Vertex, Vertex>;

class ParseError : public std::runtime_error {
  public:
    ParseError(const std::string& what, std::size_t line)
        : std::runtime_error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
    std::size_t line() const { return line_; }

  private:
    std::size_t line_;
};

/// Raised when a query set cannot be connected (terminals in different components).
class InfeasibleError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Raised by exhaustive solvers and exporters when an instance exceeds their size guard.
class TooLargeError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Simple undirected unweighted graph in compressed sparse row form.
/// Neighbour lists are sorted and free of duplicates and self-loops.
class Graph {
  public:
    Graph() : offsets_(1, 0) {}

    /// Builds a graph on `n` vertices. Self-loops are dropped and parallel edges collapsed.
    static Graph from_edges(std::size_t n, std::span<const Edge> edges);

    std::size_t num_vertices() const { return offsets_.size() - 1; }
    std::size_t num_edges() const { return targets_.size() / 2; }

    std::span<const Vertex> neighbors(Vertex v) const {
        return {targets_.data() + offsets_[v], targets_.data() + offsets_[v + 1]};
    }
    std::size_t degree(Vertex v) const { return offsets_[v + 1] - offsets_[v]; }
    bool has_edge(Vertex u, Vertex v) const;

    /// Position of `v` in the concatenated adjacency array of `u`; used to index per-arc data.
    std::size_t arc_index(Vertex u, Vertex v) const;
    std::size_t arc_begin(Vertex v) const { return offsets_[v]; }

    /// All edges as (u, v) with u < v, sorted.
    std::vector<Edge> edges() const;

    /// External labels (e.g. 1-based STP ids). Empty when ids are used as-is.
    const std::vector<std::int64_t>& labels() const { return labels_; }
    void set_labels(std::vector<std::int64_t> labels);

    /// Parallel edges and self-loops removed at construction.
    std::size_t dropped_self_loops() const { return dropped_self_loops_; }
    std::size_t dropped_duplicates() const { return dropped_duplicates_; }

    friend bool operator==(const Graph& a, const Graph& b) {
        return a.offsets_ == b.offsets_ && a.targets_ == b.targets_;
    }

  private:
    std::vector<std::size_t> offsets_;
    std::vector<Vertex> targets_;
    std::vector<std::int64_t> labels_;
    std::size_t dropped_self_loops_ = 0;
    std::size_t dropped_duplicates_ = 0;
};

/// Same topology as a Graph with a strictly positive weight per edge.
/// Weights are stored per arc, aligned with the topology's adjacency array.
class WeightedGraph {
  public:
    WeightedGraph() = default;
    WeightedGraph(std::shared_ptr<const Graph> topology, std::vector<double> arc_weights);

    /// Skips the positivity and symmetry scan; the caller vouches for both.
    struct Unchecked {};
    WeightedGraph(std::shared_ptr<const Graph> topology, std::vector<double> arc_weights, Unchecked)
        : topology_(std::move(topology)), weights_(std::move(arc_weights)) {}

    /// Weights given per edge in `topology.edges()` order.
    static WeightedGraph from_edge_weights(Graph topology, std::span<const double> edge_weights);
    /// Every edge gets weight 1.
    static WeightedGraph unit(Graph topology);

    const Graph& topology() const { return *topology_; }
    std::size_t num_vertices() const { return topology_->num_vertices(); }

    std::span<const double> arc_weights(Vertex v) const {
        return {weights_.data() + topology_->arc_begin(v), topology_->degree(v)};
    }
    double weight(Vertex u, Vertex v) const { return weights_[topology_->arc_index(u, v)]; }

  private:
    std::shared_ptr<const Graph> topology_;
    std::vector<double> weights_;
};

/// Single-source shortest path result. Unreachable vertices hold `infinity()`,
/// which must be tested with `reachable` before any arithmetic.
template <typename Dist>
struct DistanceMap {
    Vertex source = kNoVertex;
    std::vector<Dist> dist;
    std::vector<Vertex> parent;

    static constexpr Dist infinity() {
        if constexpr (std::numeric_limits<Dist>::has_infinity)
            return std::numeric_limits<Dist>::infinity();
        else
            return std::numeric_limits<Dist>::max();
    }
    bool reachable(Vertex v) const { return dist[v] != infinity(); }
};

using HopDistances = DistanceMap<std::int64_t>;
using WeightedDistances = DistanceMap<double>;

/// Sorted, deduplicated, nonempty set of query vertices.
class QuerySet {
  public:
    QuerySet() = default;
    explicit QuerySet(std::vector<Vertex> vertices);

    const std::vector<Vertex>& vertices() const { return vertices_; }
    std::size_t size() const { return vertices_.size(); }
    bool contains(Vertex v) const;

    /// Throws std::invalid_argument on out-of-range ids, InfeasibleError if the
    /// vertices do not share one connected component of `g`.
    void validate(const Graph& g) const;

  private:
    std::vector<Vertex> vertices_;
};

/// A connected induced subgraph containing the query set, with cached metrics.
struct Connector {
    std::vector<Vertex> vertices;
    std::uint64_t wiener = 0;
    std::size_t size = 0;
    double density = 0.0;
    std::optional<std::pair<Vertex, std::uint64_t>> root_cost;
};

/// Result of restricting a graph to a vertex subset. `to_global[i]` is the
/// original id of local vertex i; `to_local` is resolved by binary search.
struct InducedSubgraph {
    Graph graph;
    std::vector<Vertex> to_global;

    std::optional<Vertex> to_local(Vertex global) const;
};

InducedSubgraph induced_subgraph(const Graph& g, std::span<const Vertex> vertices);

/// Sorts and deduplicates, checking every id against `n`.
std::vector<Vertex> normalize_vertex_set(std::span<const Vertex> vertices, std::size_t n);

/// Vertices of the connected component containing `v`, sorted.
std::vector<Vertex> component_of(const Graph& g, Vertex v);

/// Component id per vertex and the number of components.
std::pair<std::vector<std::uint32_t>, std::uint32_t> connected_components(const Graph& g);

}  // namespace mwc
