#pragma once

#include <vector>

#include "mwc/graph.hpp"

namespace mwc {

/// Tree given by its edge set; edges stored as (u, v) with u < v, sorted.
struct RootedTree {
    Vertex root = kNoVertex;
    std::vector<Edge> edges;
    std::vector<Vertex> vertices;

    /// Builds a tree from edges; a lone root with no edges is allowed.
    static RootedTree from_edges(Vertex root, std::vector<Edge> edges);

    /// True when edges are connected, acyclic and contain the root.
    bool is_tree() const;
    bool contains(Vertex v) const;
};

/// Nearest-terminal decomposition produced by one multi-source shortest path pass.
struct VoronoiPartition {
    std::vector<Vertex> owner;
    std::vector<double> dist_to_owner;
    std::vector<Vertex> parent;  // towards the owner
    std::vector<Edge> boundary;  // edges whose endpoints have different owners
};

VoronoiPartition voronoi_partition(const WeightedGraph& wg, const QuerySet& terminals);

double tree_weight(const WeightedGraph& wg, const RootedTree& tree);

/// Minimum spanning forest by Kruskal with (weight, u, v) ordering; input edges must have u < v.
std::vector<Edge> kruskal(const WeightedGraph& wg, std::vector<Edge> edges);

/// Mehlhorn's 2-approximate Steiner tree. Rooted at the smallest terminal.
RootedTree mehlhorn_steiner(const WeightedGraph& wg, const QuerySet& terminals);

/// Exact Steiner tree by enumerating supersets of the terminals. Refuses when more
/// than `max_free` non-terminals would have to be enumerated.
RootedTree brute_force_steiner(const WeightedGraph& wg, const QuerySet& terminals, std::size_t max_free = 20);

/// Repeatedly removes leaves that are not terminals.
RootedTree prune_nonterminal_leaves(const RootedTree& tree, const QuerySet& terminals);

/// The unweighted Steiner-tree baseline: Mehlhorn on unit weights, returned as a connector.
Connector steiner_baseline_st(const Graph& g, const QuerySet& q);

}  // namespace mwc
