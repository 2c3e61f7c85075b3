#pragma once

#include <algorithm>

#include "mwc/graph.hpp"

namespace mwc {

/// Unweighted single-source shortest paths. Each reachable vertex's parent is
/// its smallest-id neighbour one level closer to the source.
HopDistances bfs_sssp(const Graph& g, Vertex source);

/// Weighted single-source shortest paths (binary-heap Dijkstra).
WeightedDistances dijkstra_sssp(const WeightedGraph& wg, Vertex source);

/// Vertices on the parent chain from `target` back to the source, ordered source first.
template <typename Dist>
std::vector<Vertex> path_to(const DistanceMap<Dist>& dm, Vertex target) {
    if (!dm.reachable(target)) throw InfeasibleError("target unreachable from source");
    std::vector<Vertex> path;
    for (Vertex v = target; v != kNoVertex; v = dm.parent[v]) path.push_back(v);
    std::reverse(path.begin(), path.end());
    return path;
}

}  // namespace mwc
