#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "mwc/graph.hpp"

namespace mwc {

/// Sum of shortest-path distances over unordered pairs of G[S], measured
/// inside the induced subgraph. Throws InfeasibleError if G[S] is disconnected.
std::uint64_t wiener_index(const Graph& g, std::span<const Vertex> vertices);

/// Wiener index of a whole (connected) graph.
std::uint64_t wiener_index(const Graph& g);

/// |S| times the sum of induced distances from `root` to every vertex of S.
std::uint64_t root_cost_A(const Graph& g, std::span<const Vertex> vertices, Vertex root);

/// Sum of induced distances from `root` over S.
std::uint64_t induced_distance_sum(const Graph& g, std::span<const Vertex> vertices, Vertex root);

/// |E[S]| / C(|S|, 2); zero when |S| < 2.
double induced_density(const Graph& g, std::span<const Vertex> vertices);

/// Exact betweenness (Brandes accumulation over BFS DAGs), normalized by
/// (n-1)(n-2)/2 for n >= 3 and zero otherwise.
std::vector<double> brandes_betweenness(const Graph& g);

/// Builds a Connector for S, computing W, |S| and density on G[S].
Connector make_connector(const Graph& g, std::span<const Vertex> vertices);

}  // namespace mwc
