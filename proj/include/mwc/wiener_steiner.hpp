#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "mwc/graph.hpp"
#include "mwc/steiner.hpp"

namespace mwc {

/// Which powers t of (1 + beta) are tried as the balance parameter lambda.
enum class LambdaPolicy {
    Bracketing,    // every power bracketing [1/sqrt(2), sqrt(|V|)]
    PositiveOnly,  // t = 1 .. ceil(log_{1+beta} |V|)
    Union,         // both of the above
};

struct AlgorithmConfig {
    double beta = 1.0;
    LambdaPolicy lambda_policy = LambdaPolicy::Union;
    /// Candidates up to this size are ranked by their exact Wiener index, larger ones by A(S, r).
    std::size_t exact_selection_size_cap = 1000;
    /// Try every vertex of the query component as root instead of only query vertices.
    bool roots_all_vertices = false;
    /// Run local_prune on the selected connector.
    bool prune = false;
    unsigned threads = 1;
};

struct CandidateSolution {
    std::vector<Vertex> vertices;
    Vertex root = kNoVertex;
    int lambda_exponent = 0;
    double lambda = 1.0;
    std::uint64_t cost_A = 0;
    std::optional<std::uint64_t> cost_W;
};

struct WienerSteinerResult {
    Connector connector;
    std::vector<CandidateSolution> candidates;  // deduplicated pool, sorted by vertex set
};

/// Exponents t such that lambda = (1 + beta)^t, sorted ascending and unique.
std::vector<int> lambda_exponents(std::size_t num_vertices, double beta, LambdaPolicy policy);

/// |S| * sum of d_G(u, r) over S, with distances taken in the full graph.
std::uint64_t cost_A_tilde(std::span<const Vertex> vertices, Vertex root, const HopDistances& dist_root);

/// lambda * |S| + (sum of d_G(r, u) over S) / lambda.
double cost_B(std::span<const Vertex> vertices, Vertex root, double lambda, const HopDistances& dist_root);

/// G with w(u, v) = lambda + max(d(r, u), d(r, v)) / lambda. Edges outside the
/// root's component get weight lambda; they cannot be reached from the root.
/// The result borrows `g`'s topology, so `g` must outlive it.
WeightedGraph build_rooted_weights(const Graph& g, const HopDistances& dist_root, double lambda);

/// True when `tree_dist` > (1 + sqrt 2) * `graph_dist`, decided in exact integer arithmetic.
bool exceeds_stretch(std::int64_t tree_dist, std::int64_t graph_dist);

/// Grafts BFS-tree paths from `root` into `tree` wherever the in-tree distance of
/// a visited vertex exceeds (1 + sqrt 2) times its distance in `g`.
RootedTree adjust_distances(const Graph& g, const RootedTree& tree, Vertex root, const HopDistances& bfs_root);

/// The approximation pipeline: sweep roots and lambda, solve a Steiner tree on
/// each reweighted graph, adjust distances, and keep the best candidate.
Connector wiener_steiner(const Graph& g, const QuerySet& q, const AlgorithmConfig& cfg = {});
WienerSteinerResult wiener_steiner_detailed(const Graph& g, const QuerySet& q, const AlgorithmConfig& cfg = {});

/// Vertices of one BFS shortest path between the two query vertices.
Connector shortest_path_connector(const Graph& g, const QuerySet& q);

/// Removes non-query vertices while doing so keeps G[S] connected and lowers W.
Connector local_prune(const Graph& g, const Connector& c, const QuerySet& q);

}  // namespace mwc
