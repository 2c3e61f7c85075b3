#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <fstream>
#include <random>
#include <string>
#include <vector>

#include "mwc/generators.hpp"
#include "mwc/graph.hpp"
#include "mwc/io.hpp"

namespace mwc::testing {

inline std::string data_path(const std::string& name) { return std::string(MWC_TEST_DATA) + "/" + name; }

inline Graph load_karate() {
    std::ifstream in(data_path("karate.txt"));
    return parse_edge_list(in);
}

inline Graph path_graph(std::size_t n) {
    std::vector<Edge> e;
    for (Vertex i = 0; i + 1 < n; ++i) e.push_back({i, i + 1});
    return Graph::from_edges(n, e);
}

inline Graph complete_graph(std::size_t n) {
    std::vector<Edge> e;
    for (Vertex i = 0; i < n; ++i)
        for (Vertex j = i + 1; j < n; ++j) e.push_back({i, j});
    return Graph::from_edges(n, e);
}

inline Graph star_graph(std::size_t leaves) {
    std::vector<Edge> e;
    for (Vertex i = 1; i <= leaves; ++i) e.push_back({0, i});
    return Graph::from_edges(leaves + 1, e);
}

// Ten query vertices on a path plus two hubs: hub 10 sees 0..5, hub 11 sees 4..9.
inline Graph two_hub_path() {
    std::vector<Edge> e;
    for (Vertex i = 0; i + 1 < 10; ++i) e.push_back({i, i + 1});
    for (Vertex i = 0; i <= 5; ++i) e.push_back({10, i});
    for (Vertex i = 4; i <= 9; ++i) e.push_back({11, i});
    return Graph::from_edges(12, e);
}

// Connected graph: random spanning tree plus each remaining pair with probability p.
inline Graph random_connected(std::size_t n, double p, std::mt19937_64& rng) {
    std::vector<Edge> e;
    std::vector<Vertex> order(n);
    for (Vertex i = 0; i < n; ++i) order[i] = i;
    for (std::size_t i = n; i > 1; --i) std::swap(order[i - 1], order[uniform_below(rng, i)]);
    for (std::size_t i = 1; i < n; ++i) e.push_back({order[i], order[uniform_below(rng, i)]});
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    for (Vertex u = 0; u < n; ++u)
        for (Vertex v = u + 1; v < n; ++v)
            if (coin(rng) < p) e.push_back({u, v});
    return Graph::from_edges(n, e);
}

inline QuerySet random_query(std::size_t n, std::size_t k, std::mt19937_64& rng) {
    std::vector<Vertex> all(n);
    for (Vertex i = 0; i < n; ++i) all[i] = i;
    for (std::size_t i = 0; i < k; ++i) std::swap(all[i], all[i + uniform_below(rng, n - i)]);
    all.resize(k);
    return QuerySet(all);
}

inline constexpr std::int64_t kInf = std::numeric_limits<std::int64_t>::max() / 4;

// All-pairs hop distances by Floyd-Warshall on G[S] (S given in local order).
inline std::vector<std::vector<std::int64_t>> floyd_warshall(const Graph& g, const std::vector<Vertex>& s) {
    const std::size_t k = s.size();
    std::vector<std::vector<std::int64_t>> d(k, std::vector<std::int64_t>(k, kInf));
    for (std::size_t i = 0; i < k; ++i) {
        d[i][i] = 0;
        for (std::size_t j = 0; j < k; ++j)
            if (i != j && g.has_edge(s[i], s[j])) d[i][j] = 1;
    }
    for (std::size_t m = 0; m < k; ++m)
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < k; ++j)
                if (d[i][m] + d[m][j] < d[i][j]) d[i][j] = d[i][m] + d[m][j];
    return d;
}

// Wiener index of G[S] from Floyd-Warshall; -1 when disconnected.
inline std::int64_t oracle_wiener(const Graph& g, const std::vector<Vertex>& s) {
    auto d = floyd_warshall(g, s);
    std::int64_t total = 0;
    for (std::size_t i = 0; i < s.size(); ++i)
        for (std::size_t j = i + 1; j < s.size(); ++j) {
            if (d[i][j] >= kInf) return -1;
            total += d[i][j];
        }
    return total;
}

// Exhaustive minimum Wiener connector over all supersets of Q, tie-broken by (W, |S|, S).
inline std::pair<std::int64_t, std::vector<Vertex>> oracle_connector(const Graph& g, const QuerySet& q) {
    std::vector<Vertex> free;
    for (Vertex v = 0; v < g.num_vertices(); ++v)
        if (!q.contains(v)) free.push_back(v);
    std::int64_t best = -1;
    std::vector<Vertex> best_set;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << free.size()); ++mask) {
        std::vector<Vertex> s = q.vertices();
        for (std::size_t i = 0; i < free.size(); ++i)
            if (mask >> i & 1) s.push_back(free[i]);
        std::sort(s.begin(), s.end());
        auto w = oracle_wiener(g, s);
        if (w < 0) continue;
        if (best < 0 || w < best || (w == best && (s.size() < best_set.size() || (s.size() == best_set.size() && s < best_set)))) {
            best = w;
            best_set = s;
        }
    }
    return {best, best_set};
}

}  // namespace mwc::testing
