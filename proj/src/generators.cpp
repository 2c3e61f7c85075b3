#include "mwc/generators.hpp"

#include <algorithm>
#include <unordered_set>

namespace mwc {

namespace {

std::uint64_t pair_key(Vertex u, Vertex v) {
    if (u > v) std::swap(u, v);
    return (static_cast<std::uint64_t>(u) << 32) | v;
}

Graph erdos_renyi(std::size_t n, std::size_t m, std::mt19937_64& rng) {
    const std::uint64_t all = static_cast<std::uint64_t>(n) * (n - 1) / 2;
    // Dense requests sample the complement so rejection stays cheap.
    const bool complement = m > all / 2;
    const std::uint64_t picks = complement ? all - m : m;
    std::unordered_set<std::uint64_t> chosen;
    chosen.reserve(picks * 2);
    std::vector<Edge> sampled;
    while (chosen.size() < picks) {
        auto u = static_cast<Vertex>(uniform_below(rng, n));
        auto v = static_cast<Vertex>(uniform_below(rng, n));
        if (u == v) continue;
        if (chosen.insert(pair_key(u, v)).second) sampled.emplace_back(std::min(u, v), std::max(u, v));
    }
    if (!complement) return Graph::from_edges(n, sampled);
    std::vector<Edge> edges;
    edges.reserve(m);
    for (Vertex u = 0; u < n; ++u)
        for (Vertex v = u + 1; v < n; ++v)
            if (!chosen.count(pair_key(u, v))) edges.emplace_back(u, v);
    return Graph::from_edges(n, edges);
}

Graph preferential_attachment(std::size_t n, std::size_t m, std::mt19937_64& rng) {
    std::size_t k = std::max<std::size_t>(1, (m + n - 1) / n);
    k = std::min(k, n - 1);
    std::vector<Edge> edges;
    // Endpoint multiset: sampling from it is sampling proportionally to degree.
    std::vector<Vertex> endpoints;
    std::size_t seed_size = k + 1;
    for (Vertex u = 0; u < seed_size; ++u)
        for (Vertex v = u + 1; v < seed_size; ++v) {
            edges.emplace_back(u, v);
            endpoints.push_back(u);
            endpoints.push_back(v);
        }
    std::vector<Vertex> targets;
    for (auto v = static_cast<Vertex>(seed_size); v < n; ++v) {
        targets.clear();
        while (targets.size() < k) {
            Vertex t = endpoints[uniform_below(rng, endpoints.size())];
            if (std::find(targets.begin(), targets.end(), t) == targets.end()) targets.push_back(t);
        }
        for (Vertex t : targets) {
            edges.emplace_back(t, v);
            endpoints.push_back(t);
            endpoints.push_back(v);
        }
    }
    return Graph::from_edges(n, edges);
}

}  // namespace

Graph generate_synthetic(GraphModel model, std::size_t n, std::size_t target_m, std::uint64_t seed) {
    if (n < 2) throw std::invalid_argument("synthetic graphs need at least two vertices");
    if (target_m > static_cast<std::uint64_t>(n) * (n - 1) / 2)
        throw std::invalid_argument("target edge count exceeds n(n-1)/2");
    std::mt19937_64 rng(seed);
    return model == GraphModel::ErdosRenyi ? erdos_renyi(n, target_m, rng) : preferential_attachment(n, target_m, rng);
}

}  // namespace mwc
