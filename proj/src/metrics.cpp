#include "mwc/metrics.hpp"

#include <algorithm>

#include "mwc/paths.hpp"

namespace mwc {

namespace {

// Sum of BFS distances from `source`; throws if some vertex is unreachable.
std::uint64_t distance_sum(const Graph& g, Vertex source, std::vector<std::int64_t>& dist,
                           std::vector<Vertex>& queue) {
    std::fill(dist.begin(), dist.end(), -1);
    queue.clear();
    queue.push_back(source);
    dist[source] = 0;
    std::uint64_t sum = 0;
    for (std::size_t head = 0; head < queue.size(); ++head) {
        Vertex u = queue[head];
        sum += static_cast<std::uint64_t>(dist[u]);
        for (Vertex w : g.neighbors(u))
            if (dist[w] < 0) {
                dist[w] = dist[u] + 1;
                queue.push_back(w);
            }
    }
    if (queue.size() != g.num_vertices()) throw InfeasibleError("induced subgraph is disconnected");
    return sum;
}

}  // namespace

std::uint64_t wiener_index(const Graph& g) {
    std::size_t n = g.num_vertices();
    if (n == 0) throw std::invalid_argument("Wiener index of an empty vertex set");
    std::vector<std::int64_t> dist(n);
    std::vector<Vertex> queue;
    queue.reserve(n);
    std::uint64_t twice = 0;
    for (Vertex s = 0; s < n; ++s) twice += distance_sum(g, s, dist, queue);
    return twice / 2;
}

std::uint64_t wiener_index(const Graph& g, std::span<const Vertex> vertices) {
    return wiener_index(induced_subgraph(g, vertices).graph);
}

std::uint64_t induced_distance_sum(const Graph& g, std::span<const Vertex> vertices, Vertex root) {
    auto sub = induced_subgraph(g, vertices);
    auto local = sub.to_local(root);
    if (!local) throw std::invalid_argument("root not in vertex set");
    std::vector<std::int64_t> dist(sub.graph.num_vertices());
    std::vector<Vertex> queue;
    return distance_sum(sub.graph, *local, dist, queue);
}

std::uint64_t root_cost_A(const Graph& g, std::span<const Vertex> vertices, Vertex root) {
    auto sum = induced_distance_sum(g, vertices, root);
    return normalize_vertex_set(vertices, g.num_vertices()).size() * sum;
}

double induced_density(const Graph& g, std::span<const Vertex> vertices) {
    auto sub = induced_subgraph(g, vertices);
    double k = static_cast<double>(sub.graph.num_vertices());
    if (k < 2) return 0.0;
    return static_cast<double>(sub.graph.num_edges()) / (k * (k - 1) / 2.0);
}

std::vector<double> brandes_betweenness(const Graph& g) {
    std::size_t n = g.num_vertices();
    std::vector<double> score(n, 0.0);
    std::vector<std::int64_t> dist(n);
    std::vector<double> sigma(n), delta(n);
    std::vector<Vertex> order;
    order.reserve(n);

    for (Vertex s = 0; s < n; ++s) {
        std::fill(dist.begin(), dist.end(), -1);
        std::fill(sigma.begin(), sigma.end(), 0.0);
        std::fill(delta.begin(), delta.end(), 0.0);
        order.clear();
        dist[s] = 0;
        sigma[s] = 1.0;
        order.push_back(s);
        for (std::size_t head = 0; head < order.size(); ++head) {
            Vertex u = order[head];
            for (Vertex w : g.neighbors(u)) {
                if (dist[w] < 0) {
                    dist[w] = dist[u] + 1;
                    order.push_back(w);
                }
                if (dist[w] == dist[u] + 1) sigma[w] += sigma[u];
            }
        }
        // Predecessors of w are its neighbours one level up; no explicit lists needed.
        for (auto it = order.rbegin(); it != order.rend(); ++it) {
            Vertex w = *it;
            for (Vertex v : g.neighbors(w))
                if (dist[v] == dist[w] - 1) delta[v] += sigma[v] / sigma[w] * (1.0 + delta[w]);
            if (w != s) score[w] += delta[w];
        }
    }

    // Each unordered pair was counted from both endpoints.
    double norm = n >= 3 ? static_cast<double>(n - 1) * static_cast<double>(n - 2) : 0.0;
    for (auto& x : score) x = norm > 0 ? x / norm : 0.0;
    return score;
}

Connector make_connector(const Graph& g, std::span<const Vertex> vertices) {
    Connector c;
    auto sub = induced_subgraph(g, vertices);
    c.vertices = sub.to_global;
    c.size = c.vertices.size();
    c.wiener = wiener_index(sub.graph);
    double k = static_cast<double>(c.size);
    c.density = c.size < 2 ? 0.0 : static_cast<double>(sub.graph.num_edges()) / (k * (k - 1) / 2.0);
    return c;
}

}  // namespace mwc
