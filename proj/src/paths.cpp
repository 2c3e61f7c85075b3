#include "mwc/paths.hpp"

#include <functional>
#include <queue>

namespace mwc {

HopDistances bfs_sssp(const Graph& g, Vertex source) {
    if (source >= g.num_vertices()) throw std::invalid_argument("source out of range");
    HopDistances dm;
    dm.source = source;
    dm.dist.assign(g.num_vertices(), HopDistances::infinity());
    dm.parent.assign(g.num_vertices(), kNoVertex);
    dm.dist[source] = 0;

    std::vector<Vertex> queue{source};
    queue.reserve(g.num_vertices());
    for (std::size_t head = 0; head < queue.size(); ++head) {
        Vertex u = queue[head];
        auto next = dm.dist[u] + 1;
        for (Vertex w : g.neighbors(u)) {
            if (dm.dist[w] == HopDistances::infinity()) {
                dm.dist[w] = next;
                dm.parent[w] = u;
                queue.push_back(w);
            } else if (dm.dist[w] == next && u < dm.parent[w]) {
                dm.parent[w] = u;
            }
        }
    }
    return dm;
}

WeightedDistances dijkstra_sssp(const WeightedGraph& wg, Vertex source) {
    const Graph& g = wg.topology();
    if (source >= g.num_vertices()) throw std::invalid_argument("source out of range");
    WeightedDistances dm;
    dm.source = source;
    dm.dist.assign(g.num_vertices(), WeightedDistances::infinity());
    dm.parent.assign(g.num_vertices(), kNoVertex);
    dm.dist[source] = 0.0;

    using Entry = std::pair<double, Vertex>;
    std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap;
    heap.emplace(0.0, source);
    while (!heap.empty()) {
        auto [d, u] = heap.top();
        heap.pop();
        if (d > dm.dist[u]) continue;
        auto nb = g.neighbors(u);
        auto w = wg.arc_weights(u);
        for (std::size_t i = 0; i < nb.size(); ++i) {
            double cand = d + w[i];
            Vertex v = nb[i];
            if (cand < dm.dist[v] || (cand == dm.dist[v] && u < dm.parent[v])) {
                bool improved = cand < dm.dist[v];
                dm.dist[v] = cand;
                dm.parent[v] = u;
                if (improved) heap.emplace(cand, v);
            }
        }
    }
    return dm;
}

}  // namespace mwc
