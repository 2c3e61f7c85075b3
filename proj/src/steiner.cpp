#include "mwc/steiner.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <queue>
#include <tuple>
#include <unordered_map>

#include "internal.hpp"
#include "mwc/metrics.hpp"

namespace mwc {

RootedTree RootedTree::from_edges(Vertex root, std::vector<Edge> edges) {
    RootedTree t;
    t.root = root;
    for (auto& [u, v] : edges)
        if (u > v) std::swap(u, v);
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    t.vertices.push_back(root);
    for (auto [u, v] : edges) {
        t.vertices.push_back(u);
        t.vertices.push_back(v);
    }
    std::sort(t.vertices.begin(), t.vertices.end());
    t.vertices.erase(std::unique(t.vertices.begin(), t.vertices.end()), t.vertices.end());
    t.edges = std::move(edges);
    return t;
}

bool RootedTree::contains(Vertex v) const { return std::binary_search(vertices.begin(), vertices.end(), v); }

bool RootedTree::is_tree() const {
    if (!contains(root) || edges.size() + 1 != vertices.size()) return false;
    std::map<Vertex, Vertex> index;
    for (Vertex i = 0; i < vertices.size(); ++i) index[vertices[i]] = i;
    detail::DisjointSets sets(vertices.size());
    for (auto [u, v] : edges)
        if (!sets.unite(index[u], index[v])) return false;
    return true;
}

namespace {

// One record per vertex keeps a relaxation on a single cache line.
struct Region {
    double dist = WeightedDistances::infinity();
    Vertex owner = kNoVertex;
    Vertex parent = kNoVertex;
};

// Multi-source Dijkstra from the terminals. Before a vertex is settled at
// distance d, stop(d) may end the search; settled(u) runs right after.
template <typename Stop, typename Settled>
std::vector<Region> grow_regions(const WeightedGraph& wg, const QuerySet& terminals, std::vector<char>& done,
                                 Stop stop, Settled settled) {
    const Graph& g = wg.topology();
    const std::size_t n = g.num_vertices();
    std::vector<Region> r(n);
    done.assign(n, 0);

    using Entry = std::pair<double, Vertex>;
    std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap;
    for (Vertex t : terminals.vertices()) {
        if (t >= n) throw std::invalid_argument("terminal out of range");
        r[t] = {0.0, t, kNoVertex};
        heap.emplace(0.0, t);
    }
    while (!heap.empty()) {
        auto [d, u] = heap.top();
        if (done[u] || d > r[u].dist) {
            heap.pop();
            continue;
        }
        if (stop(d)) break;
        heap.pop();
        done[u] = 1;
        settled(u, r);
        const Vertex owner = r[u].owner;
        auto nb = g.neighbors(u);
        auto w = wg.arc_weights(u);
        for (std::size_t i = 0; i < nb.size(); ++i) {
            Vertex v = nb[i];
            if (done[v]) continue;
            Region& rv = r[v];
            double cand = d + w[i];
            if (cand < rv.dist) {
                rv = {cand, owner, u};
                heap.emplace(cand, v);
            } else if (cand == rv.dist && std::tie(owner, u) < std::tie(rv.owner, rv.parent)) {
                rv.owner = owner;
                rv.parent = u;
            }
        }
    }
    return r;
}

}  // namespace

VoronoiPartition voronoi_partition(const WeightedGraph& wg, const QuerySet& terminals) {
    const Graph& g = wg.topology();
    std::vector<char> done;
    auto regions = grow_regions(
        wg, terminals, done, [](double) { return false; }, [](Vertex, const std::vector<Region>&) {});
    VoronoiPartition vp;
    for (const auto& x : regions) {
        vp.owner.push_back(x.owner);
        vp.dist_to_owner.push_back(x.dist);
        vp.parent.push_back(x.parent);
    }
    for (Vertex u = 0; u < g.num_vertices(); ++u) {
        if (vp.owner[u] == kNoVertex) continue;
        for (Vertex v : g.neighbors(u))
            if (u < v && vp.owner[v] != kNoVertex && vp.owner[u] != vp.owner[v]) vp.boundary.emplace_back(u, v);
    }
    return vp;
}

double tree_weight(const WeightedGraph& wg, const RootedTree& tree) {
    double total = 0.0;
    for (auto [u, v] : tree.edges) total += wg.weight(u, v);
    return total;
}

std::vector<Edge> kruskal(const WeightedGraph& wg, std::vector<Edge> edges) {
    std::vector<std::tuple<double, Vertex, Vertex>> order;
    order.reserve(edges.size());
    for (auto [u, v] : edges) order.emplace_back(wg.weight(u, v), u, v);
    std::sort(order.begin(), order.end());
    detail::DisjointSets sets(wg.num_vertices());
    std::vector<Edge> out;
    for (auto [w, u, v] : order)
        if (sets.unite(u, v)) out.emplace_back(u, v);
    return out;
}

RootedTree prune_nonterminal_leaves(const RootedTree& tree, const QuerySet& terminals) {
    std::map<Vertex, std::vector<Vertex>> adj;
    for (Vertex v : tree.vertices) adj[v];
    for (auto [u, v] : tree.edges) {
        adj[u].push_back(v);
        adj[v].push_back(u);
    }
    std::map<Vertex, std::size_t> deg;
    std::vector<Vertex> stack;
    for (auto& [v, nb] : adj) {
        deg[v] = nb.size();
        if (nb.size() <= 1 && !terminals.contains(v) && v != tree.root) stack.push_back(v);
    }
    std::map<Vertex, bool> removed;
    while (!stack.empty()) {
        Vertex v = stack.back();
        stack.pop_back();
        if (removed[v]) continue;
        removed[v] = true;
        for (Vertex w : adj[v]) {
            if (removed[w]) continue;
            if (--deg[w] <= 1 && !terminals.contains(w) && w != tree.root) stack.push_back(w);
        }
    }
    std::vector<Edge> kept;
    for (auto [u, v] : tree.edges)
        if (!removed[u] && !removed[v]) kept.emplace_back(u, v);
    return RootedTree::from_edges(tree.root, std::move(kept));
}

RootedTree mehlhorn_steiner(const WeightedGraph& wg, const QuerySet& terminals) {
    const auto& ts = terminals.vertices();
    if (ts.empty()) throw std::invalid_argument("Steiner tree needs at least one terminal");
    if (ts.size() == 1) return RootedTree::from_edges(ts.front(), {});

    // Cheapest bridging edge per terminal pair, keyed by terminal indices;
    // ties broken by the edge ids.
    const Graph& g = wg.topology();
    std::vector<Vertex> terminal_index(g.num_vertices(), kNoVertex);
    for (Vertex i = 0; i < ts.size(); ++i) terminal_index[ts[i]] = i;
    using Bridge = std::tuple<double, Vertex, Vertex>;
    const std::size_t k = ts.size();
    const bool dense = k <= 256;
    std::vector<std::optional<Bridge>> table(dense ? k * k : 0);
    std::unordered_map<std::uint64_t, Bridge> sparse;
    auto offer = [&](Vertex a, Vertex b, const Bridge& cand) {
        if (a > b) std::swap(a, b);
        if (dense) {
            auto& slot = table[a * k + b];
            if (!slot || cand < *slot) slot = cand;
            return;
        }
        auto [it, inserted] = sparse.emplace((std::uint64_t{a} << 32) | b, cand);
        if (!inserted && cand < it->second) it->second = cand;
    };
    using Aux = std::tuple<double, Vertex, Vertex, Vertex, Vertex>;  // cost, terminal indices, bridge edge
    auto collect = [&](double below) {
        std::vector<Aux> aux;
        auto emit = [&](Vertex a, Vertex b, const Bridge& br) {
            if (std::get<0>(br) < below) aux.emplace_back(std::get<0>(br), a, b, std::get<1>(br), std::get<2>(br));
        };
        if (dense) {
            for (Vertex a = 0; a < k; ++a)
                for (Vertex b = a + 1; b < k; ++b)
                    if (table[a * k + b]) emit(a, b, *table[a * k + b]);
        } else {
            for (auto& [key, br] : sparse)
                emit(static_cast<Vertex>(key >> 32), static_cast<Vertex>(key & 0xffffffffu), br);
        }
        std::sort(aux.begin(), aux.end());
        return aux;
    };
    auto spans = [&](const std::vector<Aux>& aux) {
        detail::DisjointSets sets(k);
        std::size_t joined = 0;
        for (auto& e : aux) joined += sets.unite(std::get<1>(e), std::get<2>(e));
        return joined + 1 == k;
    };

    // With heap minimum d, an unseen bridge (x, y) has y unsettled, so
    // dist(y) >= d and dist(x) + w >= dist(y): it costs at least 2d. Bridges
    // below 2d are therefore final, and once they span the terminals the rest
    // of the graph cannot change the auxiliary MST.
    std::vector<char> done;
    std::size_t pops = 0, next_check = k, fresh = 0;
    auto stop = [&](double d) {
        if (++pops < next_check || fresh == 0) return false;
        next_check = pops + std::max(k, pops / 4);
        fresh = 0;
        return spans(collect(2.0 * d));
    };
    auto settled = [&](Vertex u, const std::vector<Region>& r) {
        auto nb = g.neighbors(u);
        auto w = wg.arc_weights(u);
        for (std::size_t i = 0; i < nb.size(); ++i) {
            Vertex v = nb[i];
            if (!done[v] || r[u].owner == r[v].owner) continue;
            Vertex lo = std::min(u, v), hi = std::max(u, v);
            offer(terminal_index[r[u].owner], terminal_index[r[v].owner], Bridge{r[lo].dist + w[i] + r[hi].dist, lo, hi});
            ++fresh;
        }
    };
    auto regions = grow_regions(wg, terminals, done, stop, settled);
    auto aux = collect(WeightedDistances::infinity());

    detail::DisjointSets sets(ts.size());
    std::vector<Edge> expanded;
    std::size_t joined = 0;
    for (auto [cost, s, t, u, v] : aux) {
        if (!sets.unite(s, t)) continue;
        ++joined;
        expanded.emplace_back(u, v);
        for (Vertex x : {u, v})
            for (; regions[x].parent != kNoVertex; x = regions[x].parent)
                expanded.emplace_back(std::min(x, regions[x].parent), std::max(x, regions[x].parent));
    }
    if (joined + 1 != ts.size()) throw InfeasibleError("terminals lie in different connected components");

    std::sort(expanded.begin(), expanded.end());
    expanded.erase(std::unique(expanded.begin(), expanded.end()), expanded.end());
    auto tree = RootedTree::from_edges(ts.front(), kruskal(wg, std::move(expanded)));
    return prune_nonterminal_leaves(tree, terminals);
}

RootedTree brute_force_steiner(const WeightedGraph& wg, const QuerySet& terminals, std::size_t max_free) {
    const Graph& g = wg.topology();
    const auto& ts = terminals.vertices();
    if (ts.empty()) throw std::invalid_argument("Steiner tree needs at least one terminal");
    if (ts.back() >= g.num_vertices()) throw std::invalid_argument("terminal out of range");
    std::vector<Vertex> free;
    for (Vertex v = 0; v < g.num_vertices(); ++v)
        if (!terminals.contains(v)) free.push_back(v);
    if (free.size() > max_free || free.size() >= 63)
        throw TooLargeError("brute-force Steiner tree limited to " + std::to_string(max_free) + " non-terminals");

    std::vector<char> member(g.num_vertices(), 0);
    bool found = false;
    double best_weight = 0.0;
    std::vector<Vertex> best_set;
    std::vector<Edge> best_edges;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << free.size()); ++mask) {
        std::vector<Vertex> set(ts.begin(), ts.end());
        for (std::size_t i = 0; i < free.size(); ++i)
            if (mask >> i & 1) set.push_back(free[i]);
        std::sort(set.begin(), set.end());
        for (Vertex v : set) member[v] = 1;
        std::vector<Edge> induced;
        for (Vertex u : set)
            for (Vertex v : g.neighbors(u))
                if (u < v && member[v]) induced.emplace_back(u, v);
        for (Vertex v : set) member[v] = 0;
        auto mst = kruskal(wg, std::move(induced));
        if (mst.size() + 1 != set.size()) continue;
        double w = 0.0;
        for (auto [u, v] : mst) w += wg.weight(u, v);
        // Order is (weight, |S|, lexicographic S).
        using Rank = std::tuple<double, std::size_t, const std::vector<Vertex>&>;
        if (!found || Rank(w, set.size(), set) < Rank(best_weight, best_set.size(), best_set)) {
            found = true;
            best_weight = w;
            best_set = set;
            best_edges = std::move(mst);
        }
    }
    if (!found) throw InfeasibleError("terminals lie in different connected components");
    return RootedTree::from_edges(ts.front(), std::move(best_edges));
}

Connector steiner_baseline_st(const Graph& g, const QuerySet& q) {
    q.validate(g);
    WeightedGraph unit(detail::borrow(g), std::vector<double>(2 * g.num_edges(), 1.0));
    auto tree = mehlhorn_steiner(unit, q);
    return make_connector(g, tree.vertices);
}

}  // namespace mwc
