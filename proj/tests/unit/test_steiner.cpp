#include <doctest.h>

#include <map>
#include <random>

#include "mwc/io.hpp"
#include "mwc/metrics.hpp"
#include "mwc/paths.hpp"
#include "mwc/steiner.hpp"
#include "support.hpp"

using namespace mwc;
using namespace mwc::testing;

namespace {

WeightedGraph random_weighted(std::size_t n, std::mt19937_64& rng) {
    auto g = random_connected(n, 0.3, rng);
    std::vector<double> w(g.num_edges());
    for (auto& x : w) x = static_cast<double>(1 + uniform_below(rng, 9));
    return WeightedGraph::from_edge_weights(std::move(g), w);
}

// Prim's algorithm as an independent MST oracle.
double prim_weight(const WeightedGraph& wg) {
    const std::size_t n = wg.num_vertices();
    std::vector<double> key(n, 1e300);
    std::vector<bool> in(n, false);
    key[0] = 0.0;
    double total = 0.0;
    for (std::size_t step = 0; step < n; ++step) {
        Vertex u = kNoVertex;
        for (Vertex v = 0; v < n; ++v)
            if (!in[v] && (u == kNoVertex || key[v] < key[u])) u = v;
        in[u] = true;
        total += key[u];
        auto nbrs = wg.topology().neighbors(u);
        auto ws = wg.arc_weights(u);
        for (std::size_t i = 0; i < nbrs.size(); ++i)
            if (!in[nbrs[i]] && ws[i] < key[nbrs[i]]) key[nbrs[i]] = ws[i];
    }
    return total;
}

// Mehlhorn over the complete Voronoi partition, with the same tie-breaking.
RootedTree full_partition_mehlhorn(const WeightedGraph& wg, const QuerySet& q) {
    const auto& ts = q.vertices();
    auto vp = voronoi_partition(wg, q);
    std::map<Edge, std::tuple<double, Vertex, Vertex>> best;
    for (auto [u, v] : vp.boundary) {
        auto cand = std::make_tuple(vp.dist_to_owner[u] + wg.weight(u, v) + vp.dist_to_owner[v], u, v);
        Edge key{std::min(vp.owner[u], vp.owner[v]), std::max(vp.owner[u], vp.owner[v])};
        auto [it, inserted] = best.emplace(key, cand);
        if (!inserted && cand < it->second) it->second = cand;
    }
    std::vector<std::tuple<double, Vertex, Vertex, Vertex, Vertex>> aux;
    for (auto& [key, val] : best)
        aux.emplace_back(std::get<0>(val), key.first, key.second, std::get<1>(val), std::get<2>(val));
    std::sort(aux.begin(), aux.end());
    std::map<Vertex, std::size_t> index;
    for (std::size_t i = 0; i < ts.size(); ++i) index[ts[i]] = i;
    std::vector<std::size_t> comp(ts.size());
    for (std::size_t i = 0; i < comp.size(); ++i) comp[i] = i;
    std::vector<Edge> expanded;
    for (auto [cost, s, t, u, v] : aux) {
        auto a = comp[index[s]], b = comp[index[t]];
        if (a == b) continue;
        for (auto& c : comp)
            if (c == b) c = a;
        expanded.emplace_back(u, v);
        for (Vertex x : {u, v})
            for (; vp.parent[x] != kNoVertex; x = vp.parent[x])
                expanded.emplace_back(std::min(x, vp.parent[x]), std::max(x, vp.parent[x]));
    }
    std::sort(expanded.begin(), expanded.end());
    expanded.erase(std::unique(expanded.begin(), expanded.end()), expanded.end());
    return prune_nonterminal_leaves(RootedTree::from_edges(ts.front(), kruskal(wg, expanded)), q);
}

bool spans(const RootedTree& t, const QuerySet& q) {
    for (Vertex v : q.vertices())
        if (!t.contains(v)) return false;
    return true;
}

}  // namespace

TEST_CASE("rooted tree validity") {
    auto t = RootedTree::from_edges(0, {{1, 0}, {1, 2}});
    CHECK(t.edges == std::vector<Edge>{{0, 1}, {1, 2}});
    CHECK(t.vertices == std::vector<Vertex>{0, 1, 2});
    CHECK(t.is_tree());
    CHECK(RootedTree::from_edges(4, {}).is_tree());
    CHECK_FALSE(RootedTree::from_edges(0, {{0, 1}, {1, 2}, {0, 2}}).is_tree());
    CHECK_FALSE(RootedTree::from_edges(0, {{0, 1}, {2, 3}}).is_tree());
    CHECK_FALSE(RootedTree::from_edges(5, {{0, 1}}).is_tree());
}

TEST_CASE("voronoi partition assigns nearest terminal") {
    auto wg = WeightedGraph::unit(path_graph(7));
    auto part = voronoi_partition(wg, QuerySet({0, 6}));
    CHECK(part.owner == std::vector<Vertex>{0, 0, 0, 0, 6, 6, 6});
    CHECK(part.dist_to_owner[3] == 3.0);
    CHECK(part.parent[2] == 1);
    CHECK(part.boundary == std::vector<Edge>{{3, 4}});
}

TEST_CASE("kruskal matches prim") {
    std::mt19937_64 rng(21);
    for (int trial = 0; trial < 50; ++trial) {
        auto wg = random_weighted(2 + uniform_below(rng, 15), rng);
        auto mst = kruskal(wg, wg.topology().edges());
        CHECK(mst.size() == wg.num_vertices() - 1);
        double total = 0.0;
        for (auto [u, v] : mst) total += wg.weight(u, v);
        CHECK(total == prim_weight(wg));
    }
}

TEST_CASE("mehlhorn is within twice the optimum") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 200; ++trial) {
        std::size_t n = 2 + uniform_below(rng, 9);
        auto wg = random_weighted(n, rng);
        auto q = random_query(n, 1 + uniform_below(rng, std::min<std::size_t>(4, n)), rng);
        auto approx = mehlhorn_steiner(wg, q);
        auto exact = brute_force_steiner(wg, q);
        REQUIRE(approx.is_tree());
        REQUIRE(exact.is_tree());
        CHECK(spans(approx, q));
        CHECK(spans(exact, q));
        CHECK(approx.root == q.vertices().front());
        CHECK(tree_weight(wg, exact) <= tree_weight(wg, approx));
        CHECK(tree_weight(wg, approx) <= 2.0 * tree_weight(wg, exact));
        // Leaves are terminals.
        for (Vertex v : approx.vertices) {
            std::size_t deg = 0;
            for (auto [a, b] : approx.edges) deg += (a == v) + (b == v);
            if (deg == 1) CHECK(q.contains(v));
        }
    }
}

TEST_CASE("mehlhorn with every vertex a terminal is an MST") {
    std::mt19937_64 rng(8);
    for (int trial = 0; trial < 50; ++trial) {
        auto wg = random_weighted(2 + uniform_below(rng, 12), rng);
        std::vector<Vertex> all(wg.num_vertices());
        for (Vertex i = 0; i < all.size(); ++i) all[i] = i;
        CHECK(tree_weight(wg, mehlhorn_steiner(wg, QuerySet(all))) == prim_weight(wg));
    }
}

TEST_CASE("mehlhorn stops early without changing the tree") {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 300; ++trial) {
        std::size_t n = 3 + uniform_below(rng, 80);
        auto g = random_connected(n, 3.0 / static_cast<double>(n), rng);
        std::vector<double> w(g.num_edges());
        std::uint64_t spread = trial % 2 ? 3 : 40;  // few distinct weights means many ties
        for (auto& x : w) x = static_cast<double>(1 + uniform_below(rng, spread));
        auto wg = WeightedGraph::from_edge_weights(std::move(g), w);
        auto q = random_query(n, 2 + uniform_below(rng, std::min<std::size_t>(8, n - 1)), rng);
        CHECK(mehlhorn_steiner(wg, q).edges == full_partition_mehlhorn(wg, q).edges);
    }
    // More than 256 terminals takes the hashed bridge table.
    auto g = random_connected(400, 0.01, rng);
    std::vector<double> w(g.num_edges());
    for (auto& x : w) x = static_cast<double>(1 + uniform_below(rng, 4));
    auto wg = WeightedGraph::from_edge_weights(std::move(g), w);
    auto q = random_query(400, 300, rng);
    CHECK(mehlhorn_steiner(wg, q).edges == full_partition_mehlhorn(wg, q).edges);
}

TEST_CASE("steiner on the weighted fixture") {
    auto inst = load_graph(data_path("mini_weighted.stp"), "stp");
    auto exact = brute_force_steiner(*inst.weighted, inst.terminals);
    // 1-2 (3), 2-5 (4), 2-3 (2), 3-4 (1) in 1-based labels.
    CHECK(tree_weight(*inst.weighted, exact) == 10.0);
    CHECK(tree_weight(*inst.weighted, mehlhorn_steiner(*inst.weighted, inst.terminals)) <= 20.0);
}

TEST_CASE("single terminal and disconnected terminals") {
    auto wg = WeightedGraph::unit(Graph::from_edges(4, std::vector<Edge>{{0, 1}, {2, 3}}));
    auto t = mehlhorn_steiner(wg, QuerySet({1}));
    CHECK(t.vertices == std::vector<Vertex>{1});
    CHECK(t.edges.empty());
    CHECK_THROWS_AS(mehlhorn_steiner(wg, QuerySet({0, 3})), InfeasibleError);
    CHECK_THROWS_AS(brute_force_steiner(wg, QuerySet({0, 3})), InfeasibleError);
}

TEST_CASE("brute force refuses large instances") {
    auto wg = WeightedGraph::unit(path_graph(30));
    CHECK_THROWS_AS(brute_force_steiner(wg, QuerySet({0, 29}), 10), TooLargeError);
}

TEST_CASE("pruning removes non-terminal leaves only") {
    auto t = RootedTree::from_edges(0, {{0, 1}, {1, 2}, {2, 3}, {1, 4}});
    auto p = prune_nonterminal_leaves(t, QuerySet({0, 2}));
    CHECK(p.edges == std::vector<Edge>{{0, 1}, {1, 2}});
    auto keep_root = prune_nonterminal_leaves(t, QuerySet({3}));
    CHECK(keep_root.contains(0));
    CHECK(keep_root.contains(3));
}

TEST_CASE("steiner tree of a line query is the line") {
    auto g = two_hub_path();
    QuerySet q({0, 1, 2, 3, 4, 5, 6, 7, 8, 9});
    auto wg = WeightedGraph::unit(g);
    auto t = mehlhorn_steiner(wg, q);
    CHECK(t.vertices == q.vertices());
    CHECK(tree_weight(wg, t) == 9.0);
    CHECK(steiner_baseline_st(g, q).wiener == 165);
}

TEST_CASE("steiner baseline connector") {
    auto g = two_hub_path();
    auto c = steiner_baseline_st(g, QuerySet({0, 9}));
    // Shortest route is 0-10-5-11-9 or the path through 4: four edges either way.
    CHECK(c.size == 5);
    CHECK(c.wiener == wiener_index(g, c.vertices));
    auto hc = load_graph(data_path("hc6u_synthetic.stp"), "stp");
    auto st = steiner_baseline_st(hc.graph, hc.terminals);
    for (Vertex v : hc.terminals.vertices()) CHECK(std::binary_search(st.vertices.begin(), st.vertices.end(), v));
}
