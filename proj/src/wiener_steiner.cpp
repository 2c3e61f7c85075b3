#include "mwc/wiener_steiner.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <map>
#include <set>
#include <thread>
#include <tuple>
#include <unordered_map>

#include "internal.hpp"
#include "mwc/metrics.hpp"
#include "mwc/paths.hpp"

namespace mwc {

namespace {

constexpr double kLogSlack = 1e-9;

// Tie-break order everywhere: (key, |S|, lexicographic S).
std::tuple<std::uint64_t, std::size_t, const std::vector<Vertex>&> selection_rank(std::uint64_t key,
                                                                                  const std::vector<Vertex>& s) {
    return {key, s.size(), s};
}

std::uint64_t root_distance_sum(std::span<const Vertex> vertices, const HopDistances& dist_root) {
    std::uint64_t sum = 0;
    for (Vertex v : vertices) {
        if (v >= dist_root.dist.size() || !dist_root.reachable(v))
            throw InfeasibleError("vertex " + std::to_string(v) + " unreachable from root");
        sum += static_cast<std::uint64_t>(dist_root.dist[v]);
    }
    return sum;
}

void require_member(std::span<const Vertex> vertices, Vertex root) {
    if (std::find(vertices.begin(), vertices.end(), root) == vertices.end())
        throw std::invalid_argument("root must belong to the vertex set");
}

// Candidates produced for one root across the whole lambda grid.
std::vector<CandidateSolution> sweep_root(const Graph& g, const QuerySet& q, Vertex root, const std::vector<int>& exps,
                                          double beta) {
    auto bfs = bfs_sssp(g, root);
    std::vector<Vertex> terms = q.vertices();
    terms.push_back(root);
    QuerySet terminals(std::move(terms));

    std::vector<CandidateSolution> out;
    out.reserve(exps.size());
    for (int t : exps) {
        double lambda = std::pow(1.0 + beta, t);
        auto wg = build_rooted_weights(g, bfs, lambda);
        auto steiner = mehlhorn_steiner(wg, terminals);
        steiner.root = root;
        auto adjusted = adjust_distances(g, steiner, root, bfs);
        CandidateSolution c;
        c.vertices = adjusted.vertices;
        c.root = root;
        c.lambda_exponent = t;
        c.lambda = lambda;
        c.cost_A = root_cost_A(g, c.vertices, root);
        out.push_back(std::move(c));
    }
    return out;
}

}  // namespace

std::vector<int> lambda_exponents(std::size_t num_vertices, double beta, LambdaPolicy policy) {
    if (!(beta > 0.0)) throw std::invalid_argument("beta must be positive");
    const double n = static_cast<double>(std::max<std::size_t>(num_vertices, 2));
    const double base = std::log1p(beta);
    std::set<int> exps;
    if (policy != LambdaPolicy::PositiveOnly) {
        int lo = static_cast<int>(std::floor(std::log(1.0 / std::sqrt(2.0)) / base + kLogSlack));
        int hi = static_cast<int>(std::ceil(std::log(std::sqrt(n)) / base - kLogSlack));
        for (int t = lo; t <= hi; ++t) exps.insert(t);
    }
    if (policy != LambdaPolicy::Bracketing) {
        int hi = std::max(1, static_cast<int>(std::ceil(std::log(n) / base - kLogSlack)));
        for (int t = 1; t <= hi; ++t) exps.insert(t);
    }
    return {exps.begin(), exps.end()};
}

std::uint64_t cost_A_tilde(std::span<const Vertex> vertices, Vertex root, const HopDistances& dist_root) {
    require_member(vertices, root);
    return vertices.size() * root_distance_sum(vertices, dist_root);
}

double cost_B(std::span<const Vertex> vertices, Vertex root, double lambda, const HopDistances& dist_root) {
    if (!(lambda > 0.0)) throw std::invalid_argument("lambda must be positive");
    require_member(vertices, root);
    return lambda * static_cast<double>(vertices.size()) +
           static_cast<double>(root_distance_sum(vertices, dist_root)) / lambda;
}

WeightedGraph build_rooted_weights(const Graph& g, const HopDistances& dist_root, double lambda) {
    if (!(lambda > 0.0)) throw std::invalid_argument("lambda must be positive");
    if (dist_root.dist.size() != g.num_vertices()) throw std::invalid_argument("distance map does not match graph");
    std::vector<double> arcs(2 * g.num_edges());
    std::size_t k = 0;
    for (Vertex u = 0; u < g.num_vertices(); ++u) {
        for (Vertex v : g.neighbors(u)) {
            double far = 0.0;
            if (dist_root.reachable(u) && dist_root.reachable(v))
                far = static_cast<double>(std::max(dist_root.dist[u], dist_root.dist[v]));
            arcs[k++] = lambda + far / lambda;
        }
    }
    return WeightedGraph(detail::borrow(g), std::move(arcs), WeightedGraph::Unchecked{});
}

bool exceeds_stretch(std::int64_t tree_dist, std::int64_t graph_dist) {
    if (tree_dist == HopDistances::infinity()) return graph_dist != HopDistances::infinity();
    // a > (1 + sqrt2) b  <=>  a - b > 0 and (a - b)^2 > 2 b^2
    std::int64_t gap = tree_dist - graph_dist;
    return gap > 0 && gap * gap > 2 * graph_dist * graph_dist;
}

RootedTree adjust_distances(const Graph& g, const RootedTree& tree, Vertex root, const HopDistances& bfs_root) {
    if (!tree.contains(root) || !tree.is_tree()) throw std::invalid_argument("input is not a tree containing the root");
    if (bfs_root.source != root || bfs_root.dist.size() != g.num_vertices())
        throw std::invalid_argument("BFS structure must come from the root over the same graph");

    std::unordered_map<Vertex, std::vector<Vertex>> adj;
    for (auto [u, v] : tree.edges) {
        if (!g.has_edge(u, v)) throw std::invalid_argument("tree is not a subgraph of the graph");
        adj[u].push_back(v);
        adj[v].push_back(u);
    }
    for (auto& [v, nb] : adj) std::sort(nb.begin(), nb.end());

    struct Label {
        std::int64_t d = HopDistances::infinity();
        Vertex p = kNoVertex;
    };
    std::unordered_map<Vertex, Label> label;
    label.reserve(tree.vertices.size() * 3);
    label[root].d = 0;

    auto relax = [&](Vertex from, Vertex to) {
        std::int64_t df = label[from].d;
        Label& lt = label[to];
        if (df != HopDistances::infinity() && lt.d > df + 1) {
            lt.d = df + 1;
            lt.p = from;
        }
    };
    auto add_path = [&](Vertex u) {
        for (Vertex v = u; label[v].d > bfs_root.dist[v]; v = bfs_root.parent[v]) {
            label[v].d = bfs_root.dist[v];
            label[v].p = bfs_root.parent[v];
        }
    };

    // Iterative DFS over T from the root: (vertex, tree parent, next child index).
    struct Frame {
        Vertex u;
        Vertex from;
        std::size_t next;
    };
    std::vector<Frame> stack;
    auto enter = [&](Vertex u, Vertex from) {
        if (!bfs_root.reachable(u)) throw std::invalid_argument("tree vertex unreachable from root");
        if (exceeds_stretch(label[u].d, bfs_root.dist[u])) add_path(u);
        stack.push_back({u, from, 0});
    };
    std::size_t visited = 0;
    enter(root, kNoVertex);
    while (!stack.empty()) {
        Frame& f = stack.back();
        const auto& nb = adj[f.u];
        while (f.next < nb.size() && nb[f.next] == f.from) ++f.next;
        if (f.next == nb.size()) {
            Vertex child = f.u, parent = f.from;
            stack.pop_back();
            ++visited;
            if (parent != kNoVertex) relax(child, parent);
            continue;
        }
        Vertex v = nb[f.next++];
        Vertex u = f.u;
        relax(u, v);
        enter(v, u);
    }
    if (visited != tree.vertices.size()) throw std::invalid_argument("input is not a tree containing the root");

    std::vector<Edge> edges;
    for (auto& [v, l] : label)
        if (l.p != kNoVertex) edges.emplace_back(std::min(v, l.p), std::max(v, l.p));
    return RootedTree::from_edges(root, std::move(edges));
}

Connector shortest_path_connector(const Graph& g, const QuerySet& q) {
    if (q.size() != 2) throw std::invalid_argument("shortest_path_connector needs exactly two query vertices");
    q.validate(g);
    auto bfs = bfs_sssp(g, q.vertices()[0]);
    return make_connector(g, path_to(bfs, q.vertices()[1]));
}

WienerSteinerResult wiener_steiner_detailed(const Graph& g, const QuerySet& q, const AlgorithmConfig& cfg) {
    q.validate(g);
    WienerSteinerResult result;
    if (q.size() == 1) {
        result.connector = make_connector(g, q.vertices());
        result.connector.root_cost = std::make_pair(q.vertices()[0], std::uint64_t{0});
        return result;
    }
    if (q.size() == 2) {
        result.connector = shortest_path_connector(g, q);
        Vertex r = q.vertices()[0];
        result.connector.root_cost = std::make_pair(r, root_cost_A(g, result.connector.vertices, r));
        return result;
    }

    auto component = component_of(g, q.vertices()[0]);
    std::vector<Vertex> roots = cfg.roots_all_vertices ? component : q.vertices();
    auto exps = lambda_exponents(component.size(), cfg.beta, cfg.lambda_policy);

    std::vector<std::vector<CandidateSolution>> per_root(roots.size());
    unsigned workers = std::max(1u, std::min<unsigned>(cfg.threads, static_cast<unsigned>(roots.size())));
    if (workers == 1) {
        for (std::size_t i = 0; i < roots.size(); ++i) per_root[i] = sweep_root(g, q, roots[i], exps, cfg.beta);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::exception_ptr> errors(workers);
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w)
            pool.emplace_back([&, w] {
                try {
                    for (std::size_t i; (i = next.fetch_add(1)) < roots.size();)
                        per_root[i] = sweep_root(g, q, roots[i], exps, cfg.beta);
                } catch (...) {
                    errors[w] = std::current_exception();
                }
            });
        for (auto& t : pool) t.join();
        for (auto& e : errors)
            if (e) std::rethrow_exception(e);
    }

    // Deduplicate by vertex set, keeping the entry with the smallest (A, root, t).
    std::map<std::vector<Vertex>, CandidateSolution> unique;
    for (auto& batch : per_root)
        for (auto& c : batch) {
            auto it = unique.find(c.vertices);
            if (it == unique.end()) {
                unique.emplace(c.vertices, std::move(c));
            } else if (std::tie(c.cost_A, c.root, c.lambda_exponent) <
                       std::tie(it->second.cost_A, it->second.root, it->second.lambda_exponent)) {
                it->second = std::move(c);
            }
        }

    const CandidateSolution* best = nullptr;
    std::uint64_t best_key = 0;
    for (auto& [set, c] : unique) {
        if (set.size() <= cfg.exact_selection_size_cap) c.cost_W = wiener_index(g, set);
        // W(G[S]) <= A(S, r), so the proxy never understates a large candidate.
        std::uint64_t key = c.cost_W ? *c.cost_W : c.cost_A;
        if (!best || selection_rank(key, c.vertices) < selection_rank(best_key, best->vertices)) {
            best = &c;
            best_key = key;
        }
    }

    result.connector = make_connector(g, best->vertices);
    result.connector.root_cost = std::make_pair(best->root, best->cost_A);
    if (cfg.prune) {
        auto pruned = local_prune(g, result.connector, q);
        if (pruned.vertices != result.connector.vertices) result.connector = std::move(pruned);
    }
    for (auto& [set, c] : unique) result.candidates.push_back(std::move(c));
    return result;
}

Connector wiener_steiner(const Graph& g, const QuerySet& q, const AlgorithmConfig& cfg) {
    return wiener_steiner_detailed(g, q, cfg).connector;
}

Connector local_prune(const Graph& g, const Connector& c, const QuerySet& q) {
    Connector current = make_connector(g, c.vertices);
    for (Vertex v : q.vertices())
        if (!std::binary_search(current.vertices.begin(), current.vertices.end(), v))
            throw std::invalid_argument("connector does not contain the query set");
    bool improved = true;
    while (improved) {
        improved = false;
        for (Vertex v : current.vertices) {
            if (q.contains(v)) continue;
            std::vector<Vertex> rest;
            for (Vertex u : current.vertices)
                if (u != v) rest.push_back(u);
            Connector cand;
            try {
                cand = make_connector(g, rest);
            } catch (const InfeasibleError&) {
                continue;
            }
            if (cand.wiener < current.wiener) {
                current = std::move(cand);
                improved = true;
                break;
            }
        }
    }
    return current;
}

}  // namespace mwc
