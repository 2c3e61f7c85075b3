// One PASS/FAIL line per acceptance criterion; nonzero exit if any fails.
#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "mwc/bench.hpp"
#include "mwc/cli.hpp"
#include "mwc/exact.hpp"
#include "mwc/generators.hpp"
#include "mwc/io.hpp"
#include "mwc/ip_model.hpp"
#include "mwc/metrics.hpp"
#include "mwc/paths.hpp"
#include "mwc/steiner.hpp"
#include "mwc/wiener_steiner.hpp"
#include "support.hpp"

using namespace mwc;
using namespace mwc::testing;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Outcome {
    bool pass = true;
    std::string detail;
};

bool connected(const Graph& g) { return g.num_vertices() == 0 || component_of(g, 0).size() == g.num_vertices(); }

// G(n, p) redrawn until connected.
Graph connected_er(std::size_t n, double p, std::mt19937_64& rng) {
    std::bernoulli_distribution coin(p);
    for (;;) {
        std::vector<Edge> e;
        for (Vertex u = 0; u < n; ++u)
            for (Vertex v = u + 1; v < n; ++v)
                if (coin(rng)) e.push_back({u, v});
        auto g = Graph::from_edges(n, e);
        if (connected(g)) return g;
    }
}

// Connected vertex set grown from a random seed by random frontier picks.
std::vector<Vertex> random_connected_set(const Graph& g, std::size_t size, std::mt19937_64& rng) {
    std::vector<Vertex> set{static_cast<Vertex>(uniform_below(rng, g.num_vertices()))};
    std::vector<char> in(g.num_vertices(), 0);
    in[set[0]] = 1;
    while (set.size() < size) {
        std::vector<Vertex> frontier;
        for (Vertex u : set)
            for (Vertex v : g.neighbors(u))
                if (!in[v]) frontier.push_back(v);
        if (frontier.empty()) break;
        std::sort(frontier.begin(), frontier.end());
        frontier.erase(std::unique(frontier.begin(), frontier.end()), frontier.end());
        Vertex v = frontier[uniform_below(rng, frontier.size())];
        in[v] = 1;
        set.push_back(v);
    }
    std::sort(set.begin(), set.end());
    return set;
}

Outcome optimality_gap() {
    auto t0 = Clock::now();
    std::mt19937_64 rng(2024);
    std::vector<double> ratios;
    Outcome out;
    for (int trial = 0; trial < 240; ++trial) {
        std::size_t n = 4 + uniform_below(rng, 9);
        double p = 0.2 + 0.4 * static_cast<double>(uniform_below(rng, 1000)) / 1000.0;
        auto g = connected_er(n, p, rng);
        auto q = random_query(n, 2 + uniform_below(rng, 3), rng);
        auto approx = wiener_steiner(g, q);
        auto opt = brute_force_connector(g, q);
        double r = opt.wiener == 0 ? 1.0 : static_cast<double>(approx.wiener) / static_cast<double>(opt.wiener);
        ratios.push_back(r);
    }
    std::sort(ratios.begin(), ratios.end());
    double worst = ratios.back();
    double median = ratios[ratios.size() / 2];
    if (ratios.size() % 2 == 0) median = (ratios[ratios.size() / 2 - 1] + ratios[ratios.size() / 2]) / 2.0;
    double elapsed = seconds_since(t0);
    out.pass = worst <= 2.0 && median <= 1.10 && elapsed < 60.0;
    std::ostringstream s;
    s << ratios.size() << " instances, max ratio " << worst << ", median " << median << ", "
      << std::setprecision(3) << elapsed << " s";
    out.detail = s.str();
    return out;
}

Outcome pair_exactness() {
    std::mt19937_64 rng(2024);
    std::size_t checked = 0, bad = 0;
    for (int trial = 0; trial < 240; ++trial) {
        std::size_t n = 4 + uniform_below(rng, 9);
        double p = 0.2 + 0.4 * static_cast<double>(uniform_below(rng, 1000)) / 1000.0;
        auto g = connected_er(n, p, rng);
        auto q = random_query(n, 2 + uniform_below(rng, 3), rng);
        if (q.size() != 2) continue;
        ++checked;
        auto a = wiener_steiner(g, q).wiener;
        auto b = brute_force_connector(g, q).wiener;
        auto c = shortest_path_connector(g, q).wiener;
        if (a != b || b != c) ++bad;
    }
    // A few more so the |Q| = 2 slice is not tiny.
    for (int trial = 0; trial < 100; ++trial) {
        std::size_t n = 2 + uniform_below(rng, 11);
        auto g = connected_er(n, 0.35, rng);
        auto q = random_query(n, 2, rng);
        ++checked;
        auto a = wiener_steiner(g, q).wiener;
        if (a != brute_force_connector(g, q).wiener || a != shortest_path_connector(g, q).wiener) ++bad;
    }
    return {bad == 0, std::to_string(checked) + " pairs, " + std::to_string(bad) + " mismatches"};
}

Outcome sandwich() {
    std::mt19937_64 rng(77);
    std::size_t bad = 0, roots = 0;
    for (int trial = 0; trial < 100; ++trial) {
        std::size_t n = 20 + uniform_below(rng, 60);
        auto g = random_connected(n, 2.5 / static_cast<double>(n), rng);
        auto s = random_connected_set(g, 1 + uniform_below(rng, 40), rng);
        const std::uint64_t w = wiener_index(g, s);
        const std::uint64_t k = s.size();
        std::uint64_t best = UINT64_MAX;
        for (Vertex r : s) {
            best = std::min(best, induced_distance_sum(g, s, r));
            ++roots;
        }
        // min_r sum <= 2W/|S| <= 2 min_r sum, multiplied through by |S|.
        if (!(best * k <= 2 * w && 2 * w <= 2 * best * k)) ++bad;
    }
    return {bad == 0, "100 sets, " + std::to_string(roots) + " roots, " + std::to_string(bad) + " violations"};
}

bool within_sqrt2(std::int64_t a, std::int64_t b) { return a * a <= 2 * b * b; }

// Name of the first failed postcondition, empty when all hold.
std::string adjust_violation(const Graph& g, const RootedTree& t, Vertex r) {
    auto bfs = bfs_sssp(g, r);
    auto out = adjust_distances(g, t, r, bfs);
    if (!out.is_tree() || out.root != r) return "tree";
    for (auto [u, v] : out.edges)
        if (!g.has_edge(u, v)) return "tree";
    for (Vertex v : t.vertices)
        if (!out.contains(v)) return "superset";
    if (exceeds_stretch(static_cast<std::int64_t>(out.vertices.size()), static_cast<std::int64_t>(t.vertices.size())))
        return "size";
    auto in_tree = bfs_sssp(Graph::from_edges(g.num_vertices(), out.edges), r);
    for (Vertex v : out.vertices)
        if (exceeds_stretch(in_tree.dist[v], bfs.dist[v])) return "stretch";
    std::int64_t before = 0, after = 0;
    for (Vertex v : t.vertices) before += bfs.dist[v];
    for (Vertex v : out.vertices) after += bfs.dist[v];
    if (!within_sqrt2(after, before)) return "distance sum";
    return {};
}

Outcome adjust_contract() {
    std::mt19937_64 rng(99);
    std::size_t bad = 0;
    std::string first;
    auto note = [&](const std::string& v, const std::string& where) {
        if (v.empty()) return;
        ++bad;
        if (first.empty()) first = v + " at " + where;
    };
    for (int trial = 0; trial < 100; ++trial) {
        std::size_t n = 2 + uniform_below(rng, 60);
        auto g = random_connected(n, 3.0 / static_cast<double>(n), rng);
        auto r = static_cast<Vertex>(uniform_below(rng, n));
        std::vector<double> w(g.num_edges());
        for (auto& x : w) x = static_cast<double>(1 + uniform_below(rng, 20));
        auto wg = WeightedGraph::from_edge_weights(g, w);
        std::vector<Vertex> terms{r};
        auto k = 1 + uniform_below(rng, n);
        for (std::size_t i = 0; i < k; ++i) terms.push_back(static_cast<Vertex>(uniform_below(rng, n)));
        auto t = RootedTree::from_edges(r, mehlhorn_steiner(wg, QuerySet(terms)).edges);
        note(adjust_violation(g, t, r), "random trial " + std::to_string(trial));
    }
    for (Vertex h = 5; h <= 30; ++h) {
        // Spine 0..h with a tooth on every spine vertex, plus a shortcut 0 - s - h in G.
        std::vector<Edge> tree_edges;
        for (Vertex i = 0; i < h; ++i) tree_edges.push_back({i, i + 1});
        for (Vertex i = 1; i <= h; ++i) tree_edges.push_back({i, h + i});
        auto all = tree_edges;
        all.push_back({0, 2 * h + 1});
        all.push_back({2 * h + 1, h});
        auto g = Graph::from_edges(2 * h + 2, all);
        note(adjust_violation(g, RootedTree::from_edges(0, tree_edges), 0), "comb h=" + std::to_string(h));
    }
    return {bad == 0, "100 random triples + 26 combs, " + std::to_string(bad) + " violations" +
                          (first.empty() ? "" : " (first: " + first + ")")};
}

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
        auto nb = wg.topology().neighbors(u);
        auto ws = wg.arc_weights(u);
        for (std::size_t i = 0; i < nb.size(); ++i)
            if (!in[nb[i]] && ws[i] < key[nb[i]]) key[nb[i]] = ws[i];
    }
    return total;
}

Outcome mehlhorn_bound() {
    std::mt19937_64 rng(5);
    std::size_t bad = 0, mst_bad = 0;
    auto weighted = [&](std::size_t n) {
        auto g = connected_er(n, 0.4, rng);
        std::vector<double> w(g.num_edges());
        for (auto& x : w) x = static_cast<double>(1 + uniform_below(rng, 9));
        return WeightedGraph::from_edge_weights(std::move(g), w);
    };
    for (int trial = 0; trial < 250; ++trial) {
        std::size_t n = 2 + uniform_below(rng, 9);
        auto wg = weighted(n);
        auto q = random_query(n, 1 + uniform_below(rng, std::min<std::size_t>(4, n)), rng);
        double approx = tree_weight(wg, mehlhorn_steiner(wg, q));
        double exact = tree_weight(wg, brute_force_steiner(wg, q));
        if (approx > 2.0 * exact) ++bad;
    }
    for (int trial = 0; trial < 100; ++trial) {
        auto wg = weighted(2 + uniform_below(rng, 9));
        std::vector<Vertex> all(wg.num_vertices());
        for (Vertex i = 0; i < all.size(); ++i) all[i] = i;
        if (tree_weight(wg, mehlhorn_steiner(wg, QuerySet(all))) != prim_weight(wg)) ++mst_bad;
    }
    return {bad == 0 && mst_bad == 0, "250 instances, " + std::to_string(bad) + " over 2x; 100 Q=V cases, " +
                                          std::to_string(mst_bad) + " differ from the MST"};
}

Outcome karate(bool& containment) {
    auto g = load_karate();
    std::vector<Vertex> reference{0, 11, 24, 25, 29, 31, 33};
    auto bound = wiener_index(g, reference);
    auto c = wiener_steiner(g, QuerySet({11, 24, 25, 29}));
    bool hard = 2 * c.wiener <= 3 * bound;
    for (Vertex v : {11, 24, 25, 29}) hard = hard && std::binary_search(c.vertices.begin(), c.vertices.end(), v);
    auto leader = wiener_steiner(g, QuerySet({3, 11, 16}));
    containment = leader.size <= 6 && std::binary_search(leader.vertices.begin(), leader.vertices.end(), 0);
    std::ostringstream s;
    s << "W = " << c.wiener << " vs reference " << bound << " (limit " << 1.5 * static_cast<double>(bound)
      << "); {4,12,17} -> size " << leader.size << ", contains 1: " << (containment ? "yes" : "no")
      << " [informative]";
    return {hard, s.str()};
}

Outcome wiener_fixtures() {
    bool ok = wiener_index(path_graph(10)) == 165;
    for (std::uint64_t n = 1; n <= 50; ++n) {
        ok = ok && wiener_index(path_graph(n)) == n * (n * n - 1) / 6;
        ok = ok && wiener_index(complete_graph(n)) == n * (n - 1) / 2;
    }
    return {ok, "path(10) = " + std::to_string(wiener_index(path_graph(10))) + ", paths and cliques n <= 50"};
}

Outcome ip_exporter() {
    auto triangle = complete_graph(3);
    auto model = export_flow_ip(triangle, QuerySet({0, 1}));
    auto predicted = flow_model_size(3, 3, 2);
    bool ok = model.variables.size() == 24 && model.constraints.size() == 32 && predicted.variables == 24 &&
              predicted.constraints == 32;

    std::mt19937_64 rng(8);
    std::size_t bad = 0;
    for (int trial = 0; trial < 100; ++trial) {
        std::size_t n = 3 + uniform_below(rng, 8);
        auto g = connected_er(n, 0.45, rng);
        auto s = random_connected_set(g, 2 + uniform_below(rng, n - 1), rng);
        std::vector<Vertex> qv;
        for (Vertex v : s)
            if (uniform_below(rng, 2) == 0) qv.push_back(v);
        if (qv.empty()) qv.push_back(s.front());
        QuerySet q(qv);
        auto w = static_cast<double>(wiener_index(g, s));
        auto flow = verify_ip_assignment(export_flow_ip(g, q), g, s, q);
        auto tree = verify_ip_assignment(export_tree_ip(g, q, CyclePolicy{4}), g, s, q);
        if (!flow.feasible() || flow.objective != w || !tree.feasible()) ++bad;
    }
    ok = ok && bad == 0;

    auto g = load_karate();
    QuerySet q({11, 24, 25, 29});
    auto a = write_lp(export_flow_ip(g, q));
    auto b = write_lp(export_flow_ip(g, q));
    auto c = write_lp(read_lp_string(a));
    bool stable = a == b && a == c;
    auto ta = write_lp(export_tree_ip(g, q, CyclePolicy{4}));
    stable = stable && ta == write_lp(export_tree_ip(g, q, CyclePolicy{4}));
    ok = ok && stable;
    return {ok, "triangle: " + std::to_string(model.variables.size()) + " variables, " +
                    std::to_string(model.constraints.size()) + " constraints; " + std::to_string(bad) +
                    " bad verifications of 100; LP text stable: " + (stable ? "yes" : "no")};
}

Outcome stp_ingestion() {
    std::size_t parsed = 0, failed = 0;
    for (const auto& entry : std::filesystem::directory_iterator(MWC_TEST_DATA)) {
        if (entry.path().extension() != ".stp") continue;
        try {
            load_graph(entry.path().string(), "stp");
            ++parsed;
        } catch (const std::exception&) {
            ++failed;
        }
    }
    // Terminal count straight from the "T " lines.
    std::ifstream in(data_path("hc6u_synthetic.stp"));
    std::size_t t_lines = 0;
    for (std::string line; std::getline(in, line);)
        if (line.rfind("T ", 0) == 0) ++t_lines;
    auto hc = load_graph(data_path("hc6u_synthetic.stp"), "stp");
    std::size_t k = hc.terminals.size();
    bool ok = failed == 0 && parsed >= 3 && k == t_lines && k >= 8 && k <= 2048;
    return {ok, std::to_string(parsed) + " fixtures parsed, " + std::to_string(failed) + " failed; hypercube has " +
                    std::to_string(k) + " terminals (" + std::to_string(t_lines) + " T lines)"};
}

Outcome scaling() {
    // Average degree 8; the same five queries are timed three times per size.
    std::map<std::size_t, double> median_ms;
    for (std::size_t m : {10'000u, 100'000u}) {
        auto g = generate_synthetic(GraphModel::ErdosRenyi, m / 4, m, 11);
        WorkloadSpec spec;
        spec.sizes = {5};
        spec.repetitions = 5;
        spec.seed = 3;
        auto w = generate_workload(g, spec);
        std::vector<double> runs;
        for (int run = 0; run < 3; ++run) {
            auto t0 = Clock::now();
            for (const auto& q : w.queries) wiener_steiner(g, q);
            runs.push_back(seconds_since(t0) * 1000.0);
        }
        std::sort(runs.begin(), runs.end());
        median_ms[m] = runs[1];
    }
    double ratio = median_ms[100'000] / median_ms[10'000];
    std::ostringstream s;
    s << std::fixed << std::setprecision(1) << "m=1e4: " << median_ms[10'000] << " ms, m=1e5: " << median_ms[100'000]
      << " ms, ratio " << std::setprecision(2) << ratio;
    return {ratio <= 15.0, s.str()};
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

Outcome determinism() {
    auto dir = std::filesystem::temp_directory_path() / ("mwc_acceptance_" + std::to_string(::getpid()));
    std::filesystem::create_directories(dir);
    auto graph = data_path("karate.txt");
    auto run = [&](const std::string& name, const std::string& threads) {
        auto path = (dir / name).string();
        std::vector<std::string> args{"mwc",         "bench",    "--graph",     graph,      "--sizes",
                                      "3,5",         "--repetitions", "4",      "--seed",   "17",
                                      "--methods",   "ws-q,st,exact", "--threads", threads, "--out",
                                      path};
        std::vector<const char*> argv;
        for (auto& a : args) argv.push_back(a.c_str());
        std::ostringstream out, err;
        int code = cli_main(static_cast<int>(argv.size()), argv.data(), out, err);
        return std::make_pair(code, out.str() + slurp(path));
    };
    auto csv1 = run("a.csv", "1");
    auto csv2 = run("b.csv", "1");
    auto csv3 = run("c.csv", "3");
    auto json1 = run("a.json", "1");
    auto json2 = run("b.json", "1");
    std::filesystem::remove_all(dir);
    bool codes = csv1.first == 0 && csv2.first == 0 && csv3.first == 0 && json1.first == 0 && json2.first == 0;
    bool same = csv1.second == csv2.second && csv1.second == csv3.second && json1.second == json2.second;
    bool nonempty = csv1.second.size() > 100 && json1.second.size() > 100;
    return {codes && same && nonempty, std::string("CSV identical: ") + (csv1.second == csv2.second ? "yes" : "no") +
                                           ", across thread counts: " + (csv1.second == csv3.second ? "yes" : "no") +
                                           ", JSON identical: " + (json1.second == json2.second ? "yes" : "no")};
}

}  // namespace

int main() {
    bool containment = false;
    std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"optimality gap vs brute force", optimality_gap},
        {"two-vertex queries are exact", pair_exactness},
        {"root distance sandwich", sandwich},
        {"distance adjustment contract", adjust_contract},
        {"Steiner 2-approximation and MST", mehlhorn_bound},
        {"karate club", [&] { return karate(containment); }},
        {"Wiener index fixtures", wiener_fixtures},
        {"IP exporter", ip_exporter},
        {"STP ingestion", stp_ingestion},
        {"runtime scaling", scaling},
        {"bench determinism", determinism},
    };
    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        failures += !o.pass;
        std::cout << (o.pass ? "PASS" : "FAIL") << " " << (i + 1) << " " << criteria[i].first << ": " << o.detail
                  << std::endl;
    }
    return failures == 0 ? 0 : 1;
}
