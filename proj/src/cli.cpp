#include "mwc/cli.hpp"

#include <algorithm>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>

#include "mwc/bench.hpp"
#include "mwc/exact.hpp"
#include "mwc/generators.hpp"
#include "mwc/io.hpp"
#include "mwc/ip_model.hpp"
#include "mwc/metrics.hpp"
#include "mwc/wiener_steiner.hpp"

namespace mwc {

namespace {

class UsageError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

template <typename T>
std::vector<T> parse_list(const std::string& text, const char* what) {
    std::vector<T> out;
    std::string token;
    std::istringstream in(text);
    while (std::getline(in, token, ',')) {
        token.erase(0, token.find_first_not_of(" \t"));
        token.erase(token.find_last_not_of(" \t") + 1);
        if (token.empty()) continue;
        T value{};
        auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
        if (ec != std::errc() || ptr != token.data() + token.size())
            throw UsageError(std::string("bad ") + what + " entry: " + token);
        out.push_back(value);
    }
    if (out.empty()) throw UsageError(std::string("empty ") + what + " list");
    return out;
}

std::vector<std::string> parse_names(const std::string& text) {
    std::vector<std::string> out;
    std::string token;
    std::istringstream in(text);
    while (std::getline(in, token, ','))
        if (!token.empty()) out.push_back(token);
    return out;
}

StpInstance load_instance(const std::string& path, const std::string& format, std::ostream& err) {
    auto inst = load_graph(path, format);
    const Graph& g = inst.graph;
    if (g.dropped_self_loops() + g.dropped_duplicates() > 0)
        err << "warning: dropped " << g.dropped_self_loops() << " self-loops and " << g.dropped_duplicates()
            << " duplicate edges\n";
    return inst;
}

// Options shared by the subcommands that solve or export one query.
struct InstanceOptions {
    std::string graph;
    std::string format = "edgelist";
    std::string query;
    std::size_t random_query = 0;
    std::uint64_t seed = 0;

    void add(CLI::App* app) {
        app->add_option("--graph", graph, "input graph file")->required();
        app->add_option("--format", format, "input format")->check(CLI::IsMember({"edgelist", "stp"}));
        app->add_option("--query", query, "comma separated 0-based query vertices (default: STP terminals)");
        app->add_option("--random-query", random_query, "draw a uniform random query of this size instead");
        app->add_option("--seed", seed, "seed for --random-query");
    }

    std::pair<StpInstance, QuerySet> load(std::ostream& err) const {
        StpInstance inst = load_instance(graph, format, err);
        QuerySet q;
        if (!query.empty()) {
            q = QuerySet(parse_list<Vertex>(query, "query"));
        } else if (random_query > 0) {
            WorkloadSpec spec;
            spec.sizes = {random_query};
            spec.seed = seed;
            q = generate_workload(inst.graph, spec).queries.front();
        } else if (inst.terminals.size() > 0) {
            q = inst.terminals;
        } else {
            throw UsageError("no query given: use --query or --random-query");
        }
        for (Vertex v : q.vertices())
            if (v >= inst.graph.num_vertices())
                throw UsageError("query vertex " + std::to_string(v) + " out of range");
        q.validate(inst.graph);
        return {std::move(inst), std::move(q)};
    }
};

// Writes to the named file, or to `out` when the path is empty or "-".
void emit(const std::string& path, const std::string& text, std::ostream& out) {
    if (path.empty() || path == "-") {
        out << text;
        return;
    }
    std::ofstream file(path, std::ios::binary);
    if (!file) throw UsageError("cannot write " + path);
    file << text;
}

LambdaPolicy parse_policy(const std::string& name) {
    if (name == "bracket") return LambdaPolicy::Bracketing;
    if (name == "positive") return LambdaPolicy::PositiveOnly;
    return LambdaPolicy::Union;
}

}  // namespace

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Minimum Wiener connector toolkit"};
    app.name("mwc");
    app.require_subcommand(1);

    InstanceOptions query_opts;
    double beta = 1.0;
    std::string lambda_policy = "union";
    std::string query_out = "json";
    std::string output_path;
    unsigned threads = 1;
    bool prune = false;
    auto* query = app.add_subcommand("query", "approximate minimum Wiener connector");
    query_opts.add(query);
    query->add_option("--beta", beta, "lambda grid step (1 + beta)")->check(CLI::PositiveNumber);
    query->add_option("--lambda-grid", lambda_policy, "lambda exponents to try")
        ->check(CLI::IsMember({"bracket", "positive", "union"}));
    query->add_option("--out", query_out, "output format")->check(CLI::IsMember({"json", "dot"}));
    query->add_option("--output", output_path, "write to this file instead of stdout");
    query->add_option("--threads", threads, "worker threads")->check(CLI::Range(1u, 256u));
    query->add_flag("--prune", prune, "drop non-query vertices while that lowers W");

    InstanceOptions exact_opts;
    std::size_t budget = 20;
    auto* exact = app.add_subcommand("exact", "exact minimum Wiener connector by enumeration");
    exact_opts.add(exact);
    exact->add_option("--budget", budget, "maximum number of non-query vertices to enumerate");
    exact->add_option("--output", output_path, "write to this file instead of stdout");

    InstanceOptions ip_opts;
    std::string ip_kind = "flow";
    std::string cycles = "none";
    std::size_t max_cycles = 100'000;
    auto* export_ip = app.add_subcommand("export-ip", "write an integer program in LP format");
    ip_opts.add(export_ip);
    export_ip->add_option("--kind", ip_kind, "formulation")->check(CLI::IsMember({"flow", "tree"}));
    export_ip->add_option("--cycles", cycles, "cycle rows for the tree model: none or a maximum length");
    export_ip->add_option("--max-cycles", max_cycles, "cap on emitted cycle rows");
    export_ip->add_option("--out", output_path, "LP file path (default stdout)");

    std::string bench_graph, bench_format = "edgelist", dataset, sizes = "5", methods = "ws-q,st", bench_out;
    std::optional<double> avg_distance;
    std::size_t repetitions = 1, bench_budget = 20;
    std::uint64_t bench_seed = 0;
    bool timing = false, use_terminals = false;
    auto* bench = app.add_subcommand("bench", "run methods over a generated query workload");
    bench->add_option("--graph", bench_graph, "input graph file")->required();
    bench->add_option("--format", bench_format, "input format")->check(CLI::IsMember({"edgelist", "stp"}));
    bench->add_option("--dataset", dataset, "dataset id in the report (default: file stem)");
    bench->add_option("--sizes", sizes, "comma separated query sizes");
    bench->add_option("--avg-distance", avg_distance, "target mean pairwise distance of each query");
    bench->add_option("--repetitions", repetitions, "queries per size");
    bench->add_option("--seed", bench_seed, "workload seed");
    bench->add_flag("--use-terminals", use_terminals, "use the STP terminal set as the only query");
    bench->add_option("--methods", methods, "comma separated subset of ws-q,st,exact");
    bench->add_option("--budget", bench_budget, "size guard for the exact method");
    bench->add_option("--beta", beta, "lambda grid step (1 + beta)")->check(CLI::PositiveNumber);
    bench->add_option("--threads", threads, "worker threads")->check(CLI::Range(1u, 256u));
    bench->add_flag("--timing", timing, "include wall-clock columns (makes output nondeterministic)");
    bench->add_option("--out", bench_out, "records file; .json writes JSON, anything else CSV");

    std::string model = "er";
    std::size_t gen_n = 100, gen_m = 300;
    std::uint64_t gen_seed = 0;
    auto* gen = app.add_subcommand("gen", "generate a synthetic edge list");
    gen->add_option("--model", model, "random graph model")->check(CLI::IsMember({"er", "pl"}));
    gen->add_option("--n", gen_n, "vertices");
    gen->add_option("--m", gen_m, "target edges");
    gen->add_option("--seed", gen_seed, "generator seed");
    gen->add_option("--out", output_path, "edge list path (default stdout)");

    std::string stats_graph, stats_format = "edgelist";
    auto* stats = app.add_subcommand("stats", "graph summary");
    stats->add_option("--graph", stats_graph, "input graph file")->required();
    stats->add_option("--format", stats_format, "input format")->check(CLI::IsMember({"edgelist", "stp"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n" << app.help();
        return 1;
    }

    AlgorithmConfig algo;
    algo.beta = beta;
    algo.lambda_policy = parse_policy(lambda_policy);
    algo.threads = threads;
    algo.prune = prune;

    try {
        if (query->parsed()) {
            auto [inst, q] = query_opts.load(err);
            auto c = wiener_steiner(inst.graph, q, algo);
            emit(output_path,
                 query_out == "dot" ? export_dot(inst.graph, q, c) : connector_to_json(c, &inst.graph).dump() + "\n",
                 out);
        } else if (exact->parsed()) {
            auto [inst, q] = exact_opts.load(err);
            auto c = brute_force_connector(inst.graph, q, budget);
            emit(output_path, connector_to_json(c, &inst.graph).dump() + "\n", out);
        } else if (export_ip->parsed()) {
            auto [inst, q] = ip_opts.load(err);
            IPModel model;
            if (ip_kind == "flow") {
                if (cycles != "none") throw UsageError("--cycles only applies to --kind tree");
                model = export_flow_ip(inst.graph, q);
            } else {
                CyclePolicy policy;
                policy.max_cycles = max_cycles;
                if (cycles != "none") {
                    auto len = parse_list<std::size_t>(cycles, "cycle length");
                    if (len.size() != 1 || len[0] < 3) throw UsageError("--cycles takes none or a length >= 3");
                    policy.max_length = len[0];
                }
                model = export_tree_ip(inst.graph, q, policy);
            }
            emit(output_path, write_lp(model), out);
        } else if (bench->parsed()) {
            StpInstance inst = load_instance(bench_graph, bench_format, err);
            Workload workload;
            if (use_terminals) {
                if (inst.terminals.size() == 0) throw UsageError("--use-terminals needs an STP file with terminals");
                inst.terminals.validate(inst.graph);
                workload.queries.push_back(inst.terminals);
            } else {
                WorkloadSpec spec;
                spec.sizes = parse_list<std::size_t>(sizes, "size");
                spec.target_avg_distance = avg_distance;
                spec.repetitions = repetitions;
                spec.seed = bench_seed;
                workload = generate_workload(inst.graph, spec);
            }
            std::vector<Method> ms;
            for (const auto& name : parse_names(methods)) {
                try {
                    ms.push_back(parse_method(name));
                } catch (const std::invalid_argument& e) {
                    throw UsageError(e.what());
                }
            }
            if (ms.empty()) throw UsageError("no methods given");
            if (dataset.empty()) dataset = std::filesystem::path(bench_graph).stem().string();
            BenchConfig cfg;
            cfg.algorithm = algo;
            cfg.algorithm.threads = 1;
            cfg.threads = threads;
            cfg.exact_budget = bench_budget;
            auto result = run_bench(inst.graph, dataset, workload, ms, cfg);
            bool json = bench_out.size() >= 5 && bench_out.compare(bench_out.size() - 5, 5, ".json") == 0;
            emit(bench_out, json ? bench_to_json(result, timing).dump(2) + "\n" : records_to_csv(result.records, timing),
                 out);
            if (!bench_out.empty() && !json) {
                // Summary goes to stdout next to the CSV file.
                nlohmann::json summary = bench_to_json(result, timing)["summary"];
                out << summary.dump(2) << "\n";
            }
        } else if (gen->parsed()) {
            auto g = generate_synthetic(model == "er" ? GraphModel::ErdosRenyi : GraphModel::PowerLaw, gen_n, gen_m,
                                        gen_seed);
            std::ostringstream text;
            write_edge_list(text, g);
            emit(output_path, text.str(), out);
        } else if (stats->parsed()) {
            auto inst = load_instance(stats_graph, stats_format, err);
            const auto& g = inst.graph;
            auto n = g.num_vertices(), m = g.num_edges();
            auto [comp, count] = connected_components(g);
            std::vector<std::size_t> comp_size(count, 0);
            for (auto c : comp) ++comp_size[c];
            std::size_t max_degree = 0, min_degree = n ? g.degree(0) : 0;
            for (Vertex v = 0; v < n; ++v) {
                max_degree = std::max(max_degree, g.degree(v));
                min_degree = std::min(min_degree, g.degree(v));
            }
            nlohmann::json j;
            j["schema"] = 1;
            j["n"] = n;
            j["m"] = m;
            j["density"] = n >= 2 ? 2.0 * static_cast<double>(m) / (static_cast<double>(n) * static_cast<double>(n - 1))
                                  : 0.0;
            j["avg_degree"] = n ? 2.0 * static_cast<double>(m) / static_cast<double>(n) : 0.0;
            j["max_degree"] = max_degree;
            j["min_degree"] = min_degree;
            j["components"] = count;
            j["largest_component"] = comp_size.empty() ? 0 : *std::max_element(comp_size.begin(), comp_size.end());
            if (inst.terminals.size() > 0) j["terminals"] = inst.terminals.size();
            out << j.dump(2) << "\n";
        }
    } catch (const InfeasibleError& e) {
        err << "infeasible: " << e.what() << "\n";
        return 2;
    } catch (const TooLargeError& e) {
        err << "too large: " << e.what() << "\n";
        return 2;
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

}  // namespace mwc
