#include "mwc/bench.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <map>
#include <random>
#include <sstream>
#include <thread>

#include "mwc/exact.hpp"
#include "mwc/generators.hpp"
#include "mwc/metrics.hpp"
#include "mwc/paths.hpp"
#include "mwc/steiner.hpp"

namespace mwc {

namespace {

constexpr std::size_t kRingSamples = 16;

std::string format_double(double x) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, ptr);
}

std::vector<Vertex> largest_component(const Graph& g) {
    auto [comp, count] = connected_components(g);
    std::vector<std::size_t> sizes(count, 0);
    for (auto c : comp) ++sizes[c];
    auto biggest = static_cast<std::uint32_t>(std::max_element(sizes.begin(), sizes.end()) - sizes.begin());
    std::vector<Vertex> out;
    for (Vertex v = 0; v < g.num_vertices(); ++v)
        if (comp[v] == biggest) out.push_back(v);
    return out;
}

template <typename T>
const T& pick(std::mt19937_64& rng, const std::vector<T>& items) {
    return items[uniform_below(rng, items.size())];
}

// One attempt at a query of size k; returns the chosen vertices.
std::vector<Vertex> draw_query(const Graph& g, const std::vector<Vertex>& pool, std::size_t k,
                               std::optional<double> target, std::mt19937_64& rng) {
    std::vector<Vertex> chosen{pick(rng, pool)};
    if (!target) {
        while (chosen.size() < k) {
            Vertex v = pick(rng, pool);
            if (std::find(chosen.begin(), chosen.end(), v) == chosen.end()) chosen.push_back(v);
        }
        return chosen;
    }
    std::vector<HopDistances> from{bfs_sssp(g, chosen[0])};
    const auto radius = std::max<std::int64_t>(1, std::llround(*target));
    while (chosen.size() < k) {
        const auto& anchor = pick(rng, from);
        // Nearest nonempty ring to the target radius around the anchor.
        std::vector<Vertex> ring;
        for (std::int64_t delta = 0; ring.empty() && delta <= radius + static_cast<std::int64_t>(g.num_vertices()); ++delta) {
            for (std::int64_t r : {radius - delta, radius + delta}) {
                if (r < 1 || (delta == 0 && r != radius)) continue;
                for (Vertex v : pool)
                    if (anchor.dist[v] == r && std::find(chosen.begin(), chosen.end(), v) == chosen.end())
                        ring.push_back(v);
                if (delta == 0) break;
            }
        }
        if (ring.empty()) throw InfeasibleError("component too small for the requested query size");
        // Among a few ring samples keep the one whose mean distance to the members is closest to target.
        Vertex best = kNoVertex;
        double best_gap = 0.0;
        for (std::size_t s = 0; s < kRingSamples; ++s) {
            Vertex v = pick(rng, ring);
            double mean = 0.0;
            for (const auto& d : from) mean += static_cast<double>(d.dist[v]);
            mean /= static_cast<double>(from.size());
            double gap = std::fabs(mean - *target);
            if (best == kNoVertex || gap < best_gap) {
                best = v;
                best_gap = gap;
            }
        }
        chosen.push_back(best);
        from.push_back(bfs_sssp(g, best));
    }
    return chosen;
}

double mean(const std::vector<double>& xs) {
    if (xs.empty()) return 0.0;
    double s = 0.0;
    for (double x : xs) s += x;
    return s / static_cast<double>(xs.size());
}

}  // namespace

double mean_pairwise_distance(const Graph& g, const QuerySet& q) {
    const auto& vs = q.vertices();
    if (vs.size() < 2) return 0.0;
    std::uint64_t total = 0;
    for (std::size_t i = 0; i + 1 < vs.size(); ++i) {
        auto bfs = bfs_sssp(g, vs[i]);
        for (std::size_t j = i + 1; j < vs.size(); ++j) {
            if (!bfs.reachable(vs[j])) throw InfeasibleError("query vertices are not co-connected");
            total += static_cast<std::uint64_t>(bfs.dist[vs[j]]);
        }
    }
    return static_cast<double>(total) / static_cast<double>(vs.size() * (vs.size() - 1) / 2);
}

Workload generate_workload(const Graph& g, const WorkloadSpec& spec) {
    if (spec.target_avg_distance && *spec.target_avg_distance < 1.0)
        throw std::invalid_argument("target average distance must be at least 1");
    if (g.num_vertices() == 0) throw std::invalid_argument("cannot draw queries from an empty graph");
    auto pool = largest_component(g);
    Workload w;
    w.spec = spec;
    std::mt19937_64 rng(spec.seed);
    for (std::size_t k : spec.sizes) {
        if (k == 0) throw std::invalid_argument("query sizes must be at least 1");
        if (k > pool.size()) throw InfeasibleError("query size exceeds the largest component");
        for (std::size_t rep = 0; rep < spec.repetitions; ++rep) {
            bool accepted = false;
            for (std::size_t attempt = 0; attempt < spec.max_retries && !accepted; ++attempt) {
                std::vector<Vertex> chosen;
                try {
                    chosen = draw_query(g, pool, k, spec.target_avg_distance, rng);
                } catch (const InfeasibleError&) {
                    continue;
                }
                QuerySet q(std::move(chosen));
                if (spec.target_avg_distance && k >= 2 &&
                    std::fabs(mean_pairwise_distance(g, q) - *spec.target_avg_distance) > spec.tolerance)
                    continue;
                w.queries.push_back(std::move(q));
                accepted = true;
            }
            if (!accepted)
                throw InfeasibleError("could not generate a query of size " + std::to_string(k) +
                                      " with the requested average distance");
        }
    }
    return w;
}

std::string to_string(Method m) {
    switch (m) {
    case Method::WsQ: return "ws-q";
    case Method::St: return "st";
    case Method::Exact: return "exact";
    }
    return "?";
}

Method parse_method(const std::string& name) {
    if (name == "ws-q") return Method::WsQ;
    if (name == "st") return Method::St;
    if (name == "exact") return Method::Exact;
    throw std::invalid_argument("unknown method: " + name);
}

BenchResult run_bench(const Graph& g, const std::string& dataset, const Workload& workload,
                      std::span<const Method> methods, const BenchConfig& cfg) {
    std::optional<std::vector<double>> bc;
    if (g.num_edges() <= cfg.betweenness_edge_limit) bc = brandes_betweenness(g);

    struct Job {
        Method method;
        std::size_t query_id;
    };
    std::vector<Method> ordered(methods.begin(), methods.end());
    std::sort(ordered.begin(), ordered.end(), [](Method a, Method b) { return to_string(a) < to_string(b); });
    ordered.erase(std::unique(ordered.begin(), ordered.end()), ordered.end());
    std::vector<Job> jobs;
    for (Method m : ordered)
        for (std::size_t i = 0; i < workload.queries.size(); ++i) jobs.push_back({m, i});

    std::vector<BenchRecord> records(jobs.size());
    auto run_job = [&](std::size_t j) {
        const auto& job = jobs[j];
        const auto& q = workload.queries[job.query_id];
        BenchRecord& r = records[j];
        r.dataset = dataset;
        r.method = job.method;
        r.query_id = job.query_id;
        r.query_size = q.size();
        auto start = std::chrono::steady_clock::now();
        try {
            Connector c;
            switch (job.method) {
            case Method::WsQ: c = wiener_steiner(g, q, cfg.algorithm); break;
            case Method::St: c = steiner_baseline_st(g, q); break;
            case Method::Exact: c = brute_force_connector(g, q, cfg.exact_budget); break;
            }
            r.vertices = c.vertices;
            r.size = c.size;
            r.density = c.density;
            r.wiener = c.wiener;
            if (bc) {
                double sum = 0.0;
                for (Vertex v : c.vertices) sum += (*bc)[v];
                r.betweenness = sum / static_cast<double>(c.vertices.size());
            }
        } catch (const std::exception& e) {
            r.error = e.what();
        }
        r.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    };

    unsigned workers = std::max(1u, std::min<unsigned>(cfg.threads, static_cast<unsigned>(jobs.size())));
    if (workers == 1) {
        for (std::size_t j = 0; j < jobs.size(); ++j) run_job(j);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w)
            pool.emplace_back([&] {
                for (std::size_t j; (j = next.fetch_add(1)) < jobs.size();) run_job(j);
            });
        for (auto& t : pool) t.join();
    }

    BenchResult result;
    result.records = std::move(records);

    std::map<std::tuple<std::string, std::string, std::size_t>, std::vector<const BenchRecord*>> groups;
    for (const auto& r : result.records) groups[{r.dataset, to_string(r.method), r.query_size}].push_back(&r);
    for (const auto& [key, rs] : groups) {
        SummaryRow row;
        row.dataset = std::get<0>(key);
        row.method = parse_method(std::get<1>(key));
        row.query_size = std::get<2>(key);
        std::vector<double> size, density, bcs, wiener, ms;
        for (const auto* r : rs) {
            ++row.runs;
            if (r->error) {
                ++row.failures;
                continue;
            }
            size.push_back(static_cast<double>(r->size));
            density.push_back(r->density);
            wiener.push_back(static_cast<double>(r->wiener));
            ms.push_back(r->wall_ms);
            if (r->betweenness) bcs.push_back(*r->betweenness);
        }
        row.mean_size = mean(size);
        row.mean_density = mean(density);
        row.mean_wiener = mean(wiener);
        row.mean_ms = mean(ms);
        if (bc) row.mean_betweenness = mean(bcs);
        result.summary.push_back(row);
    }
    return result;
}

std::string records_to_csv(const std::vector<BenchRecord>& records, bool timing) {
    std::ostringstream out;
    out << "dataset,method,query_id,query_size,size,density,bc,wiener,vertices";
    if (timing) out << ",wall_ms";
    out << ",error\n";
    for (const auto& r : records) {
        out << r.dataset << ',' << to_string(r.method) << ',' << r.query_id << ',' << r.query_size << ',';
        if (r.error) {
            out << ",,,,";
        } else {
            out << r.size << ',' << format_double(r.density) << ','
                << (r.betweenness ? format_double(*r.betweenness) : std::string("skipped")) << ',' << r.wiener << ',';
            for (std::size_t i = 0; i < r.vertices.size(); ++i) out << (i ? " " : "") << r.vertices[i];
        }
        if (timing) out << ',' << format_double(r.wall_ms);
        out << ',';
        if (r.error) {
            std::string e = *r.error;
            std::replace(e.begin(), e.end(), ',', ';');
            std::replace(e.begin(), e.end(), '\n', ' ');
            out << e;
        }
        out << '\n';
    }
    return out.str();
}

nlohmann::json bench_to_json(const BenchResult& result, bool timing) {
    nlohmann::json j;
    j["schema"] = 1;
    j["records"] = nlohmann::json::array();
    for (const auto& r : result.records) {
        nlohmann::json rec = {{"dataset", r.dataset},
                              {"method", to_string(r.method)},
                              {"query_id", r.query_id},
                              {"query_size", r.query_size}};
        if (r.error) {
            rec["error"] = *r.error;
        } else {
            rec["vertices"] = r.vertices;
            rec["size"] = r.size;
            rec["density"] = r.density;
            rec["bc"] = r.betweenness ? nlohmann::json(*r.betweenness) : nlohmann::json("skipped");
            rec["wiener"] = r.wiener;
        }
        if (timing) rec["wall_ms"] = r.wall_ms;
        j["records"].push_back(std::move(rec));
    }
    j["summary"] = nlohmann::json::array();
    for (const auto& s : result.summary) {
        nlohmann::json row = {{"dataset", s.dataset},
                              {"method", to_string(s.method)},
                              {"query_size", s.query_size},
                              {"runs", s.runs},
                              {"failures", s.failures},
                              {"mean_size", s.mean_size},
                              {"mean_density", s.mean_density},
                              {"mean_wiener", s.mean_wiener}};
        row["mean_bc"] = s.mean_betweenness ? nlohmann::json(*s.mean_betweenness) : nlohmann::json("skipped");
        if (timing) row["mean_ms"] = s.mean_ms;
        if (s.failures == s.runs)
            for (const char* key : {"mean_size", "mean_density", "mean_wiener", "mean_bc", "mean_ms"})
                if (row.contains(key)) row[key] = nullptr;
        j["summary"].push_back(std::move(row));
    }
    return j;
}

}  // namespace mwc
