#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "mwc/graph.hpp"
#include "mwc/wiener_steiner.hpp"

namespace mwc {

struct WorkloadSpec {
    std::vector<std::size_t> sizes;
    std::optional<double> target_avg_distance;
    std::size_t repetitions = 1;
    std::uint64_t seed = 0;
    double tolerance = 0.5;
    std::size_t max_retries = 1000;
};

struct Workload {
    WorkloadSpec spec;
    std::vector<QuerySet> queries;
};

/// Mean shortest-path distance over unordered pairs of Q in G (0 for |Q| = 1).
double mean_pairwise_distance(const Graph& g, const QuerySet& q);

/// Random query sets drawn from the largest component. With a distance target,
/// vertices are picked from BFS rings around already chosen members so the mean
/// pairwise distance tracks the target; sets outside the tolerance are rejected.
Workload generate_workload(const Graph& g, const WorkloadSpec& spec);

enum class Method { WsQ, St, Exact };
std::string to_string(Method m);
Method parse_method(const std::string& name);

struct BenchRecord {
    std::string dataset;
    Method method = Method::WsQ;
    std::size_t query_id = 0;
    std::size_t query_size = 0;
    std::vector<Vertex> vertices;
    std::size_t size = 0;
    double density = 0.0;
    std::optional<double> betweenness;  // empty when skipped
    std::uint64_t wiener = 0;
    double wall_ms = 0.0;
    std::optional<std::string> error;
};

struct BenchConfig {
    AlgorithmConfig algorithm;
    std::size_t exact_budget = 20;
    /// Exact betweenness is only computed up to this many edges.
    std::size_t betweenness_edge_limit = 100'000;
    unsigned threads = 1;
};

struct SummaryRow {
    std::string dataset;
    Method method = Method::WsQ;
    std::size_t query_size = 0;
    std::size_t runs = 0;
    std::size_t failures = 0;
    double mean_size = 0.0;
    double mean_density = 0.0;
    std::optional<double> mean_betweenness;
    double mean_wiener = 0.0;
    double mean_ms = 0.0;
};

struct BenchResult {
    std::vector<BenchRecord> records;   // ordered by (dataset, method, query id)
    std::vector<SummaryRow> summary;    // ordered by (dataset, method, |Q|)
};

BenchResult run_bench(const Graph& g, const std::string& dataset, const Workload& workload,
                      std::span<const Method> methods, const BenchConfig& cfg = {});

/// Fixed column order: dataset,method,query_id,query_size,size,density,bc,wiener,vertices[,wall_ms]
std::string records_to_csv(const std::vector<BenchRecord>& records, bool timing = false);
nlohmann::json bench_to_json(const BenchResult& result, bool timing = false);

}  // namespace mwc
