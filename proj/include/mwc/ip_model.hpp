#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include "mwc/graph.hpp"

namespace mwc {

enum class IPKind { Flow, Tree };
enum class Sense { LessEqual, GreaterEqual, Equal };

struct Variable {
    std::string name;
    double lower = 0.0;
    std::optional<double> upper;
    bool binary = false;

    friend bool operator==(const Variable&, const Variable&) = default;
};

struct Term {
    std::size_t var = 0;
    double coef = 0.0;

    friend bool operator==(const Term&, const Term&) = default;
};

struct Constraint {
    std::string name;
    std::vector<Term> terms;
    Sense sense = Sense::Equal;
    double rhs = 0.0;

    friend bool operator==(const Constraint&, const Constraint&) = default;
};

/// Linear program with binary y variables; always a minimization.
struct IPModel {
    IPKind kind = IPKind::Flow;
    std::vector<std::string> header;
    std::vector<Variable> variables;
    std::vector<Constraint> constraints;
    std::vector<Term> objective;

    std::optional<std::size_t> find(const std::string& name) const;
    std::size_t add_variable(Variable v);

    friend bool operator==(const IPModel& a, const IPModel& b) {
        return a.kind == b.kind && a.header == b.header && a.variables == b.variables &&
               a.constraints == b.constraints && a.objective == b.objective;
    }

  private:
    // Name lookup, rebuilt lazily when `variables` was edited directly.
    mutable std::unordered_map<std::string, std::size_t> index_;
};

/// Closed-form sizes of the flow model on a component with n vertices, m edges and k query vertices.
struct ModelSize {
    std::size_t variables = 0;
    std::size_t constraints = 0;
};
ModelSize flow_model_size(std::size_t n, std::size_t m, std::size_t k);

/// Multi-commodity flow formulation over unordered pairs s < t of Q's component.
/// Throws TooLargeError if the model would exceed `max_variables`.
IPModel export_flow_ip(const Graph& g, const QuerySet& q, std::size_t max_variables = 5'000'000);

struct CyclePolicy {
    /// Emit cycle-elimination rows for simple cycles up to this length; none when empty.
    std::optional<std::size_t> max_length;
    std::size_t max_cycles = 100'000;
};

/// Compact spanning-tree relaxation rooted at the smallest query vertex. Without
/// all cycle rows its optimum is a lower bound on the minimum Wiener index.
IPModel export_tree_ip(const Graph& g, const QuerySet& q, const CyclePolicy& cycles = {});

/// Simple cycles of length 3..max_length, each listed once starting at its smallest vertex.
std::vector<std::vector<Vertex>> enumerate_cycles(const Graph& g, std::size_t max_length, std::size_t max_count,
                                                  bool* truncated = nullptr);

/// LP-file text (Minimize / Subject To / Bounds / Binary / End). Deterministic byte output.
std::string write_lp(const IPModel& model);
IPModel read_lp(std::istream& in);
IPModel read_lp_string(const std::string& text);

struct Violation {
    std::string row;
    double lhs = 0.0;
    Sense sense = Sense::Equal;
    double rhs = 0.0;
};

struct VerificationReport {
    std::vector<Violation> violations;
    double objective = 0.0;
    std::uint64_t wiener = 0;

    bool feasible() const { return violations.empty(); }
    nlohmann::json to_json(IPKind kind) const;
};

/// Builds the intended assignment for connector S (y from membership, p from
/// pair membership, flows or parent arcs from shortest paths / a BFS tree inside
/// G[S]) and checks it against every row of the model.
VerificationReport verify_ip_assignment(const IPModel& model, const Graph& g, std::span<const Vertex> s,
                                        const QuerySet& q);

}  // namespace mwc
