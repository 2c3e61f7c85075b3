#include "mwc/ip_model.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>

#include "mwc/metrics.hpp"
#include "mwc/paths.hpp"

namespace mwc {

namespace {

Variable continuous(std::string name) {
    Variable v;
    v.name = std::move(name);
    return v;
}

constexpr double kFeasibilityTol = 1e-9;
constexpr std::size_t kTermsPerLine = 8;

std::string vname(char prefix, std::initializer_list<Vertex> ids) {
    std::string s(1, prefix);
    for (Vertex v : ids) {
        s += '_';
        s += std::to_string(v);
    }
    return s;
}

std::string format_number(double x) {
    if (x == 0.0) return "0";
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, ptr);
}

const char* sense_text(Sense s) {
    switch (s) {
    case Sense::LessEqual: return "<=";
    case Sense::GreaterEqual: return ">=";
    case Sense::Equal: return "=";
    }
    return "=";
}

std::size_t pair_count(std::size_t n) { return n * (n - 1) / 2; }

// Vertices and edges of the component holding Q.
struct ComponentView {
    std::vector<Vertex> vertices;
    std::vector<Edge> edges;  // u < v, both in the component

    explicit ComponentView(const Graph& g, const QuerySet& q) {
        q.validate(g);
        vertices = component_of(g, q.vertices()[0]);
        for (Vertex u : vertices)
            for (Vertex v : g.neighbors(u))
                if (u < v) edges.emplace_back(u, v);
    }
};

void write_terms(std::ostringstream& out, const IPModel& m, const std::vector<Term>& terms) {
    for (std::size_t i = 0; i < terms.size(); ++i) {
        if (i > 0 && i % kTermsPerLine == 0) out << "\n   ";
        double c = terms[i].coef;
        if (i == 0)
            out << ' ' << format_number(c);
        else
            out << (c < 0 ? " - " : " + ") << format_number(std::fabs(c));
        out << ' ' << m.variables[terms[i].var].name;
    }
}

}  // namespace

std::optional<std::size_t> IPModel::find(const std::string& name) const {
    if (index_.size() != variables.size()) {
        index_.clear();
        for (std::size_t i = 0; i < variables.size(); ++i) index_.emplace(variables[i].name, i);
    }
    auto it = index_.find(name);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

std::size_t IPModel::add_variable(Variable v) {
    if (find(v.name)) throw std::invalid_argument("duplicate variable " + v.name);
    variables.push_back(std::move(v));
    index_.emplace(variables.back().name, variables.size() - 1);
    return variables.size() - 1;
}

ModelSize flow_model_size(std::size_t n, std::size_t m, std::size_t k) {
    std::size_t pairs = pair_count(n);
    return {n + pairs + 2 * m * pairs, pairs * n + 2 * m * pairs + pairs + k};
}

IPModel export_flow_ip(const Graph& g, const QuerySet& q, std::size_t max_variables) {
    ComponentView comp(g, q);
    const auto& vs = comp.vertices;
    auto size = flow_model_size(vs.size(), comp.edges.size(), q.size());
    if (size.variables > max_variables)
        throw TooLargeError("flow model would have " + std::to_string(size.variables) + " variables (limit " +
                            std::to_string(max_variables) + ")");

    IPModel m;
    m.kind = IPKind::Flow;
    m.header = {
        "kind: flow",
        "Minimum Wiener connector, multi-commodity flow formulation over unordered pairs s < t.",
        "f_s_t_u_v = flow of commodity (s,t) on arc u->v; objective sum of f equals W(G[S]).",
        "Linking p_s_t >= y_s + y_t - 1 is one-sided; minimization keeps p_s_t at its lower bound.",
        "vertices " + std::to_string(vs.size()) + ", edges " + std::to_string(comp.edges.size()) + ", variables " +
            std::to_string(size.variables) + ", constraints " + std::to_string(size.constraints),
    };

    for (Vertex u : vs) m.add_variable({vname('y', {u}), 0.0, 1.0, true});
    for (std::size_t i = 0; i < vs.size(); ++i)
        for (std::size_t j = i + 1; j < vs.size(); ++j) m.add_variable(continuous(vname('p', {vs[i], vs[j]})));

    for (std::size_t i = 0; i < vs.size(); ++i) {
        for (std::size_t j = i + 1; j < vs.size(); ++j) {
            Vertex s = vs[i], t = vs[j];
            std::size_t p = *m.find(vname('p', {s, t}));
            for (auto [u, v] : comp.edges) {
                std::size_t fuv = m.add_variable(continuous(vname('f', {s, t, u, v})));
                std::size_t fvu = m.add_variable(continuous(vname('f', {s, t, v, u})));
                m.objective.push_back({fuv, 1.0});
                m.objective.push_back({fvu, 1.0});
            }
            // Net inflow at v: -p at s, +p at t, zero elsewhere.
            for (Vertex v : vs) {
                Constraint c{vname('c', {s, t, v}), {}, Sense::Equal, 0.0};
                for (Vertex u : g.neighbors(v)) {
                    c.terms.push_back({*m.find(vname('f', {s, t, u, v})), 1.0});
                    c.terms.push_back({*m.find(vname('f', {s, t, v, u})), -1.0});
                }
                if (v == s) c.terms.push_back({p, 1.0});
                if (v == t) c.terms.push_back({p, -1.0});
                m.constraints.push_back(std::move(c));
            }
            for (auto [a, b] : comp.edges) {
                for (auto [u, v] : {Edge{a, b}, Edge{b, a}}) {
                    m.constraints.push_back({vname('k', {s, t, u, v}),
                                             {{*m.find(vname('f', {s, t, u, v})), 1.0}, {*m.find(vname('y', {u})), -1.0}},
                                             Sense::LessEqual,
                                             0.0});
                }
            }
            m.constraints.push_back({vname('l', {s, t}),
                                     {{p, 1.0}, {*m.find(vname('y', {s})), -1.0}, {*m.find(vname('y', {t})), -1.0}},
                                     Sense::GreaterEqual,
                                     -1.0});
        }
    }
    for (Vertex u : q.vertices()) m.constraints.push_back({vname('q', {u}), {{*m.find(vname('y', {u})), 1.0}}, Sense::Equal, 1.0});
    return m;
}

std::vector<std::vector<Vertex>> enumerate_cycles(const Graph& g, std::size_t max_length, std::size_t max_count,
                                                  bool* truncated) {
    std::vector<std::vector<Vertex>> cycles;
    if (truncated) *truncated = false;
    std::vector<Vertex> path;
    std::vector<char> on_path(g.num_vertices(), 0);
    // Explicit DFS stack of (vertex, next neighbour index).
    std::vector<std::pair<Vertex, std::size_t>> stack;
    for (Vertex s = 0; s < g.num_vertices(); ++s) {
        path = {s};
        on_path[s] = 1;
        stack = {{s, 0}};
        while (!stack.empty()) {
            auto& [u, next] = stack.back();
            auto nb = g.neighbors(u);
            if (next == nb.size()) {
                on_path[u] = 0;
                path.pop_back();
                stack.pop_back();
                continue;
            }
            Vertex w = nb[next++];
            if (w == s && path.size() >= 3 && path[1] < path.back()) {
                if (cycles.size() == max_count) {
                    if (truncated) *truncated = true;
                    for (Vertex v : path) on_path[v] = 0;
                    return cycles;
                }
                cycles.push_back(path);
            } else if (w > s && !on_path[w] && path.size() < max_length) {
                on_path[w] = 1;
                path.push_back(w);
                stack.emplace_back(w, 0);
            }
        }
    }
    return cycles;
}

IPModel export_tree_ip(const Graph& g, const QuerySet& q, const CyclePolicy& policy) {
    ComponentView comp(g, q);
    const auto& vs = comp.vertices;
    const Vertex root = q.vertices().front();

    std::vector<std::vector<Vertex>> cycles;
    bool truncated = false;
    if (policy.max_length && *policy.max_length >= 3) {
        auto sub = induced_subgraph(g, vs);
        cycles = enumerate_cycles(sub.graph, *policy.max_length, policy.max_cycles, &truncated);
        for (auto& c : cycles)
            for (auto& v : c) v = sub.to_global[v];
    }

    IPModel m;
    m.kind = IPKind::Tree;
    m.header = {
        "kind: tree",
        "Minimum Wiener connector, spanning-tree relaxation rooted at q = " + std::to_string(root) + ".",
        "Objective uses d_G(s,t) <= d_S(s,t); x_u_v = 1 iff v is the parent of u.",
    };
    bool exact = comp.edges.size() + 1 == vs.size() ||
                 (policy.max_length && *policy.max_length >= vs.size() && !truncated);
    if (exact) {
        m.header.push_back("Cycle rows complete: optimum bounds the connector problem with distances taken in G.");
    } else {
        m.header.push_back("RELAXATION: cycle rows incomplete; the optimum is a valid LOWER BOUND on the minimum Wiener index.");
    }
    m.header.push_back("cycle policy: " +
                       (policy.max_length ? "enumerate_up_to " + std::to_string(*policy.max_length) : std::string("none")) +
                       ", cap " + std::to_string(policy.max_cycles) + ", emitted " + std::to_string(cycles.size()) +
                       (truncated ? " (truncated at cap)" : ""));

    for (Vertex u : vs) m.add_variable({vname('y', {u}), 0.0, 1.0, true});
    std::vector<std::pair<std::size_t, double>> objective;
    for (std::size_t i = 0; i < vs.size(); ++i) {
        auto bfs = bfs_sssp(g, vs[i]);
        for (std::size_t j = i + 1; j < vs.size(); ++j) {
            std::size_t p = m.add_variable(continuous(vname('p', {vs[i], vs[j]})));
            m.objective.push_back({p, static_cast<double>(bfs.dist[vs[j]])});
        }
    }
    for (auto [u, v] : comp.edges) {
        m.add_variable(continuous(vname('x', {u, v})));
        m.add_variable(continuous(vname('x', {v, u})));
    }

    auto x = [&](Vertex a, Vertex b) { return *m.find(vname('x', {a, b})); };
    auto y = [&](Vertex a) { return *m.find(vname('y', {a})); };

    for (Vertex v : vs) {
        if (v == root) continue;
        Constraint c{vname('a', {v}), {}, Sense::Equal, 0.0};
        for (Vertex u : g.neighbors(v)) c.terms.push_back({x(v, u), 1.0});
        c.terms.push_back({y(v), -1.0});
        m.constraints.push_back(std::move(c));
    }
    {
        Constraint c{"tree_size", {}, Sense::Equal, -1.0};
        for (auto [u, v] : comp.edges) {
            c.terms.push_back({x(u, v), 1.0});
            c.terms.push_back({x(v, u), 1.0});
        }
        for (Vertex u : vs) c.terms.push_back({y(u), -1.0});
        m.constraints.push_back(std::move(c));
    }
    for (auto [u, v] : comp.edges) {
        for (Vertex end : {u, v})
            m.constraints.push_back(
                {vname('k', {u, v, end}), {{x(u, v), 1.0}, {x(v, u), 1.0}, {y(end), -1.0}}, Sense::LessEqual, 0.0});
    }
    for (std::size_t i = 0; i < vs.size(); ++i)
        for (std::size_t j = i + 1; j < vs.size(); ++j)
            m.constraints.push_back({vname('l', {vs[i], vs[j]}),
                                     {{*m.find(vname('p', {vs[i], vs[j]})), 1.0}, {y(vs[i]), -1.0}, {y(vs[j]), -1.0}},
                                     Sense::GreaterEqual,
                                     -1.0});
    for (Vertex u : q.vertices()) m.constraints.push_back({vname('q', {u}), {{y(u), 1.0}}, Sense::Equal, 1.0});
    for (std::size_t ci = 0; ci < cycles.size(); ++ci) {
        const auto& cyc = cycles[ci];
        Constraint c{"cycle_" + std::to_string(ci), {}, Sense::LessEqual, static_cast<double>(cyc.size() - 1)};
        for (std::size_t i = 0; i < cyc.size(); ++i) {
            Vertex a = cyc[i], b = cyc[(i + 1) % cyc.size()];
            c.terms.push_back({x(a, b), 1.0});
            c.terms.push_back({x(b, a), 1.0});
        }
        m.constraints.push_back(std::move(c));
    }
    return m;
}

std::string write_lp(const IPModel& model) {
    std::ostringstream out;
    for (const auto& line : model.header) out << "\\ " << line << '\n';
    out << "Minimize\n obj:";
    write_terms(out, model, model.objective);
    out << "\nSubject To\n";
    for (const auto& c : model.constraints) {
        out << ' ' << c.name << ':';
        write_terms(out, model, c.terms);
        out << ' ' << sense_text(c.sense) << ' ' << format_number(c.rhs) << '\n';
    }
    out << "Bounds\n";
    for (const auto& v : model.variables) {
        if (v.upper)
            out << ' ' << format_number(v.lower) << " <= " << v.name << " <= " << format_number(*v.upper) << '\n';
        else
            out << ' ' << v.name << " >= " << format_number(v.lower) << '\n';
    }
    out << "Binary\n";
    for (const auto& v : model.variables)
        if (v.binary) out << ' ' << v.name << '\n';
    out << "End\n";
    return out.str();
}

IPModel read_lp(std::istream& in) {
    enum class Part { Header, Objective, Constraints, Bounds, Binary, Done };
    IPModel m;
    Part part = Part::Header;
    std::vector<std::string> tokens;  // pending objective / constraint tokens
    std::vector<std::string> declared;
    std::size_t lineno = 0;

    auto parse_double = [&](const std::string& tok) {
        double x = 0.0;
        auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), x);
        if (ec != std::errc{} || ptr != tok.data() + tok.size()) throw ParseError("malformed number '" + tok + "'", lineno);
        return x;
    };
    auto var_index = [&](const std::string& name) {
        if (auto i = m.find(name)) return *i;
        return m.add_variable(continuous(name));
    };
    // Parses "[name:] c1 v1 +/- c2 v2 ... [sense rhs]".
    auto parse_terms = [&](std::vector<std::string>::const_iterator it, std::vector<std::string>::const_iterator end,
                           std::vector<Term>& terms) {
        double sign = 1.0;
        while (it != end) {
            const auto& tok = *it;
            if (tok == "<=" || tok == ">=" || tok == "=") return it;
            if (tok == "+" || tok == "-") {
                sign = tok == "-" ? -1.0 : 1.0;
                ++it;
                continue;
            }
            double c = parse_double(tok);
            if (++it == end) throw ParseError("coefficient without variable", lineno);
            terms.push_back({var_index(*it), sign * c});
            sign = 1.0;
            ++it;
        }
        return it;
    };
    auto flush_constraint = [&]() {
        if (tokens.empty()) return;
        if (tokens[0].empty() || tokens[0].back() != ':') throw ParseError("constraint without name", lineno);
        Constraint c;
        c.name = tokens[0].substr(0, tokens[0].size() - 1);
        auto it = parse_terms(tokens.begin() + 1, tokens.end(), c.terms);
        if (it == tokens.end() || std::next(it) == tokens.end()) throw ParseError("constraint " + c.name + " lacks a right-hand side", lineno);
        c.sense = *it == "<=" ? Sense::LessEqual : *it == ">=" ? Sense::GreaterEqual : Sense::Equal;
        c.rhs = parse_double(*std::next(it));
        m.constraints.push_back(std::move(c));
        tokens.clear();
    };

    std::string line;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.rfind("\\ ", 0) == 0 && part == Part::Header) {
            m.header.push_back(line.substr(2));
            continue;
        }
        std::istringstream ss(line);
        std::vector<std::string> words;
        for (std::string w; ss >> w;) words.push_back(w);
        if (words.empty()) continue;
        std::string head = words[0];
        std::transform(head.begin(), head.end(), head.begin(), [](unsigned char c) { return std::tolower(c); });
        if (head == "minimize") {
            part = Part::Objective;
            continue;
        }
        if (head == "subject" || head == "bounds" || head == "binary" || head == "end") {
            if (part == Part::Objective) {
                if (tokens.empty() || tokens[0] != "obj:") throw ParseError("objective must be named obj", lineno);
                parse_terms(tokens.begin() + 1, tokens.end(), m.objective);
                tokens.clear();
            } else if (part == Part::Constraints) {
                flush_constraint();
            }
            part = head == "subject" ? Part::Constraints : head == "bounds" ? Part::Bounds : head == "binary" ? Part::Binary : Part::Done;
            continue;
        }
        switch (part) {
        case Part::Objective:
            tokens.insert(tokens.end(), words.begin(), words.end());
            break;
        case Part::Constraints:
            if (words[0].back() == ':') flush_constraint();
            tokens.insert(tokens.end(), words.begin(), words.end());
            break;
        case Part::Bounds:
            declared.push_back(words.size() == 5 ? words[2] : words[0]);
            if (words.size() == 5 && words[1] == "<=" && words[3] == "<=") {
                auto& v = m.variables[var_index(words[2])];
                v.lower = parse_double(words[0]);
                v.upper = parse_double(words[4]);
            } else if (words.size() == 3 && words[1] == ">=") {
                m.variables[var_index(words[0])].lower = parse_double(words[2]);
            } else {
                throw ParseError("unsupported bound line", lineno);
            }
            break;
        case Part::Binary:
            for (const auto& w : words) m.variables[var_index(w)].binary = true;
            break;
        case Part::Header:
        case Part::Done:
            throw ParseError("unexpected content outside sections", lineno);
        }
    }
    if (part != Part::Done) throw ParseError("missing End", lineno);
    m.kind = IPKind::Flow;
    for (const auto& h : m.header)
        if (h == "kind: tree") m.kind = IPKind::Tree;

    // Variables were created in first-appearance order; restore the declared (Bounds) order.
    std::vector<std::size_t> order;
    std::vector<char> listed(m.variables.size(), 0);
    for (const auto& name : declared) {
        auto i = *m.find(name);
        if (!listed[i]) {
            listed[i] = 1;
            order.push_back(i);
        }
    }
    for (std::size_t i = 0; i < m.variables.size(); ++i)
        if (!listed[i]) order.push_back(i);
    std::vector<std::size_t> remap(m.variables.size());
    IPModel ordered;
    ordered.kind = m.kind;
    ordered.header = std::move(m.header);
    for (std::size_t k = 0; k < order.size(); ++k) {
        remap[order[k]] = k;
        ordered.add_variable(m.variables[order[k]]);
    }
    auto fix = [&](std::vector<Term>& terms) {
        for (auto& t : terms) t.var = remap[t.var];
    };
    ordered.objective = std::move(m.objective);
    fix(ordered.objective);
    ordered.constraints = std::move(m.constraints);
    for (auto& c : ordered.constraints) fix(c.terms);
    return ordered;
}

IPModel read_lp_string(const std::string& text) {
    std::istringstream in(text);
    return read_lp(in);
}

nlohmann::json VerificationReport::to_json(IPKind kind) const {
    nlohmann::json j;
    j["schema"] = 1;
    j["kind"] = kind == IPKind::Flow ? "flow" : "tree";
    j["feasible"] = feasible();
    j["objective"] = objective;
    j["wiener"] = wiener;
    j["violations"] = nlohmann::json::array();
    for (const auto& v : violations)
        j["violations"].push_back({{"row", v.row}, {"lhs", v.lhs}, {"sense", sense_text(v.sense)}, {"rhs", v.rhs}});
    return j;
}

VerificationReport verify_ip_assignment(const IPModel& model, const Graph& g, std::span<const Vertex> s,
                                        const QuerySet& q) {
    auto sub = induced_subgraph(g, s);
    for (Vertex v : q.vertices())
        if (!sub.to_local(v)) throw std::invalid_argument("vertex set does not contain the query set");
    VerificationReport report;
    report.wiener = wiener_index(sub.graph);  // throws when G[S] is disconnected

    std::vector<double> value(model.variables.size(), 0.0);
    auto set = [&](const std::string& name, double x) {
        auto i = model.find(name);
        if (!i) {
            report.violations.push_back({"missing variable " + name, x, Sense::Equal, 0.0});
            return;
        }
        value[*i] = x;
    };
    const auto& members = sub.to_global;
    for (Vertex u : members) set(vname('y', {u}), 1.0);
    for (std::size_t i = 0; i < members.size(); ++i)
        for (std::size_t j = i + 1; j < members.size(); ++j) set(vname('p', {members[i], members[j]}), 1.0);

    if (model.kind == IPKind::Flow) {
        for (Vertex i = 0; i < members.size(); ++i) {
            auto bfs = bfs_sssp(sub.graph, i);
            for (Vertex j = i + 1; j < members.size(); ++j) {
                // Route s -> t along the BFS parent chain (path_to lists it from s).
                auto path = path_to(bfs, j);
                for (std::size_t k = 0; k + 1 < path.size(); ++k)
                    set(vname('f', {members[i], members[j], members[path[k]], members[path[k + 1]]}), 1.0);
            }
        }
    } else {
        auto root = sub.to_local(q.vertices().front());
        auto bfs = bfs_sssp(sub.graph, *root);
        for (Vertex v = 0; v < members.size(); ++v)
            if (v != *root) set(vname('x', {members[v], members[bfs.parent[v]]}), 1.0);
    }

    for (const auto& t : model.objective) report.objective += t.coef * value[t.var];
    for (const auto& c : model.constraints) {
        double lhs = 0.0;
        for (const auto& t : c.terms) lhs += t.coef * value[t.var];
        bool ok = c.sense == Sense::LessEqual      ? lhs <= c.rhs + kFeasibilityTol
                  : c.sense == Sense::GreaterEqual ? lhs >= c.rhs - kFeasibilityTol
                                                   : std::fabs(lhs - c.rhs) <= kFeasibilityTol;
        if (!ok) report.violations.push_back({c.name, lhs, c.sense, c.rhs});
    }
    for (std::size_t i = 0; i < model.variables.size(); ++i) {
        const auto& v = model.variables[i];
        if (value[i] < v.lower - kFeasibilityTol || (v.upper && value[i] > *v.upper + kFeasibilityTol))
            report.violations.push_back({"bound " + v.name, value[i], Sense::GreaterEqual, v.lower});
    }
    return report;
}

}  // namespace mwc
