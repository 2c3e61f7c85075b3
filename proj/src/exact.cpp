#include "mwc/exact.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <optional>
#include <tuple>

#include "mwc/metrics.hpp"

namespace mwc {

namespace {

using Mask = std::uint64_t;

// Wiener index of the vertex set `s` over bitmask adjacency, or nullopt when G[s] is disconnected.
std::optional<std::uint64_t> mask_wiener(const std::vector<Mask>& adj, Mask s) {
    std::uint64_t total = 0;
    for (Mask rest = s; rest; rest &= rest - 1) {
        int src = std::countr_zero(rest);
        Mask seen = Mask{1} << src, frontier = seen;
        std::uint64_t depth = 0;
        while (frontier) {
            Mask next = 0;
            for (Mask f = frontier; f; f &= f - 1) next |= adj[std::countr_zero(f)];
            next &= s & ~seen;
            ++depth;
            total += depth * static_cast<std::uint64_t>(std::popcount(next));
            seen |= next;
            frontier = next;
        }
        if (seen != s) return std::nullopt;
    }
    return total / 2;
}

std::vector<Vertex> mask_members(const std::vector<Vertex>& local_to_global, Mask s) {
    std::vector<Vertex> out;
    for (; s; s &= s - 1) out.push_back(local_to_global[std::countr_zero(s)]);
    return out;
}

}  // namespace

Connector brute_force_connector(const Graph& g, const QuerySet& q, std::size_t budget) {
    q.validate(g);
    auto component = component_of(g, q.vertices()[0]);
    std::vector<Vertex> free;
    for (Vertex v : component)
        if (!q.contains(v)) free.push_back(v);
    if (free.size() > budget || free.size() >= 63)
        throw TooLargeError("exact search limited to " + std::to_string(budget) + " non-query vertices, instance has " +
                            std::to_string(free.size()));

    if (component.size() <= 64) {
        const auto local = [&](Vertex v) {
            return static_cast<int>(std::lower_bound(component.begin(), component.end(), v) - component.begin());
        };
        std::vector<Mask> adj(component.size(), 0);
        for (std::size_t i = 0; i < component.size(); ++i)
            for (Vertex w : g.neighbors(component[i])) adj[i] |= Mask{1} << local(w);
        Mask query = 0;
        for (Vertex v : q.vertices()) query |= Mask{1} << local(v);
        std::vector<int> free_bits;
        for (Vertex v : free) free_bits.push_back(local(v));

        bool found = false;
        std::uint64_t best_w = 0;
        Mask best = 0;
        for (std::uint64_t pick = 0; pick < (std::uint64_t{1} << free.size()); ++pick) {
            Mask s = query;
            for (std::size_t i = 0; i < free_bits.size(); ++i)
                if (pick >> i & 1) s |= Mask{1} << free_bits[i];
            auto w = mask_wiener(adj, s);
            if (!w) continue;
            bool better = !found || *w < best_w;
            if (found && *w == best_w) {
                int a = std::popcount(s), b = std::popcount(best);
                better = a < b || (a == b && mask_members(component, s) < mask_members(component, best));
            }
            if (better) {
                found = true;
                best_w = *w;
                best = s;
            }
        }
        return make_connector(g, mask_members(component, best));
    }

    bool found = false;
    Connector best;
    for (std::uint64_t pick = 0; pick < (std::uint64_t{1} << free.size()); ++pick) {
        std::vector<Vertex> s = q.vertices();
        for (std::size_t i = 0; i < free.size(); ++i)
            if (pick >> i & 1) s.push_back(free[i]);
        std::sort(s.begin(), s.end());
        Connector c;
        try {
            c = make_connector(g, s);
        } catch (const InfeasibleError&) {
            continue;
        }
        using Rank = std::tuple<std::uint64_t, std::size_t, const std::vector<Vertex>&>;
        if (!found || Rank(c.wiener, c.size, c.vertices) < Rank(best.wiener, best.size, best.vertices)) {
            found = true;
            best = std::move(c);
        }
    }
    return best;
}

}  // namespace mwc
