#pragma once

#include <cstdint>
#include <random>

#include "mwc/graph.hpp"

namespace mwc {

enum class GraphModel { ErdosRenyi, PowerLaw };

/// ER samples exactly `target_m` distinct edges uniformly. PL grows the graph by
/// preferential attachment with ceil(target_m / n) edges per new vertex.
/// Deterministic for a fixed seed on every platform. Connectivity is not guaranteed.
Graph generate_synthetic(GraphModel model, std::size_t n, std::size_t target_m, std::uint64_t seed);

/// Uniform draw in [0, bound) by rejection; unlike std::uniform_int_distribution
/// its output does not depend on the standard library implementation.
inline std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound) {
    if (bound == 0) throw std::invalid_argument("uniform_below: empty range");
    std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % bound;
    std::uint64_t x;
    do x = rng();
    while (x >= limit);
    return x % bound;
}

}  // namespace mwc
