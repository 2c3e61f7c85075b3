#pragma once

#include "mwc/graph.hpp"

namespace mwc {

/// Exact minimum Wiener connector by enumerating every superset of Q inside Q's
/// component. Ties are broken by (W, |S|, lexicographic S). Throws TooLargeError
/// when more than `budget` non-query vertices would be enumerated.
Connector brute_force_connector(const Graph& g, const QuerySet& q, std::size_t budget = 20);

}  // namespace mwc
