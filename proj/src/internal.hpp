#pragma once

#include <memory>
#include <numeric>
#include <vector>

#include "mwc/graph.hpp"

namespace mwc::detail {

// Non-owning handle for a graph that outlives every use of the pointer.
inline std::shared_ptr<const Graph> borrow(const Graph& g) {
    return std::shared_ptr<const Graph>(std::shared_ptr<const Graph>{}, &g);
}

class DisjointSets {
  public:
    explicit DisjointSets(std::size_t n) : parent_(n), rank_(n, 0) {
        std::iota(parent_.begin(), parent_.end(), Vertex{0});
    }
    Vertex find(Vertex x) {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }
    bool unite(Vertex a, Vertex b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        if (rank_[a] < rank_[b]) std::swap(a, b);
        parent_[b] = a;
        if (rank_[a] == rank_[b]) ++rank_[a];
        return true;
    }

  private:
    std::vector<Vertex> parent_;
    std::vector<std::uint8_t> rank_;
};

}  // namespace mwc::detail
