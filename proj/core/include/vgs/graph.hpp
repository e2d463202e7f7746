#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace vgs {

using Vertex = std::uint32_t;
using Edge = std::pair<Vertex, Vertex>;  // stored with first < second

// Immutable simple undirected graph over vertices 0..n-1 in CSR form.
// Neighbor lists are sorted ascending.
class Graph {
public:
    Graph() = default;

    // Normalises orientation and drops duplicate edges. Self-loops or
    // out-of-range endpoints throw ValidationError.
    static Graph from_edges(std::size_t node_count, std::span<const Edge> edges);

    std::size_t node_count() const { return offsets_.empty() ? 0 : offsets_.size() - 1; }
    std::size_t edge_count() const { return edges_.size(); }

    std::span<const Vertex> neighbors(Vertex v) const {
        return {adjacency_.data() + offsets_[v], adjacency_.data() + offsets_[v + 1]};
    }
    std::size_t degree(Vertex v) const { return offsets_[v + 1] - offsets_[v]; }
    bool has_edge(Vertex u, Vertex v) const;

    // Sorted lexicographically.
    std::span<const Edge> edges() const { return edges_; }

private:
    std::vector<std::size_t> offsets_;
    std::vector<Vertex> adjacency_;
    std::vector<Edge> edges_;
};

}  // namespace vgs
