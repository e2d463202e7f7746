#include "vgs/graph.hpp"

#include <algorithm>
#include <string>

#include "vgs/errors.hpp"

namespace vgs {

Graph Graph::from_edges(std::size_t node_count, std::span<const Edge> edges) {
    Graph g;
    g.edges_.reserve(edges.size());
    for (auto [u, v] : edges) {
        if (u == v) throw ValidationError("self-loop on vertex " + std::to_string(u));
        if (u >= node_count || v >= node_count) {
            throw ValidationError("edge endpoint out of range");
        }
        g.edges_.emplace_back(std::min(u, v), std::max(u, v));
    }
    std::sort(g.edges_.begin(), g.edges_.end());
    g.edges_.erase(std::unique(g.edges_.begin(), g.edges_.end()), g.edges_.end());

    g.offsets_.assign(node_count + 1, 0);
    for (auto [u, v] : g.edges_) {
        ++g.offsets_[u + 1];
        ++g.offsets_[v + 1];
    }
    for (std::size_t i = 0; i < node_count; ++i) g.offsets_[i + 1] += g.offsets_[i];

    g.adjacency_.resize(2 * g.edges_.size());
    std::vector<std::size_t> fill(g.offsets_.begin(), g.offsets_.end() - 1);
    // Lexicographic edge order fills each list with smaller neighbours first,
    // both runs ascending, so the lists come out sorted.
    for (auto [u, v] : g.edges_) {
        g.adjacency_[fill[u]++] = v;
        g.adjacency_[fill[v]++] = u;
    }
    return g;
}

bool Graph::has_edge(Vertex u, Vertex v) const {
    if (u >= node_count() || v >= node_count()) return false;
    if (degree(u) > degree(v)) std::swap(u, v);
    const auto nb = neighbors(u);
    return std::binary_search(nb.begin(), nb.end(), v);
}

}  // namespace vgs
