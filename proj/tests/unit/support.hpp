// Shared fixtures and brute-force oracles for the test suites.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

#include "vgs/graph.hpp"
#include "vgs/rng.hpp"
#include "vgs/snapshot.hpp"

namespace vgs::testing {

inline Graph make_graph(std::size_t n, std::vector<Edge> edges) { return Graph::from_edges(n, std::move(edges)); }

inline Graph complete_graph(std::size_t n) {
    std::vector<Edge> e;
    for (Vertex i = 0; i < n; ++i)
        for (Vertex j = i + 1; j < n; ++j) e.push_back({i, j});
    return make_graph(n, e);
}

inline Graph path_graph(std::size_t n) {
    std::vector<Edge> e;
    for (Vertex i = 0; i + 1 < n; ++i) e.push_back({i, i + 1});
    return make_graph(n, e);
}

inline Graph cycle_graph(std::size_t n) {
    std::vector<Edge> e;
    for (Vertex i = 0; i < n; ++i) e.push_back({std::min<Vertex>(i, (i + 1) % n), std::max<Vertex>(i, (i + 1) % n)});
    return make_graph(n, e);
}

// Vertex 0 is the centre.
inline Graph star_graph(std::size_t leaves) {
    std::vector<Edge> e;
    for (Vertex i = 1; i <= leaves; ++i) e.push_back({0, i});
    return make_graph(leaves + 1, e);
}

inline Graph random_graph(std::size_t n, double p, Rng& rng) {
    std::vector<Edge> e;
    for (Vertex i = 0; i < n; ++i)
        for (Vertex j = i + 1; j < n; ++j)
            if (rng.unit() < p) e.push_back({i, j});
    return make_graph(n, e);
}

// Snapshot around an explicit graph; node ids equal vertex indices.
inline Snapshot snapshot_of(const Graph& g, std::vector<Point> positions = {}, double t = 0.0) {
    std::vector<Node> nodes;
    for (Vertex v = 0; v < g.node_count(); ++v) {
        const Point p = v < positions.size() ? positions[v] : Point{static_cast<double>(v), 0.0};
        nodes.push_back({v, NodeKind::vehicle, p});
    }
    return Snapshot(t, std::move(nodes), g);
}

inline constexpr int kInf = std::numeric_limits<int>::max() / 4;

inline std::vector<std::vector<int>> adjacency_matrix(const Graph& g) {
    const std::size_t n = g.node_count();
    std::vector<std::vector<int>> a(n, std::vector<int>(n, 0));
    for (const auto& [u, v] : g.edges()) a[u][v] = a[v][u] = 1;
    return a;
}

// Floyd-Warshall hop distances; kInf for unreachable pairs.
inline std::vector<std::vector<int>> floyd_warshall(const Graph& g) {
    const std::size_t n = g.node_count();
    auto d = adjacency_matrix(g);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) d[i][j] = i == j ? 0 : (d[i][j] ? 1 : kInf);
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
    return d;
}

// Betweenness by enumerating every shortest path explicitly (DFS along the
// distance layers), normalised per component by (n_c-1)(n_c-2)/2.
inline std::vector<double> betweenness_by_enumeration(const Graph& g) {
    const std::size_t n = g.node_count();
    const auto d = floyd_warshall(g);
    const auto a = adjacency_matrix(g);
    std::vector<double> bc(n, 0.0);
    for (std::size_t s = 0; s < n; ++s) {
        for (std::size_t t = s + 1; t < n; ++t) {
            if (d[s][t] >= kInf || d[s][t] < 2) continue;
            std::vector<std::vector<std::size_t>> paths;
            std::vector<std::size_t> cur{s};
            auto dfs = [&](auto&& self, std::size_t u) -> void {
                if (u == t) {
                    paths.push_back(cur);
                    return;
                }
                for (std::size_t w = 0; w < n; ++w) {
                    if (a[u][w] && d[s][w] == d[s][u] + 1 && d[w][t] == d[u][t] - 1) {
                        cur.push_back(w);
                        self(self, w);
                        cur.pop_back();
                    }
                }
            };
            dfs(dfs, s);
            for (const auto& p : paths)
                for (std::size_t i = 1; i + 1 < p.size(); ++i) bc[p[i]] += 1.0 / static_cast<double>(paths.size());
        }
    }
    for (std::size_t v = 0; v < n; ++v) {
        std::size_t nc = 0;
        for (std::size_t w = 0; w < n; ++w) nc += d[v][w] < kInf ? 1 : 0;
        bc[v] = nc < 3 ? 0.0 : bc[v] / (static_cast<double>((nc - 1) * (nc - 2)) / 2.0);
    }
    return bc;
}

// Eq. 4 as a literal double sum over all ordered vertex pairs.
inline double modularity_direct(const Graph& g, const std::vector<std::uint32_t>& c) {
    const std::size_t n = g.node_count();
    const auto a = adjacency_matrix(g);
    double two_m = 0.0;
    for (std::size_t i = 0; i < n; ++i) two_m += static_cast<double>(g.degree(static_cast<Vertex>(i)));
    double q = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (c[i] == c[j])
                q += a[i][j] - static_cast<double>(g.degree(static_cast<Vertex>(i))) *
                                   static_cast<double>(g.degree(static_cast<Vertex>(j))) / two_m;
    return q / two_m;
}

inline std::uint64_t triangles_by_triples(const Graph& g) {
    const auto a = adjacency_matrix(g);
    const std::size_t n = g.node_count();
    std::uint64_t t = 0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            for (std::size_t k = j + 1; k < n; ++k) t += a[i][j] && a[j][k] && a[i][k];
    return t;
}

inline std::vector<std::uint32_t> lobby_by_definition(const Graph& g) {
    std::vector<std::uint32_t> out(g.node_count(), 0);
    for (Vertex v = 0; v < g.node_count(); ++v) {
        for (std::uint32_t k = 1; k <= g.degree(v); ++k) {
            std::uint32_t c = 0;
            for (Vertex w : g.neighbors(v)) c += g.degree(w) >= k ? 1 : 0;
            if (c >= k) out[v] = k;
        }
    }
    return out;
}

inline double cross(Point o, Point a, Point b) { return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x); }

// Hull edges are the ordered pairs with every other point on their left (and
// collinear points between the ends); the shoelace sum over those edges is the
// hull area.
inline double hull_area_oracle(const std::vector<Point>& pts) {
    double area = 0;
    for (const Point& a : pts) {
        for (const Point& b : pts) {
            if (a == b) continue;
            bool ok = true;
            for (const Point& c : pts) {
                const double z = cross(a, b, c);
                if (z < 0) ok = false;
                if (z == 0 && !(c == a || c == b)) {
                    const double dot = (c.x - a.x) * (b.x - a.x) + (c.y - a.y) * (b.y - a.y);
                    if (dot < 0 || dot > (b.x - a.x) * (b.x - a.x) + (b.y - a.y) * (b.y - a.y)) ok = false;
                }
            }
            if (ok) area += a.x * b.y - b.x * a.y;
        }
    }
    return std::abs(area) / 2.0;
}

}  // namespace vgs::testing
