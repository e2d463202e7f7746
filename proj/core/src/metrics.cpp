#include "vgs/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "vgs/errors.hpp"
#include "vgs/stats.hpp"

namespace vgs {

std::vector<std::uint32_t> degree_vector(const Graph& g) {
    std::vector<std::uint32_t> out(g.node_count());
    for (Vertex v = 0; v < out.size(); ++v) out[v] = static_cast<std::uint32_t>(g.degree(v));
    return out;
}

std::optional<double> graph_density(const Graph& g) {
    const double n = static_cast<double>(g.node_count());
    if (g.node_count() < 2) return std::nullopt;
    return static_cast<double>(g.edge_count()) / (n * (n - 1.0) / 2.0);
}

std::vector<std::uint32_t> component_labels(const Graph& g) {
    constexpr std::uint32_t kUnset = UINT32_MAX;
    std::vector<std::uint32_t> label(g.node_count(), kUnset);
    std::vector<Vertex> stack;
    std::uint32_t next = 0;
    for (Vertex root = 0; root < label.size(); ++root) {
        if (label[root] != kUnset) continue;
        label[root] = next;
        stack.push_back(root);
        while (!stack.empty()) {
            const Vertex v = stack.back();
            stack.pop_back();
            for (Vertex w : g.neighbors(v)) {
                if (label[w] == kUnset) {
                    label[w] = next;
                    stack.push_back(w);
                }
            }
        }
        ++next;
    }
    return label;
}

std::optional<double> cluster_coefficient(std::span<const Vertex> members, const Graph& g) {
    if (members.size() < 2) return std::nullopt;
    std::vector<Vertex> sorted(members.begin(), members.end());
    std::sort(sorted.begin(), sorted.end());
    std::size_t twice_edges = 0;
    for (Vertex v : sorted) {
        for (Vertex w : g.neighbors(v)) {
            if (std::binary_search(sorted.begin(), sorted.end(), w)) ++twice_edges;
        }
    }
    const double n = static_cast<double>(sorted.size());
    return static_cast<double>(twice_edges) / (n * (n - 1.0));
}

namespace {

double hull_fraction(const Snapshot& s, std::span<const Vertex> members, const Region& region) {
    std::vector<Point> pts;
    pts.reserve(members.size());
    for (Vertex v : members) pts.push_back(s.node(v).position);
    const auto hull = convex_hull(pts);
    return polygon_area(hull) / region.area();
}

ClusterReport make_report(const Snapshot& s, std::vector<Vertex> members, const Region& region) {
    ClusterReport r;
    std::sort(members.begin(), members.end());
    r.members = std::move(members);
    for (Vertex v : r.members) {
        r.member_ids.push_back(s.node(v).id);
        r.has_vehicle = r.has_vehicle || s.node(v).kind == NodeKind::vehicle;
    }
    std::sort(r.member_ids.begin(), r.member_ids.end());
    for (Vertex v : r.members) r.edge_count += s.graph().degree(v);
    r.edge_count /= 2;  // components are closed under adjacency
    if (r.members.size() >= 2) {
        const double n = static_cast<double>(r.members.size());
        r.coefficient = 2.0 * static_cast<double>(r.edge_count) / (n * (n - 1.0));
    }
    r.hull_area_fraction = hull_fraction(s, r.members, region);
    return r;
}

}  // namespace

std::vector<ClusterReport> connected_components(const Snapshot& s, const Region& region) {
    const auto label = component_labels(s.graph());
    std::uint32_t count = 0;
    for (auto l : label) count = std::max(count, l + 1);
    std::vector<std::vector<Vertex>> groups(count);
    for (Vertex v = 0; v < label.size(); ++v) groups[label[v]].push_back(v);

    std::vector<ClusterReport> out;
    out.reserve(count);
    for (auto& group : groups) out.push_back(make_report(s, std::move(group), region));
    std::sort(out.begin(), out.end(), [](const ClusterReport& a, const ClusterReport& b) {
        return a.member_ids.front() < b.member_ids.front();
    });
    return out;
}

std::optional<ClusterReport> biggest_cluster_report(const Snapshot& s, const Region& region) {
    if (s.size() == 0) return std::nullopt;
    const auto label = component_labels(s.graph());
    std::uint32_t count = 0;
    for (auto l : label) count = std::max(count, l + 1);
    std::vector<std::size_t> size(count, 0);
    std::vector<NodeId> min_id(count, UINT32_MAX);
    for (Vertex v = 0; v < label.size(); ++v) {
        ++size[label[v]];
        min_id[label[v]] = std::min(min_id[label[v]], s.node(v).id);
    }
    std::uint32_t best = 0;
    for (std::uint32_t c = 1; c < count; ++c) {
        if (size[c] > size[best] || (size[c] == size[best] && min_id[c] < min_id[best])) best = c;
    }
    std::vector<Vertex> members;
    for (Vertex v = 0; v < label.size(); ++v) {
        if (label[v] == best) members.push_back(v);
    }
    return make_report(s, std::move(members), region);
}

std::uint64_t triangle_count(const Graph& g) {
    std::uint64_t total = 0;
    for (Vertex u = 0; u < g.node_count(); ++u) {
        const auto nu = g.neighbors(u);
        for (Vertex v : nu) {
            if (v <= u) continue;
            const auto nv = g.neighbors(v);
            // common neighbours w > v
            auto a = std::upper_bound(nu.begin(), nu.end(), v);
            auto b = std::upper_bound(nv.begin(), nv.end(), v);
            while (a != nu.end() && b != nv.end()) {
                if (*a < *b) {
                    ++a;
                } else if (*b < *a) {
                    ++b;
                } else {
                    ++total;
                    ++a;
                    ++b;
                }
            }
        }
    }
    return total;
}

DistanceHistogram distance_histogram(const Graph& g) {
    const std::size_t n = g.node_count();
    DistanceHistogram h;
    h.counts.assign(1, 0);
    std::vector<std::uint32_t> dist(n, UINT32_MAX);
    std::vector<Vertex> queue(n);
    for (Vertex s = 0; s < n; ++s) {
        if (g.degree(s) == 0) continue;
        std::size_t head = 0;
        std::size_t tail = 0;
        dist[s] = 0;
        queue[tail++] = s;
        while (head < tail) {
            const Vertex v = queue[head++];
            for (Vertex w : g.neighbors(v)) {
                if (dist[w] != UINT32_MAX) continue;
                dist[w] = dist[v] + 1;
                queue[tail++] = w;
                if (w > s) {
                    if (dist[w] >= h.counts.size()) h.counts.resize(dist[w] + 1, 0);
                    ++h.counts[dist[w]];
                    ++h.connected_pairs;
                }
            }
        }
        for (std::size_t i = 0; i < tail; ++i) dist[queue[i]] = UINT32_MAX;
    }
    return h;
}

std::optional<std::uint32_t> effective_diameter(const DistanceHistogram& h, double quantile) {
    if (h.connected_pairs == 0) return std::nullopt;
    if (!(quantile > 0.0 && quantile <= 1.0)) throw DomainError("quantile must be in (0, 1]");
    // Pairs needed, guarding against q*total landing a hair above an integer.
    const double needed = std::ceil(quantile * static_cast<double>(h.connected_pairs) - 1e-9);
    std::uint64_t cumulative = 0;
    for (std::uint32_t d = 1; d < h.counts.size(); ++d) {
        cumulative += h.counts[d];
        if (static_cast<double>(cumulative) >= needed) return d;
    }
    return static_cast<std::uint32_t>(h.counts.size() - 1);
}

std::optional<std::uint32_t> effective_diameter(const Graph& g, double quantile) {
    return effective_diameter(distance_histogram(g), quantile);
}

std::optional<double> avg_separation(const DistanceHistogram& h) {
    if (h.connected_pairs == 0) return std::nullopt;
    double total = 0.0;
    for (std::size_t d = 1; d < h.counts.size(); ++d) {
        total += static_cast<double>(d) * static_cast<double>(h.counts[d]);
    }
    return total / static_cast<double>(h.connected_pairs);
}

std::optional<double> avg_separation(const Graph& g) { return avg_separation(distance_histogram(g)); }

std::vector<double> betweenness_centrality(const Graph& g) {
    const std::size_t n = g.node_count();
    std::vector<double> bc(n, 0.0);
    std::vector<std::int64_t> dist(n, -1);
    std::vector<double> sigma(n, 0.0);
    std::vector<double> delta(n, 0.0);
    std::vector<Vertex> order;
    order.reserve(n);

    for (Vertex s = 0; s < n; ++s) {
        if (g.degree(s) == 0) continue;
        order.clear();
        dist[s] = 0;
        sigma[s] = 1.0;
        order.push_back(s);
        for (std::size_t head = 0; head < order.size(); ++head) {
            const Vertex v = order[head];
            for (Vertex w : g.neighbors(v)) {
                if (dist[w] < 0) {
                    dist[w] = dist[v] + 1;
                    order.push_back(w);
                }
                if (dist[w] == dist[v] + 1) sigma[w] += sigma[v];
            }
        }
        // Reverse BFS order; predecessors are neighbours one hop closer.
        for (std::size_t i = order.size(); i-- > 1;) {
            const Vertex w = order[i];
            for (Vertex v : g.neighbors(w)) {
                if (dist[v] == dist[w] - 1) delta[v] += sigma[v] / sigma[w] * (1.0 + delta[w]);
            }
            bc[w] += delta[w];
        }
        for (Vertex v : order) {
            dist[v] = -1;
            sigma[v] = 0.0;
            delta[v] = 0.0;
        }
    }

    // Every unordered pair was accumulated from both ends.
    const auto label = component_labels(g);
    std::vector<std::size_t> comp_size(n, 0);
    for (auto l : label) ++comp_size[l];
    for (Vertex v = 0; v < n; ++v) {
        const double nc = static_cast<double>(comp_size[label[v]]);
        bc[v] = nc < 3.0 ? 0.0 : bc[v] / ((nc - 1.0) * (nc - 2.0));
    }
    return bc;
}

std::vector<std::uint32_t> lobby_index(const Graph& g) {
    std::vector<std::uint32_t> out(g.node_count(), 0);
    std::vector<std::uint32_t> deg;
    for (Vertex v = 0; v < out.size(); ++v) {
        deg.clear();
        for (Vertex w : g.neighbors(v)) deg.push_back(static_cast<std::uint32_t>(g.degree(w)));
        std::sort(deg.begin(), deg.end(), std::greater<>());
        std::uint32_t k = 0;
        while (k < deg.size() && deg[k] >= k + 1) ++k;
        out[v] = k;
    }
    return out;
}

DegreeDistribution degree_distribution(const Graph& g, std::uint32_t k_min, std::size_t min_samples) {
    const auto degrees = degree_vector(g);
    std::map<std::uint32_t, std::uint64_t> counts;
    for (auto d : degrees) ++counts[d];
    DegreeDistribution out;
    out.histogram.assign(counts.begin(), counts.end());
    out.powerlaw_gamma = fit_powerlaw_exponent(degrees, k_min, min_samples);
    return out;
}

}  // namespace vgs
