#include "vgs/community.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <tuple>

#include "vgs/errors.hpp"

namespace vgs {

double modularity(const Graph& g, std::span<const std::uint32_t> community) {
    if (community.size() != g.node_count()) {
        throw DomainError("partition must label every node");
    }
    if (g.edge_count() == 0) throw DomainError("modularity is undefined without edges");
    std::uint32_t count = 0;
    for (auto c : community) count = std::max(count, c + 1);

    std::vector<double> internal(count, 0.0);
    std::vector<double> degree(count, 0.0);
    for (auto [u, v] : g.edges()) {
        if (community[u] == community[v]) internal[community[u]] += 1.0;
    }
    for (Vertex v = 0; v < g.node_count(); ++v) degree[community[v]] += static_cast<double>(g.degree(v));

    const double m = static_cast<double>(g.edge_count());
    double q = 0.0;
    for (std::uint32_t c = 0; c < count; ++c) {
        const double share = degree[c] / (2.0 * m);
        q += internal[c] / m - share * share;
    }
    return q;
}

namespace {

struct Candidate {
    std::int64_t gain;  // 2m * L_ij - D_i * D_j, proportional to dQ
    std::uint32_t a;
    std::uint32_t b;
    std::uint32_t version_a;
    std::uint32_t version_b;
};

struct CandidateOrder {
    bool operator()(const Candidate& x, const Candidate& y) const {
        // priority_queue pops the "largest": highest gain, then smallest pair
        return std::tie(x.gain, y.a, y.b) < std::tie(y.gain, x.a, x.b);
    }
};

}  // namespace

Partition detect_communities(const Graph& g) {
    const std::size_t n = g.node_count();
    if (g.edge_count() == 0) throw DomainError("community detection needs at least one edge");
    const auto two_m = static_cast<std::int64_t>(2 * g.edge_count());

    std::vector<std::map<std::uint32_t, std::int64_t>> links(n);  // community -> edges to it
    std::vector<std::int64_t> degree(n);
    std::vector<std::uint32_t> version(n, 0);
    std::vector<bool> alive(n, true);
    std::vector<std::vector<Vertex>> members(n);
    for (Vertex v = 0; v < n; ++v) {
        degree[v] = static_cast<std::int64_t>(g.degree(v));
        members[v] = {v};
        for (Vertex w : g.neighbors(v)) links[v][w] = 1;
    }

    std::priority_queue<Candidate, std::vector<Candidate>, CandidateOrder> heap;
    const auto push = [&](std::uint32_t a, std::uint32_t b, std::int64_t shared) {
        if (a > b) std::swap(a, b);
        heap.push({two_m * shared - degree[a] * degree[b], a, b, version[a], version[b]});
    };
    for (auto [u, v] : g.edges()) push(u, v, 1);

    while (!heap.empty()) {
        const Candidate top = heap.top();
        heap.pop();
        if (!alive[top.a] || !alive[top.b] || version[top.a] != top.version_a ||
            version[top.b] != top.version_b) {
            continue;
        }
        if (top.gain <= 0) break;

        // Fold the community with fewer links into the other.
        std::uint32_t keep = top.a;
        std::uint32_t gone = top.b;
        if (links[keep].size() < links[gone].size()) std::swap(keep, gone);

        for (const auto& [other, shared] : links[gone]) {
            if (other == keep) continue;
            links[keep][other] += shared;
            auto& back = links[other];
            back.erase(gone);
            back[keep] += shared;
        }
        links[keep].erase(gone);
        links[gone].clear();
        degree[keep] += degree[gone];
        members[keep].insert(members[keep].end(), members[gone].begin(), members[gone].end());
        members[gone].clear();
        alive[gone] = false;
        ++version[keep];

        for (const auto& [other, shared] : links[keep]) push(keep, other, shared);
    }

    // Renumber by smallest member vertex.
    std::vector<std::pair<Vertex, std::uint32_t>> firsts;
    for (std::uint32_t c = 0; c < n; ++c) {
        if (alive[c]) firsts.emplace_back(*std::min_element(members[c].begin(), members[c].end()), c);
    }
    std::sort(firsts.begin(), firsts.end());
    Partition p;
    p.community.assign(n, 0);
    for (std::uint32_t label = 0; label < firsts.size(); ++label) {
        for (Vertex v : members[firsts[label].second]) p.community[v] = label;
    }
    p.count = static_cast<std::uint32_t>(firsts.size());
    p.modularity = modularity(g, p.community);
    return p;
}

std::vector<CommunityProfile> community_profiles(const Graph& g, const Partition& p) {
    std::vector<CommunityProfile> out(p.count);
    for (std::uint32_t c = 0; c < p.count; ++c) out[c].id = c;
    for (Vertex v = 0; v < g.node_count(); ++v) {
        auto& prof = out[p.community[v]];
        ++prof.size;
        for (Vertex w : g.neighbors(v)) {
            if (p.community[w] == p.community[v]) {
                ++prof.intra_degree;
            } else {
                ++prof.inter_degree;
            }
        }
    }
    for (auto& prof : out) {
        prof.internal_edges = prof.intra_degree / 2;
        prof.dense = prof.intra_degree > prof.inter_degree;
    }
    return out;
}

}  // namespace vgs
