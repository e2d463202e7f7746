#include "vgs/analysis.hpp"

namespace vgs {

SnapshotMetrics compute_snapshot_metrics(const Snapshot& s, const Region& region,
                                         const MetricOptions& options) {
    const Graph& g = s.graph();
    SnapshotMetrics out;
    GraphMetrics& gm = out.graph;
    gm.t = s.t();
    gm.node_count = s.size();
    for (const Node& n : s.nodes()) gm.vehicle_count += n.kind == NodeKind::vehicle ? 1 : 0;
    gm.edge_count = g.edge_count();
    gm.density = graph_density(g);
    gm.triangles = triangle_count(g);

    if (options.paths) {
        const auto hist = distance_histogram(g);
        gm.effective_diameter = effective_diameter(hist, options.diameter_quantile);
        gm.avg_separation = avg_separation(hist);
    }

    const auto components = connected_components(s, region);
    gm.component_count = components.size();
    double coefficient_sum = 0.0;
    std::size_t coefficient_count = 0;
    const ClusterReport* biggest = nullptr;
    for (const auto& c : components) {
        if (c.has_vehicle) ++gm.cluster_count;
        if (c.coefficient) {
            coefficient_sum += *c.coefficient;
            ++coefficient_count;
        }
        // components are ordered by smallest NodeId, so strict > keeps the tie-break
        if (biggest == nullptr || c.size() > biggest->size()) biggest = &c;
    }
    if (biggest != nullptr) gm.biggest_cluster = *biggest;
    if (coefficient_count > 0) gm.mean_cluster_coefficient = coefficient_sum / static_cast<double>(coefficient_count);

    gm.degrees = degree_distribution(g, options.powerlaw_k_min, options.powerlaw_min_samples);
    if (options.communities && g.edge_count() > 0) {
        gm.communities = detect_communities(g);
        gm.community_profiles = community_profiles(g, *gm.communities);
    }

    out.nodes.degree = degree_vector(g);
    out.nodes.lobby = lobby_index(g);
    if (options.betweenness) out.nodes.betweenness = betweenness_centrality(g);
    return out;
}

}  // namespace vgs
