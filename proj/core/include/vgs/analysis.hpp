#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "vgs/community.hpp"
#include "vgs/metrics.hpp"
#include "vgs/snapshot.hpp"

namespace vgs {

struct MetricOptions {
    bool betweenness = true;
    bool paths = true;  // effective diameter and average separation
    bool communities = true;
    double diameter_quantile = 0.9;
    std::uint32_t powerlaw_k_min = 2;
    std::size_t powerlaw_min_samples = 50;
};

struct NodeMetrics {
    std::vector<std::uint32_t> degree;
    std::vector<std::uint32_t> lobby;
    std::vector<double> betweenness;  // empty when not computed
};

// Per-snapshot record. `cluster_count` counts connected groups holding at
// least one vehicle; `component_count` counts every component.
struct GraphMetrics {
    double t = 0.0;
    std::size_t node_count = 0;
    std::size_t vehicle_count = 0;
    std::size_t edge_count = 0;
    std::optional<double> density;
    std::optional<std::uint32_t> effective_diameter;
    std::optional<double> avg_separation;
    std::uint64_t triangles = 0;
    std::size_t cluster_count = 0;
    std::size_t component_count = 0;
    std::optional<ClusterReport> biggest_cluster;
    std::optional<double> mean_cluster_coefficient;  // over clusters of size >= 2
    DegreeDistribution degrees;
    std::optional<Partition> communities;
    std::vector<CommunityProfile> community_profiles;
};

struct SnapshotMetrics {
    GraphMetrics graph;
    NodeMetrics nodes;
};

SnapshotMetrics compute_snapshot_metrics(const Snapshot& s, const Region& region,
                                         const MetricOptions& options);

}  // namespace vgs
