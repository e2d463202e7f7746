#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "vgs/geometry.hpp"
#include "vgs/graph.hpp"
#include "vgs/snapshot.hpp"

namespace vgs {

std::vector<std::uint32_t> degree_vector(const Graph& g);

// |E| / (n(n-1)/2); nullopt when n < 2.
std::optional<double> graph_density(const Graph& g);

// Component label per vertex, labels numbered by smallest vertex.
std::vector<std::uint32_t> component_labels(const Graph& g);

// 2|E_k| / (|N_k|(|N_k|-1)) for the subgraph induced by `members`; nullopt
// for fewer than two members.
std::optional<double> cluster_coefficient(std::span<const Vertex> members, const Graph& g);

struct ClusterReport {
    std::vector<Vertex> members;      // ascending
    std::vector<NodeId> member_ids;   // ascending
    std::size_t edge_count = 0;
    std::optional<double> coefficient;
    double hull_area_fraction = 0.0;  // convex hull area / region area
    bool has_vehicle = false;

    std::size_t size() const { return members.size(); }
};

// Maximal connected groups, ordered by smallest member NodeId.
std::vector<ClusterReport> connected_components(const Snapshot& s, const Region& region);

// Largest component; ties go to the one holding the smallest NodeId.
// nullopt for an empty snapshot.
std::optional<ClusterReport> biggest_cluster_report(const Snapshot& s, const Region& region);

std::uint64_t triangle_count(const Graph& g);

// counts[d] = number of unordered connected pairs at hop distance d (counts[0] = 0).
struct DistanceHistogram {
    std::vector<std::uint64_t> counts;
    std::uint64_t connected_pairs = 0;
};

DistanceHistogram distance_histogram(const Graph& g);

// Smallest d such that at least `quantile` of connected pairs lie within d hops.
std::optional<std::uint32_t> effective_diameter(const DistanceHistogram& h, double quantile = 0.9);
std::optional<std::uint32_t> effective_diameter(const Graph& g, double quantile = 0.9);

// Mean hop distance over connected pairs.
std::optional<double> avg_separation(const DistanceHistogram& h);
std::optional<double> avg_separation(const Graph& g);

// Brandes accumulation, normalised per component by (n_c-1)(n_c-2)/2 so
// values lie in [0, 1]. Components with fewer than 3 nodes give 0.
std::vector<double> betweenness_centrality(const Graph& g);

// Largest k such that at least k neighbours have degree >= k.
std::vector<std::uint32_t> lobby_index(const Graph& g);

struct DegreeDistribution {
    std::vector<std::pair<std::uint32_t, std::uint64_t>> histogram;  // (degree, count), ascending
    std::optional<double> powerlaw_gamma;
};

DegreeDistribution degree_distribution(const Graph& g, std::uint32_t k_min = 2,
                                       std::size_t min_samples = 50);

}  // namespace vgs
