#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "vgs/graph.hpp"

namespace vgs {

struct Partition {
    std::vector<std::uint32_t> community;  // per vertex, numbered by smallest member
    std::uint32_t count = 0;
    double modularity = 0.0;
};

// Q = (1/2m) sum_ij [A_ij - d_i d_j / 2m] delta(c_i, c_j).
// Throws DomainError when the graph has no edges or labels are missing.
double modularity(const Graph& g, std::span<const std::uint32_t> community);

// Greedy agglomerative modularity maximisation (Clauset-Newman-Moore).
// Starting from singletons it merges the adjacent pair with the largest
// modularity gain until no merge improves Q. Gains are compared exactly in
// integer arithmetic; ties go to the lexicographically smallest pair.
// Throws DomainError on an edgeless graph.
Partition detect_communities(const Graph& g);

// Degree bookkeeping for one community. `dense` reports whether the
// members' degree toward each other exceeds their degree toward the rest.
struct CommunityProfile {
    std::uint32_t id = 0;
    std::size_t size = 0;
    std::size_t internal_edges = 0;
    std::uint64_t intra_degree = 0;
    std::uint64_t inter_degree = 0;
    bool dense = false;
};

std::vector<CommunityProfile> community_profiles(const Graph& g, const Partition& p);

}  // namespace vgs
