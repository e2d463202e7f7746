#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "vgs/road_map.hpp"
#include "vgs/snapshot.hpp"
#include "vgs/stats.hpp"

namespace vgs {

enum class Protocol { vadd_baseline, vadd_enhanced, gpcr };
enum class GpcrMode { neighbor_table, correlation, lobby_index };
enum class DropReason { ttl_expired, local_optimum, no_carrier };
enum class DestinationPolicy { fixed_node, fixed_point };

const char* to_string(Protocol p);
const char* to_string(GpcrMode m);
const char* to_string(DropReason r);
std::optional<Protocol> parse_protocol(std::string_view text);
std::optional<GpcrMode> parse_gpcr_mode(std::string_view text);

struct TrafficConfig {
    std::size_t sender_count = 15;
    double packets_per_second = 0.5;  // CBR rate per sender
    DestinationPolicy destination = DestinationPolicy::fixed_point;
    double ttl = 300.0;               // seconds
    double hop_latency = 0.005;       // seconds per wireless hop
    std::size_t max_hops_per_tick = 100;
    std::optional<std::size_t> packets_per_sender;  // stop after this many

    // Explicit endpoints; drawn from the seed when empty.
    std::vector<NodeId> senders;
    std::optional<NodeId> destination_node;
    std::optional<Point> destination_point;

    void validate() const;
};

struct RoutingParams {
    double rho_min = 1.0;              // forwarders per road for multi-hop delay
    double mean_speed = 10.0;          // m/s, carry-speed estimate
    double intersection_radius = 30.0;
    double correlation_threshold = 0.9;
    std::optional<std::uint32_t> lobby_threshold;  // required for GpcrMode::lobby_index
    std::size_t perimeter_hop_budget = 10;
};

// What a node advertises each beacon period.
struct GraphBeacon {
    Point position{};
    std::uint32_t lobby = 0;
    std::optional<double> cluster_coefficient;  // absent for singletons
    std::size_t cluster_size = 1;
};

// Beacons for every vertex of `s`, taken from the metrics module.
std::vector<GraphBeacon> graph_beacons(const Snapshot& s);

struct Candidate {
    NodeId id = 0;
    GraphBeacon beacon;
};

// Lexicographic maximum of (lobby, cluster coefficient, cluster size), then
// smallest id. Absent coefficients rank below every present one. nullopt for
// an empty set.
std::optional<NodeId> enhanced_forwarder_select(std::span<const Candidate> candidates);

struct VaddDecision {
    std::optional<NodeId> next;    // nullopt means carry
    std::optional<Road> road;      // road chosen for the packet
    bool optimal_candidate = false;  // a forwarder sat on the best road
};

// Routing decision for a holder inside the zone of intersection `at`.
// Roads heading toward `dst` are ranked by expected delay
//   d_r = (len_r / range) * hop_latency   when rho_r >= rho_min
//   d_r = len_r / mean_speed              otherwise
// and the forwarder farthest along the best road wins. Without one, the
// baseline carries (or hands to a strictly-closer node on the runner-up
// road); the enhanced variant defers to enhanced_forwarder_select.
VaddDecision vadd_intersection_decision(Point holder, std::array<int, 2> at,
                                        std::span<const Candidate> candidates, Point dst,
                                        const RoadMap& map, double range, double hop_latency,
                                        const RoutingParams& params, bool enhanced);

// Coordinator flags for every vertex of `s`.
std::vector<bool> gpcr_coordinators(const Snapshot& s, GpcrMode mode, double range,
                                    const RoutingParams& params);
bool gpcr_coordinator_detect(const Snapshot& s, Vertex node, GpcrMode mode, double range,
                             const RoutingParams& params);

// Forwarding state GPCR keeps per packet.
struct GpcrState {
    bool perimeter = false;
    double entry_distance = 0.0;  // distance to dst where perimeter mode began
    std::size_t perimeter_hops = 0;
    std::optional<Point> previous;  // last hop's sender position
};

struct GpcrStep {
    std::optional<Vertex> next;  // nullopt means drop (local optimum)
};

GpcrStep gpcr_forward_step(GpcrState& state, Vertex holder, const Snapshot& s, Point dst,
                           std::optional<Vertex> dst_vertex, const std::vector<bool>& coordinators,
                           const RoutingParams& params);

struct PacketRecord {
    std::uint64_t id = 0;
    NodeId src = 0;
    std::optional<NodeId> dst_node;
    std::optional<Point> dst_point;
    double created_t = 0.0;
    std::optional<double> delivered_t;
    std::uint32_t hop_count = 0;
    std::optional<DropReason> drop_reason;
};

struct RoutingStats {
    std::size_t created = 0;
    std::size_t delivered = 0;
    std::size_t dropped_ttl = 0;
    std::size_t dropped_local_optimum = 0;
    std::size_t dropped_no_carrier = 0;
    std::size_t in_flight = 0;
    double delivery_rate = 0.0;
    std::optional<double> mean_delay;
    std::optional<double> median_delay;
    std::optional<double> mean_hops;
};

struct RoutingResult {
    RoutingStats stats;
    std::vector<PacketRecord> packets;
};

// Uniformly spaced snapshots, produced on demand.
struct SnapshotStream {
    std::size_t count = 0;
    double dt = 1.0;
    std::function<Snapshot(std::size_t)> at;
};

SnapshotStream stream_of(const SnapshotSeries& series);
SnapshotStream stream_of(std::span<const Snapshot> snapshots);

struct SimulationConfig {
    Protocol protocol = Protocol::vadd_baseline;
    GpcrMode gpcr_mode = GpcrMode::neighbor_table;
    TrafficConfig traffic{};
    RoutingParams params{};
    RadioModel radio{};                // range and LOS the snapshots were built with
    std::optional<RoadMap> road_map;   // required by VADD
    std::uint64_t seed = 1;

    void validate() const;
};

// Single-threaded, deterministic tick loop over `stream`.
RoutingResult run_simulation(const SnapshotStream& stream, const SimulationConfig& config);

RoutingStats summarize_packets(std::span<const PacketRecord> packets);

}  // namespace vgs
