#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "vgs/geometry.hpp"
#include "vgs/graph.hpp"
#include "vgs/road_map.hpp"
#include "vgs/trace.hpp"

namespace vgs {

// Scenario-wide node identifier. Stable across ticks and penetration ratios.
using NodeId = std::uint32_t;

enum class NodeKind : std::uint8_t { vehicle, rsu };

const char* to_string(NodeKind kind);

struct Node {
    NodeId id = 0;
    NodeKind kind = NodeKind::vehicle;
    Point position{};
};

enum class LosMode { unit_disk, manhattan_los };

struct RadioModel {
    double range = 300.0;  // meters, inclusive
    LosMode los = LosMode::unit_disk;
    std::optional<RoadMap> road_map;

    void validate() const;
};

// Communication graph G(t). Graph vertex i is nodes()[i].
class Snapshot {
public:
    Snapshot() = default;
    Snapshot(double t, std::vector<Node> nodes, Graph graph);

    double t() const { return t_; }
    std::span<const Node> nodes() const { return nodes_; }
    const Node& node(Vertex v) const { return nodes_[v]; }
    const Graph& graph() const { return graph_; }
    std::size_t size() const { return nodes_.size(); }

    std::optional<Vertex> vertex_of(NodeId id) const;

private:
    double t_ = 0.0;
    std::vector<Node> nodes_;
    Graph graph_;
    std::vector<std::pair<NodeId, Vertex>> by_id_;
};

// Edge iff distance <= range; under manhattan_los the straight segment must
// also avoid every building block. Duplicate ids throw ValidationError.
Snapshot build_snapshot(double t, std::vector<Node> nodes, const RadioModel& model);

// Names and kinds behind NodeIds. Vehicles come first, then RSUs.
struct NodeRegistry {
    std::vector<std::string> names;
    std::vector<NodeKind> kinds;
    std::size_t vehicle_count = 0;

    const std::string& name(NodeId id) const { return names[id]; }
    NodeKind kind(NodeId id) const { return kinds[id]; }
};

struct Window {
    double t_start = 0.0;
    double t_end = 0.0;  // exclusive
};

// Lazily built per-tick snapshots over a window. at(k) is independent of
// every other tick and safe to call concurrently.
class SnapshotSeries {
public:
    SnapshotSeries(std::span<const Trajectory> trajectories, const RsuSet& rsus,
                   const PenetrationSample& sample, RadioModel model, Window window, double dt);

    std::size_t size() const { return ticks_.size(); }
    double dt() const { return dt_; }
    double time_at(std::size_t k) const { return window_.t_start + static_cast<double>(k) * dt_; }
    Snapshot at(std::size_t k) const;

    const NodeRegistry& registry() const { return registry_; }
    const RadioModel& model() const { return model_; }

private:
    struct Present {
        NodeId id;
        Point position;
    };

    NodeRegistry registry_;
    RadioModel model_;
    Window window_;
    double dt_;
    std::vector<Node> rsu_nodes_;
    std::vector<std::vector<Present>> ticks_;
};

// Debug dump: `#t`, a `#nodes id kind x y` block, then an `#edges u v` block.
void write_snapshot_dump(std::ostream& out, const Snapshot& s, const NodeRegistry& registry);

struct SnapshotDump {
    double t = 0.0;
    std::vector<std::string> names;
    std::vector<NodeKind> kinds;
    std::vector<Point> positions;
    std::vector<Edge> edges;  // indices into names
};

SnapshotDump read_snapshot_dump(std::istream& in);

}  // namespace vgs
