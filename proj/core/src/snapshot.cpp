#include "vgs/snapshot.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "vgs/errors.hpp"
#include "vgs/format.hpp"
#include "vgs/spatial_hash.hpp"

namespace vgs {

const char* to_string(NodeKind kind) { return kind == NodeKind::rsu ? "rsu" : "vehicle"; }

void RadioModel::validate() const {
    if (!(range > 0.0) || !std::isfinite(range)) throw ConfigError("range", "must be positive");
    if (los == LosMode::manhattan_los) {
        if (!road_map) throw ConfigError("los", "manhattan_los requires a road map");
        road_map->validate();
    }
}

Snapshot::Snapshot(double t, std::vector<Node> nodes, Graph graph)
    : t_(t), nodes_(std::move(nodes)), graph_(std::move(graph)) {
    by_id_.reserve(nodes_.size());
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
        by_id_.emplace_back(nodes_[i].id, static_cast<Vertex>(i));
    }
    std::sort(by_id_.begin(), by_id_.end());
}

std::optional<Vertex> Snapshot::vertex_of(NodeId id) const {
    const auto it = std::lower_bound(by_id_.begin(), by_id_.end(), std::make_pair(id, Vertex{0}));
    if (it == by_id_.end() || it->first != id) return std::nullopt;
    return it->second;
}

Snapshot build_snapshot(double t, std::vector<Node> nodes, const RadioModel& model) {
    model.validate();
    std::vector<Point> points;
    points.reserve(nodes.size());
    {
        std::vector<NodeId> ids;
        ids.reserve(nodes.size());
        for (const Node& n : nodes) {
            if (!std::isfinite(n.position.x) || !std::isfinite(n.position.y)) {
                throw ValidationError("node " + std::to_string(n.id) + " has a non-finite position");
            }
            ids.push_back(n.id);
            points.push_back(n.position);
        }
        std::sort(ids.begin(), ids.end());
        if (std::adjacent_find(ids.begin(), ids.end()) != ids.end()) {
            throw ValidationError("duplicate node id in snapshot");
        }
    }

    std::vector<Edge> edges = unit_disk_pairs(points, model.range);
    if (model.los == LosMode::manhattan_los) {
        const RoadMap& map = *model.road_map;
        std::erase_if(edges, [&](const Edge& e) {
            return !map.line_of_sight(points[e.first], points[e.second]);
        });
    }
    Graph graph = Graph::from_edges(nodes.size(), edges);
    return Snapshot(t, std::move(nodes), std::move(graph));
}

SnapshotSeries::SnapshotSeries(std::span<const Trajectory> trajectories, const RsuSet& rsus,
                               const PenetrationSample& sample, RadioModel model, Window window,
                               double dt)
    : model_(std::move(model)), window_(window), dt_(dt) {
    model_.validate();
    if (!(dt > 0.0) || !std::isfinite(dt)) throw DomainError("tick must be positive");
    if (!(window.t_end > window.t_start)) throw DomainError("window must have positive length");

    const auto ids = vehicle_ids(trajectories);
    std::unordered_map<std::string, NodeId> vehicle_index;
    for (const auto& id : ids) {
        vehicle_index.emplace(id, static_cast<NodeId>(registry_.names.size()));
        registry_.names.push_back(id);
        registry_.kinds.push_back(NodeKind::vehicle);
    }
    registry_.vehicle_count = ids.size();
    for (const Rsu& r : rsus.units) {
        const auto id = static_cast<NodeId>(registry_.names.size());
        registry_.names.push_back(r.id);
        registry_.kinds.push_back(NodeKind::rsu);
        rsu_nodes_.push_back(Node{id, NodeKind::rsu, r.position});
    }

    const double span = (window.t_end - window.t_start) / dt;
    const auto count = static_cast<std::size_t>(std::ceil(span - 1e-9));
    const double last = time_at(count - 1);

    double cover_lo = INFINITY;
    double cover_hi = -INFINITY;
    for (const Trajectory& tr : trajectories) {
        if (tr.samples.empty()) continue;
        cover_lo = std::min(cover_lo, tr.samples.front().t);
        cover_hi = std::max(cover_hi, tr.samples.back().t);
    }
    const double slack = 1e-6 * dt;
    if (!(window.t_start >= cover_lo - slack) || !(last <= cover_hi + slack)) {
        throw DomainError("window [" + format_double(window.t_start) + ", " +
                          format_double(window.t_end) + ") lies outside trajectory coverage");
    }

    std::unordered_set<std::string> chosen(sample.selected.begin(), sample.selected.end());
    ticks_.resize(count);
    for (const Trajectory& tr : trajectories) {
        if (!chosen.contains(tr.vehicle_id)) continue;
        const NodeId id = vehicle_index.at(tr.vehicle_id);
        for (const Sample& s : tr.samples) {
            const double rel = (s.t - window.t_start) / dt;
            const long long k = std::llround(rel);
            if (k < 0 || k >= static_cast<long long>(count)) continue;
            if (std::abs(rel - static_cast<double>(k)) > 1e-6) {
                throw DomainError("trajectory of '" + tr.vehicle_id +
                                  "' is not sampled on the series tick");
            }
            ticks_[static_cast<std::size_t>(k)].push_back(Present{id, {s.x, s.y}});
        }
    }
    for (auto& tick : ticks_) {
        std::sort(tick.begin(), tick.end(), [](const Present& a, const Present& b) { return a.id < b.id; });
        const auto dup = std::adjacent_find(tick.begin(), tick.end(),
                                            [](const Present& a, const Present& b) { return a.id == b.id; });
        if (dup != tick.end()) {
            throw ValidationError("vehicle '" + registry_.names[dup->id] +
                                  "' appears twice in one tick");
        }
    }
}

Snapshot SnapshotSeries::at(std::size_t k) const {
    std::vector<Node> nodes;
    nodes.reserve(ticks_[k].size() + rsu_nodes_.size());
    for (const Present& p : ticks_[k]) nodes.push_back(Node{p.id, NodeKind::vehicle, p.position});
    nodes.insert(nodes.end(), rsu_nodes_.begin(), rsu_nodes_.end());
    return build_snapshot(time_at(k), std::move(nodes), model_);
}

void write_snapshot_dump(std::ostream& out, const Snapshot& s, const NodeRegistry& registry) {
    out << "#t " << format_double(s.t()) << '\n';
    out << "#nodes id kind x y\n";
    for (const Node& n : s.nodes()) {
        out << registry.name(n.id) << ' ' << to_string(n.kind) << ' ' << format_double(n.position.x)
            << ' ' << format_double(n.position.y) << '\n';
    }
    out << "#edges u v\n";
    for (auto [u, v] : s.graph().edges()) {
        out << registry.name(s.node(u).id) << ' ' << registry.name(s.node(v).id) << '\n';
    }
}

SnapshotDump read_snapshot_dump(std::istream& in) {
    SnapshotDump dump;
    std::unordered_map<std::string, Vertex> index;
    enum class Block { none, nodes, edges } block = Block::none;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string_view text = trim(line);
        if (text.empty()) continue;
        std::istringstream fields{std::string(text)};
        if (text.front() == '#') {
            std::string tag;
            fields >> tag;
            if (tag == "#t") {
                std::string value;
                fields >> value;
                const auto t = parse_double(value);
                if (!t) throw ParseError("malformed #t header", lineno);
                dump.t = *t;
            } else if (tag == "#nodes") {
                block = Block::nodes;
            } else if (tag == "#edges") {
                block = Block::edges;
            }
            continue;
        }
        if (block == Block::nodes) {
            std::string id, kind, xs, ys, extra;
            fields >> id >> kind >> xs >> ys;
            const auto x = parse_double(xs);
            const auto y = parse_double(ys);
            if (!x || !y || (kind != "vehicle" && kind != "rsu") || (fields >> extra)) {
                throw ParseError("malformed node line", lineno);
            }
            if (!index.emplace(id, static_cast<Vertex>(dump.names.size())).second) {
                throw ValidationError("duplicate node '" + id + "' in dump");
            }
            dump.names.push_back(id);
            dump.kinds.push_back(kind == "rsu" ? NodeKind::rsu : NodeKind::vehicle);
            dump.positions.push_back({*x, *y});
        } else if (block == Block::edges) {
            std::string u, v, extra;
            fields >> u >> v;
            const auto iu = index.find(u);
            const auto iv = index.find(v);
            if (u.empty() || v.empty() || (fields >> extra) || iu == index.end() || iv == index.end()) {
                throw ParseError("malformed edge line", lineno);
            }
            dump.edges.emplace_back(std::min(iu->second, iv->second), std::max(iu->second, iv->second));
        } else {
            throw ParseError("data line before any block header", lineno);
        }
    }
    return dump;
}

}  // namespace vgs
