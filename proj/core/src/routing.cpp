#include "vgs/routing.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <tuple>

#include "vgs/errors.hpp"
#include "vgs/metrics.hpp"
#include "vgs/rng.hpp"

namespace vgs {

const char* to_string(Protocol p) {
    switch (p) {
        case Protocol::vadd_baseline: return "vadd_baseline";
        case Protocol::vadd_enhanced: return "vadd_enhanced";
        case Protocol::gpcr: return "gpcr";
    }
    return "?";
}

const char* to_string(GpcrMode m) {
    switch (m) {
        case GpcrMode::neighbor_table: return "neighbor_table";
        case GpcrMode::correlation: return "correlation";
        case GpcrMode::lobby_index: return "lobby_index";
    }
    return "?";
}

const char* to_string(DropReason r) {
    switch (r) {
        case DropReason::ttl_expired: return "ttl_expired";
        case DropReason::local_optimum: return "local_optimum";
        case DropReason::no_carrier: return "no_carrier";
    }
    return "?";
}

std::optional<Protocol> parse_protocol(std::string_view text) {
    for (auto p : {Protocol::vadd_baseline, Protocol::vadd_enhanced, Protocol::gpcr}) {
        if (text == to_string(p)) return p;
    }
    return std::nullopt;
}

std::optional<GpcrMode> parse_gpcr_mode(std::string_view text) {
    for (auto m : {GpcrMode::neighbor_table, GpcrMode::correlation, GpcrMode::lobby_index}) {
        if (text == to_string(m)) return m;
    }
    return std::nullopt;
}

void TrafficConfig::validate() const {
    if (senders.empty() && sender_count == 0) {
        throw ConfigError("senders", "at least one packet sender is required");
    }
    if (!(packets_per_second > 0.0) || !std::isfinite(packets_per_second)) {
        throw ConfigError("cbr_rate", "must be positive");
    }
    if (!(ttl > 0.0)) throw ConfigError("ttl", "must be positive");
    if (!(hop_latency >= 0.0)) throw ConfigError("hop_latency", "must be non-negative");
    if (max_hops_per_tick < 1) throw ConfigError("max_hops_per_tick", "must be at least 1");
    if (packets_per_sender && *packets_per_sender == 0) {
        throw ConfigError("packets_per_sender", "must be positive when set");
    }
}

void SimulationConfig::validate() const {
    traffic.validate();
    radio.validate();
    if (protocol != Protocol::gpcr && !road_map) {
        throw ConfigError("road_map", "VADD needs a static road map");
    }
    if (road_map) road_map->validate();
    if (protocol == Protocol::gpcr && gpcr_mode == GpcrMode::lobby_index && !params.lobby_threshold) {
        throw ConfigError("lobby_threshold", "required for the lobby_index coordinator mode");
    }
    if (!(params.mean_speed > 0.0)) throw ConfigError("mean_speed", "must be positive");
    if (!(params.intersection_radius >= 0.0)) throw ConfigError("intersection_radius", "must be >= 0");
}

std::vector<GraphBeacon> graph_beacons(const Snapshot& s) {
    const Graph& g = s.graph();
    const auto lobby = lobby_index(g);
    const auto label = component_labels(g);
    std::vector<std::size_t> size(g.node_count(), 0);
    std::vector<std::size_t> degree_sum(g.node_count(), 0);
    for (Vertex v = 0; v < g.node_count(); ++v) {
        ++size[label[v]];
        degree_sum[label[v]] += g.degree(v);
    }
    std::vector<GraphBeacon> out(g.node_count());
    for (Vertex v = 0; v < g.node_count(); ++v) {
        GraphBeacon& b = out[v];
        b.position = s.node(v).position;
        b.lobby = lobby[v];
        b.cluster_size = size[label[v]];
        if (b.cluster_size >= 2) {
            const double n = static_cast<double>(b.cluster_size);
            b.cluster_coefficient = static_cast<double>(degree_sum[label[v]]) / (n * (n - 1.0));
        }
    }
    return out;
}

std::optional<NodeId> enhanced_forwarder_select(std::span<const Candidate> candidates) {
    if (candidates.empty()) return std::nullopt;
    const auto better = [](const Candidate& x, const Candidate& y) {
        if (x.beacon.lobby != y.beacon.lobby) return x.beacon.lobby > y.beacon.lobby;
        const auto& cx = x.beacon.cluster_coefficient;
        const auto& cy = y.beacon.cluster_coefficient;
        if (cx.has_value() != cy.has_value()) return cx.has_value();
        if (cx && *cx != *cy) return *cx > *cy;
        if (x.beacon.cluster_size != y.beacon.cluster_size) {
            return x.beacon.cluster_size > y.beacon.cluster_size;
        }
        return x.id < y.id;
    };
    const Candidate* best = &candidates.front();
    for (const Candidate& c : candidates) {
        if (better(c, *best)) best = &c;
    }
    return best->id;
}

VaddDecision vadd_intersection_decision(Point holder, std::array<int, 2> at,
                                        std::span<const Candidate> candidates, Point dst,
                                        const RoadMap& map, double range, double hop_latency,
                                        const RoutingParams& params, bool enhanced) {
    struct Ranked {
        Road road;
        bool heading = false;
        double delay = 0.0;
        double remaining = 0.0;
        int order = 0;
        std::optional<NodeId> forwarder;
        double forwarder_progress = 0.0;
        std::vector<const Candidate*> members;
    };

    const double here = distance(map.intersection(at[0], at[1]), dst);
    std::vector<Ranked> ranked;
    int order = 0;
    for (const Road& road : outgoing_roads(map, at)) {
        Ranked r;
        r.road = road;
        r.order = order++;
        r.remaining = distance(map.intersection(road.to[0], road.to[1]), dst);
        r.heading = r.remaining < here;
        for (const Candidate& c : candidates) {
            const auto progress = progress_along(map, road, c.beacon.position, params.intersection_radius);
            if (!progress) continue;
            r.members.push_back(&c);
            if (!r.forwarder || *progress > r.forwarder_progress ||
                (*progress == r.forwarder_progress && c.id < *r.forwarder)) {
                r.forwarder = c.id;
                r.forwarder_progress = *progress;
            }
        }
        const double density = static_cast<double>(r.members.size());
        r.delay = density >= params.rho_min ? road.length / range * hop_latency
                                            : road.length / params.mean_speed;
        ranked.push_back(std::move(r));
    }
    std::sort(ranked.begin(), ranked.end(), [](const Ranked& x, const Ranked& y) {
        return std::tie(y.heading, x.delay, x.remaining, x.order) <
               std::tie(x.heading, y.delay, y.remaining, y.order);
    });

    VaddDecision decision;
    if (ranked.empty()) return decision;
    const Ranked& best = ranked.front();
    decision.road = best.road;
    if (best.forwarder) {
        decision.next = best.forwarder;
        decision.optimal_candidate = true;
        return decision;
    }
    if (enhanced) {
        decision.next = enhanced_forwarder_select(candidates);
        return decision;
    }
    if (ranked.size() > 1) {
        const double holder_distance = distance(holder, dst);
        const Candidate* pick = nullptr;
        for (const Candidate* c : ranked[1].members) {
            const double d = distance(c->beacon.position, dst);
            if (d >= holder_distance) continue;
            if (pick == nullptr || d < distance(pick->beacon.position, dst) ||
                (d == distance(pick->beacon.position, dst) && c->id < pick->id)) {
                pick = c;
            }
        }
        if (pick != nullptr) {
            decision.next = pick->id;
            decision.road = ranked[1].road;
        }
    }
    return decision;
}

namespace {

bool correlation_coordinator(const Snapshot& s, Vertex v, double threshold) {
    const auto nb = s.graph().neighbors(v);
    if (nb.size() < 2) return false;
    double mx = s.node(v).position.x;
    double my = s.node(v).position.y;
    for (Vertex w : nb) {
        mx += s.node(w).position.x;
        my += s.node(w).position.y;
    }
    const double n = static_cast<double>(nb.size() + 1);
    mx /= n;
    my /= n;
    double sxx = 0.0, syy = 0.0, sxy = 0.0;
    const auto add = [&](Point p) {
        sxx += (p.x - mx) * (p.x - mx);
        syy += (p.y - my) * (p.y - my);
        sxy += (p.x - mx) * (p.y - my);
    };
    add(s.node(v).position);
    for (Vertex w : nb) add(s.node(w).position);
    // Pearson r is ill-conditioned when the group hugs an axis-aligned street:
    // lane jitter alone decides its value. Treat a tiny cross-spread as collinear.
    constexpr double kAxisSpreadRatio = 0.1;
    if (std::min(sxx, syy) <= kAxisSpreadRatio * kAxisSpreadRatio * std::max(sxx, syy)) return false;
    const double r = sxy / std::sqrt(sxx * syy);
    return std::abs(r) < threshold;
}

bool neighbor_table_coordinator(const Snapshot& s, Vertex v, double range) {
    const Graph& g = s.graph();
    const auto nb = g.neighbors(v);
    for (std::size_t i = 0; i < nb.size(); ++i) {
        for (std::size_t j = i + 1; j < nb.size(); ++j) {
            if (distance(s.node(nb[i]).position, s.node(nb[j]).position) <= range &&
                !g.has_edge(nb[i], nb[j])) {
                return true;
            }
        }
    }
    return false;
}

}  // namespace

std::vector<bool> gpcr_coordinators(const Snapshot& s, GpcrMode mode, double range,
                                    const RoutingParams& params) {
    const Graph& g = s.graph();
    std::vector<bool> out(g.node_count(), false);
    if (mode == GpcrMode::lobby_index) {
        if (!params.lobby_threshold) {
            throw ConfigError("lobby_threshold", "required for the lobby_index coordinator mode");
        }
        const auto lobby = lobby_index(g);
        for (Vertex v = 0; v < g.node_count(); ++v) {
            if (lobby[v] < *params.lobby_threshold) continue;
            bool strict_max = true;
            for (Vertex w : g.neighbors(v)) strict_max = strict_max && lobby[w] < lobby[v];
            out[v] = strict_max;
        }
        return out;
    }
    for (Vertex v = 0; v < g.node_count(); ++v) {
        out[v] = mode == GpcrMode::neighbor_table
                     ? neighbor_table_coordinator(s, v, range)
                     : correlation_coordinator(s, v, params.correlation_threshold);
    }
    return out;
}

bool gpcr_coordinator_detect(const Snapshot& s, Vertex node, GpcrMode mode, double range,
                             const RoutingParams& params) {
    if (mode == GpcrMode::lobby_index) return gpcr_coordinators(s, mode, range, params)[node];
    return mode == GpcrMode::neighbor_table
               ? neighbor_table_coordinator(s, node, range)
               : correlation_coordinator(s, node, params.correlation_threshold);
}

GpcrStep gpcr_forward_step(GpcrState& state, Vertex holder, const Snapshot& s, Point dst,
                           std::optional<Vertex> dst_vertex, const std::vector<bool>& coordinators,
                           const RoutingParams& params) {
    const Graph& g = s.graph();
    const Point here = s.node(holder).position;
    const double current = distance(here, dst);
    const auto nb = g.neighbors(holder);
    const auto forward = [&](Vertex next) {
        state.previous = here;
        return GpcrStep{next};
    };

    if (dst_vertex && std::binary_search(nb.begin(), nb.end(), *dst_vertex)) return forward(*dst_vertex);
    if (state.perimeter && current < state.entry_distance) state.perimeter = false;

    if (!state.perimeter) {
        std::optional<Vertex> best;
        std::optional<Vertex> best_coordinator;
        const auto closer = [&](std::optional<Vertex> incumbent, Vertex w) {
            if (!incumbent) return true;
            const double dw = distance(s.node(w).position, dst);
            const double di = distance(s.node(*incumbent).position, dst);
            return dw < di || (dw == di && s.node(w).id < s.node(*incumbent).id);
        };
        for (Vertex w : nb) {
            if (!(distance(s.node(w).position, dst) < current)) continue;
            if (closer(best, w)) best = w;
            if (coordinators[w] && closer(best_coordinator, w)) best_coordinator = w;
        }
        if (best_coordinator) return forward(*best_coordinator);
        if (best) return forward(*best);
        state.perimeter = true;
        state.entry_distance = current;
        state.perimeter_hops = 0;
        state.previous.reset();
    }

    if (state.perimeter_hops >= params.perimeter_hop_budget || nb.empty()) return GpcrStep{};

    // Right-hand rule: first neighbour counter-clockwise from the reference
    // bearing (towards the previous hop, or towards dst on entry).
    const Point ref = state.previous.value_or(dst);
    const double base = std::atan2(ref.y - here.y, ref.x - here.x);
    std::optional<Vertex> pick;
    double pick_angle = 0.0;
    for (Vertex w : nb) {
        const Point p = s.node(w).position;
        double a = std::atan2(p.y - here.y, p.x - here.x) - base;
        while (a <= 0.0) a += 2.0 * std::numbers::pi;
        while (a > 2.0 * std::numbers::pi) a -= 2.0 * std::numbers::pi;
        if (!pick || a < pick_angle || (a == pick_angle && s.node(w).id < s.node(*pick).id)) {
            pick = w;
            pick_angle = a;
        }
    }
    ++state.perimeter_hops;
    return forward(*pick);
}

SnapshotStream stream_of(const SnapshotSeries& series) {
    return {series.size(), series.dt(), [&series](std::size_t k) { return series.at(k); }};
}

SnapshotStream stream_of(std::span<const Snapshot> snapshots) {
    const double dt = snapshots.size() >= 2 ? snapshots[1].t() - snapshots[0].t() : 1.0;
    return {snapshots.size(), dt, [snapshots](std::size_t k) { return snapshots[k]; }};
}

RoutingStats summarize_packets(std::span<const PacketRecord> packets) {
    RoutingStats st;
    std::vector<double> delays;
    double hops = 0.0;
    for (const PacketRecord& p : packets) {
        ++st.created;
        if (p.delivered_t) {
            ++st.delivered;
            delays.push_back(*p.delivered_t - p.created_t);
            hops += p.hop_count;
        } else if (p.drop_reason) {
            switch (*p.drop_reason) {
                case DropReason::ttl_expired: ++st.dropped_ttl; break;
                case DropReason::local_optimum: ++st.dropped_local_optimum; break;
                case DropReason::no_carrier: ++st.dropped_no_carrier; break;
            }
        } else {
            ++st.in_flight;
        }
    }
    if (st.created > 0) st.delivery_rate = static_cast<double>(st.delivered) / static_cast<double>(st.created);
    if (const auto summary = summarize(delays)) {
        st.mean_delay = summary->mean;
        st.median_delay = summary->median;
        st.mean_hops = hops / static_cast<double>(st.delivered);
    }
    return st;
}

namespace {

struct InFlight {
    std::size_t record = 0;
    NodeId holder = 0;
    std::optional<std::array<int, 2>> target;  // VADD: intersection the packet heads for
    GpcrState gpcr;
};

struct Flow {
    NodeId sender = 0;
    std::optional<NodeId> dst_node;
    std::optional<Point> dst_point;
    double next_emission = 0.0;
    std::size_t emitted = 0;
};

class Simulator {
public:
    Simulator(const SnapshotStream& stream, const SimulationConfig& cfg)
        : stream_(stream), cfg_(cfg), rng_(derive_seed(cfg.seed, 7)) {}

    RoutingResult run() {
        RoutingResult result;
        if (stream_.count == 0) return result;
        const double dt = stream_.dt;
        if (!(dt > 0.0)) throw ValidationError("snapshot stream needs a positive tick");

        double t0 = 0.0;
        for (std::size_t k = 0; k < stream_.count; ++k) {
            const Snapshot s = stream_.at(k);
            if (k == 0) {
                t0 = s.t();
                setup_flows(s);
            } else if (std::abs(s.t() - (t0 + static_cast<double>(k) * dt)) > 1e-6 * dt) {
                throw ValidationError("routing needs uniformly spaced snapshots");
            }
            tick(s, dt, result);
        }
        result.stats = summarize_packets(result.packets);
        return result;
    }

private:
    const SnapshotStream& stream_;
    const SimulationConfig& cfg_;
    Rng rng_;
    std::vector<Flow> flows_;
    std::vector<InFlight> flight_;

    // Beacon and coordinator tables for the current tick.
    std::vector<GraphBeacon> beacons_;
    std::vector<bool> coordinators_;

    bool is_vadd() const { return cfg_.protocol != Protocol::gpcr; }

    void setup_flows(const Snapshot& s) {
        const TrafficConfig& tc = cfg_.traffic;
        std::vector<NodeId> vehicles;
        for (const Node& n : s.nodes()) {
            if (n.kind == NodeKind::vehicle) vehicles.push_back(n.id);
        }
        std::sort(vehicles.begin(), vehicles.end());

        std::vector<NodeId> senders = tc.senders;
        if (senders.empty()) {
            std::vector<NodeId> pool = vehicles;
            const std::size_t want = std::min(tc.sender_count, pool.size());
            for (std::size_t i = 0; i < want; ++i) {
                std::swap(pool[i], pool[i + rng_.below(pool.size() - i)]);
            }
            senders.assign(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(want));
        }

        const double period = 1.0 / tc.packets_per_second;
        for (std::size_t i = 0; i < senders.size(); ++i) {
            Flow f;
            f.sender = senders[i];
            f.next_emission = s.t() + period * static_cast<double>(i) / static_cast<double>(senders.size());
            if (tc.destination == DestinationPolicy::fixed_node) {
                if (tc.destination_node) {
                    f.dst_node = tc.destination_node;
                } else if (vehicles.size() > 1) {
                    NodeId pick = f.sender;
                    while (pick == f.sender) pick = vehicles[rng_.below(vehicles.size())];
                    f.dst_node = pick;
                }
            } else if (tc.destination_point) {
                f.dst_point = tc.destination_point;
            } else if (cfg_.road_map) {
                const RoadMap& map = *cfg_.road_map;
                const auto i_x = static_cast<int>(rng_.below(static_cast<std::uint64_t>(map.streets_x)));
                const auto i_y = static_cast<int>(rng_.below(static_cast<std::uint64_t>(map.streets_y)));
                f.dst_point = map.intersection(i_x, i_y);
            } else {
                double x0 = INFINITY, y0 = INFINITY, x1 = -INFINITY, y1 = -INFINITY;
                for (const Node& n : s.nodes()) {
                    x0 = std::min(x0, n.position.x);
                    y0 = std::min(y0, n.position.y);
                    x1 = std::max(x1, n.position.x);
                    y1 = std::max(y1, n.position.y);
                }
                f.dst_point = Point{rng_.uniform(x0, x1), rng_.uniform(y0, y1)};
            }
            if (f.dst_node || f.dst_point) flows_.push_back(f);
        }
    }

    void tick(const Snapshot& s, double dt, RoutingResult& result) {
        const double t = s.t();
        const double tick_end = t + dt;
        beacons_ = graph_beacons(s);
        if (cfg_.protocol == Protocol::gpcr) {
            coordinators_ = gpcr_coordinators(s, cfg_.gpcr_mode, cfg_.radio.range, cfg_.params);
        }

        for (InFlight& f : flight_) {
            PacketRecord& rec = result.packets[f.record];
            if (t - rec.created_t > cfg_.traffic.ttl) rec.drop_reason = DropReason::ttl_expired;
        }
        std::erase_if(flight_, [&](const InFlight& f) { return result.packets[f.record].drop_reason.has_value(); });

        const double period = 1.0 / cfg_.traffic.packets_per_second;
        for (Flow& flow : flows_) {
            while (flow.next_emission < tick_end) {
                if (cfg_.traffic.packets_per_sender && flow.emitted >= *cfg_.traffic.packets_per_sender) break;
                const double created = flow.next_emission;
                flow.next_emission = created + period;
                if (created < t || !s.vertex_of(flow.sender)) continue;
                PacketRecord rec;
                rec.id = result.packets.size();
                rec.src = flow.sender;
                rec.dst_node = flow.dst_node;
                rec.dst_point = flow.dst_point;
                rec.created_t = created;
                result.packets.push_back(rec);
                flight_.push_back(InFlight{rec.id, flow.sender, std::nullopt, {}});
                ++flow.emitted;
            }
        }

        for (InFlight& f : flight_) advance(f, s, t, tick_end, result.packets[f.record]);
        std::erase_if(flight_, [&](const InFlight& f) {
            const PacketRecord& r = result.packets[f.record];
            return r.delivered_t.has_value() || r.drop_reason.has_value();
        });
    }

    void advance(InFlight& f, const Snapshot& s, double t, double tick_end, PacketRecord& rec) {
        const TrafficConfig& tc = cfg_.traffic;
        double clock = std::max(t, rec.created_t);
        std::vector<NodeId> visited{f.holder};
        std::size_t hops = 0;

        while (true) {
            const auto holder = s.vertex_of(f.holder);
            if (!holder) {
                rec.drop_reason = DropReason::no_carrier;
                return;
            }
            const Point here = s.node(*holder).position;
            if (rec.dst_node && f.holder == *rec.dst_node) {
                rec.delivered_t = clock;
                return;
            }
            if (rec.dst_point && distance(here, *rec.dst_point) <= cfg_.radio.range) {
                rec.delivered_t = clock + tc.hop_latency;
                ++rec.hop_count;
                return;
            }
            if (hops >= tc.max_hops_per_tick || clock + tc.hop_latency > tick_end + 1e-12) return;

            std::optional<Vertex> dst_vertex;
            Point dst;
            if (rec.dst_node) {
                dst_vertex = s.vertex_of(*rec.dst_node);
                if (!dst_vertex) {
                    if (!is_vadd()) rec.drop_reason = DropReason::no_carrier;
                    return;  // VADD keeps carrying until the destination reappears
                }
                dst = s.node(*dst_vertex).position;
            } else {
                dst = *rec.dst_point;
            }

            std::optional<Vertex> next;
            if (is_vadd()) {
                next = vadd_next(f, s, *holder, dst, dst_vertex, visited);
                if (!next) return;  // carry
            } else {
                const GpcrStep step = gpcr_forward_step(f.gpcr, *holder, s, dst, dst_vertex, coordinators_, cfg_.params);
                if (!step.next) {
                    rec.drop_reason = DropReason::local_optimum;
                    return;
                }
                next = step.next;
            }

            f.holder = s.node(*next).id;
            visited.push_back(f.holder);
            ++rec.hop_count;
            ++hops;
            clock += tc.hop_latency;
        }
    }

    std::optional<Vertex> vadd_next(InFlight& f, const Snapshot& s, Vertex holder, Point dst,
                                    std::optional<Vertex> dst_vertex, const std::vector<NodeId>& visited) {
        const Graph& g = s.graph();
        const RoadMap& map = *cfg_.road_map;
        const Point here = s.node(holder).position;
        const auto nb = g.neighbors(holder);
        if (dst_vertex && std::binary_search(nb.begin(), nb.end(), *dst_vertex)) return dst_vertex;

        const auto fresh = [&](Vertex w) {
            return std::find(visited.begin(), visited.end(), s.node(w).id) == visited.end();
        };

        const auto at = map.nearest_intersection(here);
        if (distance(here, map.intersection(at[0], at[1])) <= cfg_.params.intersection_radius) {
            std::vector<Candidate> candidates;
            for (Vertex w : nb) {
                if (fresh(w)) candidates.push_back(Candidate{s.node(w).id, beacons_[w]});
            }
            const VaddDecision d = vadd_intersection_decision(
                here, at, candidates, dst, map, cfg_.radio.range, cfg_.traffic.hop_latency,
                cfg_.params, cfg_.protocol == Protocol::vadd_enhanced);
            if (d.road) f.target = d.road->to;
            if (!d.next) return std::nullopt;
            return s.vertex_of(*d.next);
        }

        const auto segment = street_segment_at(map, here);
        if (!segment) return std::nullopt;
        const auto& [end_a, end_b] = *segment;
        if (!f.target || (*f.target != end_a && *f.target != end_b)) {
            const double da = distance(map.intersection(end_a[0], end_a[1]), dst);
            const double db = distance(map.intersection(end_b[0], end_b[1]), dst);
            f.target = da < db ? end_a : end_b;
        }
        const Point goal = map.intersection((*f.target)[0], (*f.target)[1]);
        const double own = distance(here, goal);

        std::optional<Vertex> best;
        double best_distance = own;
        for (Vertex w : nb) {
            if (!fresh(w)) continue;
            const Point p = s.node(w).position;
            const double d = distance(p, goal);
            const bool along = d <= cfg_.params.intersection_radius || street_segment_at(map, p) == segment;
            if (!along || !(d < best_distance)) continue;
            best = w;
            best_distance = d;
        }
        return best;
    }
};

}  // namespace

RoutingResult run_simulation(const SnapshotStream& stream, const SimulationConfig& config) {
    config.validate();
    Simulator sim(stream, config);
    return sim.run();
}

}  // namespace vgs
