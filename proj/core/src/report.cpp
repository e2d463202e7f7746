#include "vgs/report.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <json.hpp>
#include <sstream>

#include "vgs/errors.hpp"
#include "vgs/format.hpp"
#include "vgs/parallel.hpp"
#include "vgs/stats.hpp"

namespace vgs {

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;

namespace {

void make_dir(const fs::path& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw IoError(dir.string(), ec.message());
}

// Writes through a temporary string so a failed run leaves no partial file
// that looks complete.
void write_file(const fs::path& path, const std::function<void(std::ostream&)>& body) {
    std::ostringstream buffer;
    body(buffer);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError(path.string(), "cannot open for writing");
    out << buffer.str();
    if (!out.flush()) throw IoError(path.string(), "write failed");
}

std::string fmt(double v) { return format_double(v); }
std::string fmt(std::optional<double> v) { return format_optional(v); }

template <class T>
std::string fmt_count(std::optional<T> v) {
    return v ? std::to_string(*v) : std::string();
}

Json summary_json(std::span<const double> values) {
    const auto s = summarize(values);
    if (!s) return nullptr;
    return Json{{"count", s->count}, {"min", s->min}, {"max", s->max}, {"mean", s->mean}, {"median", s->median}};
}

template <class T>
std::vector<double> as_doubles(std::span<const T> values) {
    return {values.begin(), values.end()};
}

}  // namespace

std::vector<TickRecord> analyze_series(const SnapshotSeries& series, const Region& region,
                                       const MetricOptions& options, std::size_t stride,
                                       std::size_t workers) {
    if (stride < 1) throw ConfigError("stride", "must be at least 1");
    std::vector<TickRecord> out(series.size());
    parallel_for(series.size(), workers, [&](std::size_t k) {
        MetricOptions opt = options;
        opt.betweenness = options.betweenness && k % stride == 0;
        const Snapshot s = series.at(k);
        SnapshotMetrics m = compute_snapshot_metrics(s, region, opt);
        TickRecord& r = out[k];
        const auto degrees = as_doubles<std::uint32_t>(m.nodes.degree);
        r.degree_skewness = skewness(degrees);
        r.betweenness_computed = opt.betweenness;
        for (Vertex v = 0; v < s.size(); ++v) {
            if (s.node(v).kind != NodeKind::vehicle) continue;
            r.vehicle_degree.push_back(m.nodes.degree[v]);
            r.vehicle_lobby.push_back(m.nodes.lobby[v]);
            if (opt.betweenness) r.vehicle_betweenness.push_back(m.nodes.betweenness[v]);
        }
        r.graph = std::move(m.graph);
    });
    return out;
}

std::vector<LinkTimeline> series_link_timelines(const SnapshotSeries& series, std::size_t workers) {
    LinkTimelineBuilder builder(series.dt());
    constexpr std::size_t kBlock = 64;
    std::vector<Snapshot> block;
    for (std::size_t begin = 0; begin < series.size(); begin += kBlock) {
        const std::size_t n = std::min(kBlock, series.size() - begin);
        block.assign(n, Snapshot{});
        parallel_for(n, workers, [&](std::size_t i) { block[i] = series.at(begin + i); });
        for (const Snapshot& s : block) builder.add(s);
    }
    return builder.finish();
}

fs::path penetration_dir(const ScenarioConfig& cfg, double ratio) {
    return cfg.out / ("penetration_" + format_double(ratio));
}

SnapshotSeries make_series(const Scenario& sc, const ScenarioConfig& cfg, double ratio) {
    const auto ids = vehicle_ids(sc.trajectories);
    const auto sample = sample_penetration(ids, ratio, cfg.seed);
    return SnapshotSeries(sc.trajectories, sc.rsus, sample, cfg.radio(), sc.window, sc.dt);
}

namespace {

void write_metrics_csv(std::ostream& out, std::span<const TickRecord> ticks) {
    out << "t,node_count,vehicle_count,edge_count,density,effective_diameter,avg_separation,"
           "triangles,cluster_count,component_count,biggest_cluster_size,"
           "biggest_cluster_coefficient,biggest_cluster_hull_fraction,mean_cluster_coefficient,"
           "degree_mean,degree_median,degree_max,lobby_mean,lobby_max,degree_skewness,"
           "powerlaw_gamma,community_count,modularity,betweenness_mean,betweenness_max\n";
    for (const TickRecord& r : ticks) {
        const GraphMetrics& g = r.graph;
        const auto degree = summarize(as_doubles<std::uint32_t>(r.vehicle_degree));
        const auto lobby = summarize(as_doubles<std::uint32_t>(r.vehicle_lobby));
        out << fmt(g.t) << ',' << g.node_count << ',' << g.vehicle_count << ',' << g.edge_count << ','
            << fmt(g.density) << ',' << fmt_count(g.effective_diameter) << ',' << fmt(g.avg_separation)
            << ',' << g.triangles << ',' << g.cluster_count << ',' << g.component_count << ',';
        if (g.biggest_cluster) {
            out << g.biggest_cluster->size() << ',' << fmt(g.biggest_cluster->coefficient) << ','
                << fmt(g.biggest_cluster->hull_area_fraction) << ',';
        } else {
            out << ",,,";
        }
        out << fmt(g.mean_cluster_coefficient) << ',';
        if (degree) out << fmt(degree->mean) << ',' << fmt(degree->median) << ',' << fmt(degree->max) << ',';
        else out << ",,,";
        if (lobby) out << fmt(lobby->mean) << ',' << fmt(lobby->max) << ',';
        else out << ",,";
        out << fmt(r.degree_skewness) << ',' << fmt(g.degrees.powerlaw_gamma) << ',';
        if (g.communities) out << g.communities->count << ',' << fmt(g.communities->modularity) << ',';
        else out << ",,";
        const auto bc = summarize(r.vehicle_betweenness);
        if (r.betweenness_computed && bc) out << fmt(bc->mean) << ',' << fmt(bc->max);
        else if (r.betweenness_computed) out << "0,0";
        else out << ',';
        out << '\n';
    }
}

void write_degree_hist(std::ostream& out, std::span<const TickRecord> ticks) {
    out << "t,degree,count\n";
    for (const TickRecord& r : ticks) {
        for (const auto& [degree, count] : r.graph.degrees.histogram) {
            out << fmt(r.graph.t) << ',' << degree << ',' << count << '\n';
        }
    }
}

void write_communities(std::ostream& out, std::span<const TickRecord> ticks) {
    out << "t,community,size,internal_edges,intra_degree,inter_degree,dense\n";
    for (const TickRecord& r : ticks) {
        for (const CommunityProfile& c : r.graph.community_profiles) {
            out << fmt(r.graph.t) << ',' << c.id << ',' << c.size << ',' << c.internal_edges << ','
                << c.intra_degree << ',' << c.inter_degree << ',' << (c.dense ? 1 : 0) << '\n';
        }
    }
}

void write_biggest_cluster(std::ostream& out, std::span<const TickRecord> ticks, const NodeRegistry& reg) {
    out << "t,size,edge_count,coefficient,hull_area_fraction,has_vehicle,members\n";
    for (const TickRecord& r : ticks) {
        if (!r.graph.biggest_cluster) continue;
        const ClusterReport& c = *r.graph.biggest_cluster;
        out << fmt(r.graph.t) << ',' << c.size() << ',' << c.edge_count << ',' << fmt(c.coefficient) << ','
            << fmt(c.hull_area_fraction) << ',' << (c.has_vehicle ? 1 : 0) << ',';
        for (std::size_t i = 0; i < c.member_ids.size(); ++i) {
            out << (i ? ";" : "") << reg.name(c.member_ids[i]);
        }
        out << '\n';
    }
}

Json analysis_summary(std::span<const TickRecord> ticks, double ratio) {
    std::vector<double> edges, density, diameter, separation, triangles, clusters, components,
        biggest, biggest_cc, mean_cc, communities, modularity, gamma, skew;
    std::vector<double> degree, lobby, betweenness;
    const auto push = [](std::vector<double>& v, auto opt) {
        if (opt) v.push_back(static_cast<double>(*opt));
    };
    for (const TickRecord& r : ticks) {
        const GraphMetrics& g = r.graph;
        edges.push_back(static_cast<double>(g.edge_count));
        push(density, g.density);
        push(diameter, g.effective_diameter);
        push(separation, g.avg_separation);
        triangles.push_back(static_cast<double>(g.triangles));
        clusters.push_back(static_cast<double>(g.cluster_count));
        components.push_back(static_cast<double>(g.component_count));
        if (g.biggest_cluster) {
            biggest.push_back(static_cast<double>(g.biggest_cluster->size()));
            push(biggest_cc, g.biggest_cluster->coefficient);
        }
        push(mean_cc, g.mean_cluster_coefficient);
        if (g.communities) {
            communities.push_back(g.communities->count);
            modularity.push_back(g.communities->modularity);
        }
        push(gamma, g.degrees.powerlaw_gamma);
        push(skew, r.degree_skewness);
        degree.insert(degree.end(), r.vehicle_degree.begin(), r.vehicle_degree.end());
        lobby.insert(lobby.end(), r.vehicle_lobby.begin(), r.vehicle_lobby.end());
        betweenness.insert(betweenness.end(), r.vehicle_betweenness.begin(), r.vehicle_betweenness.end());
    }
    Json j;
    j["penetration"] = ratio;
    j["ticks"] = ticks.size();
    j["graph"] = Json{{"edge_count", summary_json(edges)},
                      {"density", summary_json(density)},
                      {"effective_diameter", summary_json(diameter)},
                      {"avg_separation", summary_json(separation)},
                      {"triangles", summary_json(triangles)},
                      {"cluster_count", summary_json(clusters)},
                      {"component_count", summary_json(components)},
                      {"biggest_cluster_size", summary_json(biggest)},
                      {"biggest_cluster_coefficient", summary_json(biggest_cc)},
                      {"mean_cluster_coefficient", summary_json(mean_cc)},
                      {"community_count", summary_json(communities)},
                      {"modularity", summary_json(modularity)},
                      {"powerlaw_gamma", summary_json(gamma)},
                      {"degree_skewness", summary_json(skew)}};
    j["node"] = Json{{"degree", summary_json(degree)},
                     {"lobby", summary_json(lobby)},
                     {"betweenness", summary_json(betweenness)}};
    return j;
}

void write_json(const fs::path& path, const Json& j) {
    write_file(path, [&](std::ostream& out) { out << j.dump(2) << '\n'; });
}

std::string join(std::span<const double> values) {
    std::string s;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) s += ';';
        s += fmt(values[i]);
    }
    return s;
}

}  // namespace

void cmd_analyze(const ScenarioConfig& cfg) {
    const Scenario sc = load_scenario(cfg);
    const std::size_t workers = default_worker_count();
    for (double ratio : cfg.penetration) {
        const SnapshotSeries series = make_series(sc, cfg, ratio);
        const auto ticks = analyze_series(series, sc.region, cfg.metrics, cfg.stride, workers);
        const fs::path dir = penetration_dir(cfg, ratio);
        make_dir(dir);
        write_file(dir / "metrics.csv", [&](std::ostream& o) { write_metrics_csv(o, ticks); });
        write_file(dir / "degree_hist.csv", [&](std::ostream& o) { write_degree_hist(o, ticks); });
        write_file(dir / "communities.csv", [&](std::ostream& o) { write_communities(o, ticks); });
        write_file(dir / "biggest_cluster.csv",
                   [&](std::ostream& o) { write_biggest_cluster(o, ticks, series.registry()); });
        write_json(dir / "summary.json", analysis_summary(ticks, ratio));
        if (cfg.dump_snapshots) {
            make_dir(dir / "snapshots");
            for (std::size_t k = 0; k < series.size(); ++k) {
                write_file(dir / "snapshots" / ("tick_" + std::to_string(k) + ".txt"),
                           [&](std::ostream& o) { write_snapshot_dump(o, series.at(k), series.registry()); });
            }
        }
    }
}

void cmd_links(const ScenarioConfig& cfg) {
    const Scenario sc = load_scenario(cfg);
    const std::size_t workers = default_worker_count();
    for (double ratio : cfg.penetration) {
        const SnapshotSeries series = make_series(sc, cfg, ratio);
        const auto timelines = series_link_timelines(series, workers);
        const LinkStats stats = link_stats(timelines, series.dt());
        const NodeRegistry& reg = series.registry();
        const fs::path dir = penetration_dir(cfg, ratio);
        make_dir(dir);

        write_file(dir / "links.csv", [&](std::ostream& o) {
            o << "node_a,node_b,kind_a,kind_b,period_count,durations,rehealings\n";
            for (const PairLinkStats& p : stats.pairs) {
                o << reg.name(p.a) << ',' << reg.name(p.b) << ',' << to_string(p.kind_a) << ','
                  << to_string(p.kind_b) << ',' << p.period_count << ',' << join(p.durations) << ','
                  << join(p.rehealings) << '\n';
            }
        });
        write_file(dir / "link_cdf.csv", [&](std::ostream& o) {
            o << "quantity,value,cum_fraction\n";
            const auto rows = [&](const char* name, const auto& cdf) {
                for (const auto& [v, f] : cdf) o << name << ',' << fmt(v) << ',' << fmt(f) << '\n';
            };
            rows("connected_periods", stats.periods_cdf);
            rows("link_duration", stats.durations_cdf);
            rows("rehealing", stats.rehealings_cdf);
        });
        write_file(dir / "link_summary.csv", [&](std::ostream& o) {
            o << "quantity,count,min,max,mean,median\n";
            const auto row = [&](const char* name, const std::optional<Summary>& s) {
                o << name << ',';
                if (s) o << s->count << ',' << fmt(s->min) << ',' << fmt(s->max) << ',' << fmt(s->mean) << ',' << fmt(s->median);
                else o << "0,,,,";
                o << '\n';
            };
            row("connected_periods", stats.periods);
            row("link_duration", stats.durations);
            row("link_duration_ticks", stats.duration_ticks);
            row("rehealing", stats.rehealings);
        });
    }
}

SimulationConfig simulation_config(const ScenarioConfig& cfg, std::size_t run) {
    if (cfg.protocol != Protocol::gpcr && cfg.trace && !cfg.road_map_given) {
        throw ConfigError("road", "VADD needs the road grid of the trace (road.* keys)");
    }
    SimulationConfig sim;
    sim.protocol = cfg.protocol;
    sim.gpcr_mode = cfg.gpcr_mode;
    sim.traffic = cfg.traffic;
    sim.traffic.ttl = cfg.effective_ttl();
    sim.params = cfg.routing;
    sim.radio = cfg.radio();
    sim.road_map = cfg.road;
    sim.seed = cfg.seed + run;
    return sim;
}

std::vector<RoutingResult> route_runs(const SnapshotSeries& series, const ScenarioConfig& cfg,
                                      std::size_t workers) {
    for (std::size_t r = 0; r < cfg.runs; ++r) simulation_config(cfg, r).validate();
    std::vector<RoutingResult> results(cfg.runs);
    const SnapshotStream stream = stream_of(series);
    parallel_for(cfg.runs, workers, [&](std::size_t r) {
        results[r] = run_simulation(stream, simulation_config(cfg, r));
    });
    return results;
}

void cmd_route(const ScenarioConfig& cfg) {
    for (std::size_t r = 0; r < cfg.runs; ++r) simulation_config(cfg, r).validate();
    const Scenario sc = load_scenario(cfg);
    const std::size_t workers = default_worker_count();
    for (double ratio : cfg.penetration) {
        const SnapshotSeries series = make_series(sc, cfg, ratio);
        const auto results = route_runs(series, cfg, workers);
        const NodeRegistry& reg = series.registry();
        const fs::path dir = penetration_dir(cfg, ratio);
        make_dir(dir);

        for (std::size_t r = 0; r < results.size(); ++r) {
            write_file(dir / ("packets_" + std::to_string(r) + ".csv"), [&](std::ostream& o) {
                o << "packet_id,src,dst,created_t,delivered_t,hops,drop_reason\n";
                for (const PacketRecord& p : results[r].packets) {
                    o << p.id << ',' << reg.name(p.src) << ',';
                    if (p.dst_node) o << reg.name(*p.dst_node);
                    else o << fmt(p.dst_point->x) << ';' << fmt(p.dst_point->y);
                    o << ',' << fmt(p.created_t) << ',' << fmt(p.delivered_t) << ',' << p.hop_count << ','
                      << (p.drop_reason ? to_string(*p.drop_reason) : "") << '\n';
                }
            });
        }

        Json runs = Json::array();
        write_file(dir / "routing.csv", [&](std::ostream& o) {
            o << "run,seed,created,delivered,dropped_ttl,dropped_local_optimum,dropped_no_carrier,"
                 "in_flight,delivery_rate,mean_delay,median_delay,mean_hops\n";
            std::vector<double> cols[6], rate, mean_delay, median_delay, hops;
            for (std::size_t r = 0; r < results.size(); ++r) {
                const RoutingStats& s = results[r].stats;
                const std::size_t seed = cfg.seed + r;
                o << r << ',' << seed << ',' << s.created << ',' << s.delivered << ',' << s.dropped_ttl << ','
                  << s.dropped_local_optimum << ',' << s.dropped_no_carrier << ',' << s.in_flight << ','
                  << fmt(s.delivery_rate) << ',' << fmt(s.mean_delay) << ',' << fmt(s.median_delay) << ','
                  << fmt(s.mean_hops) << '\n';
                const double counts[] = {double(s.created), double(s.delivered), double(s.dropped_ttl),
                                         double(s.dropped_local_optimum), double(s.dropped_no_carrier),
                                         double(s.in_flight)};
                for (int c = 0; c < 6; ++c) cols[c].push_back(counts[c]);
                rate.push_back(s.delivery_rate);
                if (s.mean_delay) mean_delay.push_back(*s.mean_delay);
                if (s.median_delay) median_delay.push_back(*s.median_delay);
                if (s.mean_hops) hops.push_back(*s.mean_hops);
                runs.push_back(Json{{"run", r},
                                    {"seed", seed},
                                    {"created", s.created},
                                    {"delivered", s.delivered},
                                    {"dropped_ttl", s.dropped_ttl},
                                    {"dropped_local_optimum", s.dropped_local_optimum},
                                    {"dropped_no_carrier", s.dropped_no_carrier},
                                    {"in_flight", s.in_flight},
                                    {"delivery_rate", s.delivery_rate},
                                    {"mean_delay", s.mean_delay ? Json(*s.mean_delay) : Json()},
                                    {"median_delay", s.median_delay ? Json(*s.median_delay) : Json()},
                                    {"mean_hops", s.mean_hops ? Json(*s.mean_hops) : Json()}});
            }
            const auto mean = [](const std::vector<double>& v) -> std::optional<double> {
                const auto s = summarize(v);
                return s ? std::optional<double>(s->mean) : std::nullopt;
            };
            o << "mean,";
            for (int c = 0; c < 6; ++c) o << ',' << fmt(mean(cols[c]));
            o << ',' << fmt(mean(rate)) << ',' << fmt(mean(mean_delay)) << ',' << fmt(mean(median_delay)) << ','
              << fmt(mean(hops)) << '\n';
        });

        Json summary;
        summary["protocol"] = to_string(cfg.protocol);
        if (cfg.protocol == Protocol::gpcr) summary["gpcr_mode"] = to_string(cfg.gpcr_mode);
        summary["penetration"] = ratio;
        summary["runs"] = runs;
        write_json(dir / "routing_summary.json", summary);
    }
}

void cmd_synth(const ScenarioConfig& cfg) {
    GridScenarioConfig g = cfg.synth;
    g.road = cfg.road;
    g.dt = cfg.dt;
    g.seed = cfg.seed;
    const auto trajectories = generate_grid_scenario(g);
    make_dir(cfg.out);
    write_file(cfg.out / "trace.csv", [&](std::ostream& o) { write_trace(o, trajectories); });
}

void cmd_convert(const ScenarioConfig& cfg) {
    if (!cfg.trace) throw ConfigError("trace", "convert needs an input trace");
    const Scenario sc = load_scenario(cfg);
    make_dir(cfg.out);
    write_file(cfg.out / "trace.csv", [&](std::ostream& o) { write_trace(o, sc.trajectories); });
}

}  // namespace vgs
