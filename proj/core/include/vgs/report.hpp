#pragma once

#include <cstddef>
#include <filesystem>
#include <span>
#include <vector>

#include "vgs/analysis.hpp"
#include "vgs/config.hpp"
#include "vgs/link_analysis.hpp"
#include "vgs/routing.hpp"
#include "vgs/snapshot.hpp"

namespace vgs {

// Metrics of one tick, with node-level values restricted to vehicles.
struct TickRecord {
    GraphMetrics graph;
    std::optional<double> degree_skewness;
    std::vector<std::uint32_t> vehicle_degree;
    std::vector<std::uint32_t> vehicle_lobby;
    std::vector<double> vehicle_betweenness;
    bool betweenness_computed = false;
};

// Metrics for every tick; betweenness only on ticks k with k % stride == 0.
std::vector<TickRecord> analyze_series(const SnapshotSeries& series, const Region& region,
                                       const MetricOptions& options, std::size_t stride,
                                       std::size_t workers);

std::vector<LinkTimeline> series_link_timelines(const SnapshotSeries& series, std::size_t workers);

SimulationConfig simulation_config(const ScenarioConfig& cfg, std::size_t run);
std::vector<RoutingResult> route_runs(const SnapshotSeries& series, const ScenarioConfig& cfg,
                                      std::size_t workers);

// Output directory of one penetration ratio under cfg.out.
std::filesystem::path penetration_dir(const ScenarioConfig& cfg, double ratio);
SnapshotSeries make_series(const Scenario& sc, const ScenarioConfig& cfg, double ratio);

// Each command writes its files under cfg.out and throws vgs::Error on failure.
void cmd_analyze(const ScenarioConfig& cfg);
void cmd_links(const ScenarioConfig& cfg);
void cmd_route(const ScenarioConfig& cfg);
void cmd_synth(const ScenarioConfig& cfg);    // <out>/trace.csv
void cmd_convert(const ScenarioConfig& cfg);  // <out>/trace.csv from cfg.trace

}  // namespace vgs
