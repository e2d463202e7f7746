#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "vgs/analysis.hpp"
#include "vgs/community.hpp"
#include "vgs/metrics.hpp"
#include "vgs/mobility.hpp"
#include "vgs/rng.hpp"
#include "vgs/snapshot.hpp"
#include "vgs/spatial_hash.hpp"

namespace {

// Side grows with sqrt(n) so point density matches 500 nodes on 2 km.
std::vector<vgs::Point> scatter(std::size_t n, std::uint64_t seed) {
    const double side = 2000.0 * std::sqrt(static_cast<double>(n) / 500.0);
    vgs::Rng rng(seed);
    std::vector<vgs::Point> pts(n);
    for (auto& p : pts) p = {rng.uniform(0, side), rng.uniform(0, side)};
    return pts;
}

vgs::Graph disk_graph(std::size_t n) {
    const auto pts = scatter(n, n);
    const auto edges = vgs::unit_disk_pairs(pts, 200.0);
    return vgs::Graph::from_edges(n, edges);
}

void BM_UnitDiskPairs(benchmark::State& state) {
    const auto pts = scatter(static_cast<std::size_t>(state.range(0)), 1);
    for (auto _ : state) benchmark::DoNotOptimize(vgs::unit_disk_pairs(pts, 300.0));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_UnitDiskPairs)->RangeMultiplier(2)->Range(125, 4000)->Complexity();

void BM_Betweenness(benchmark::State& state) {
    const auto g = disk_graph(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(vgs::betweenness_centrality(g));
}
BENCHMARK(BM_Betweenness)->RangeMultiplier(2)->Range(125, 1000);

void BM_Communities(benchmark::State& state) {
    const auto g = disk_graph(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(vgs::detect_communities(g));
}
BENCHMARK(BM_Communities)->RangeMultiplier(2)->Range(125, 1000);

void BM_SnapshotMetrics(benchmark::State& state) {
    vgs::GridScenarioConfig cfg;
    cfg.vehicle_count = static_cast<int>(state.range(0));
    cfg.duration = 10;
    const auto trajs = vgs::generate_grid_scenario(cfg);
    const vgs::SnapshotSeries series(trajs, vgs::RsuSet{}, vgs::sample_penetration(vgs::vehicle_ids(trajs), 1.0, 1),
                                     vgs::RadioModel{}, vgs::Window{0, 10}, 1.0);
    const vgs::Snapshot snap = series.at(5);
    const vgs::Region region = vgs::RoadMap{}.bounds();
    vgs::MetricOptions opt;
    opt.betweenness = state.range(1) != 0;
    for (auto _ : state) benchmark::DoNotOptimize(vgs::compute_snapshot_metrics(snap, region, opt));
}
BENCHMARK(BM_SnapshotMetrics)->ArgsProduct({{150, 500}, {0, 1}})->ArgNames({"vehicles", "bc"});

}  // namespace

BENCHMARK_MAIN();
