#include <gtest/gtest.h>

#include <cmath>
#include <set>
#include <sstream>

#include "support.hpp"
#include "vgs/errors.hpp"
#include "vgs/mobility.hpp"
#include "vgs/snapshot.hpp"
#include "vgs/spatial_hash.hpp"

using namespace vgs;

namespace {

std::vector<Node> random_nodes(std::size_t n, double side, Rng& rng) {
    std::vector<Node> nodes;
    for (NodeId i = 0; i < n; ++i) nodes.push_back({i, NodeKind::vehicle, {rng.uniform(0, side), rng.uniform(0, side)}});
    return nodes;
}

std::set<std::pair<NodeId, NodeId>> edge_ids(const Snapshot& s) {
    std::set<std::pair<NodeId, NodeId>> out;
    for (const auto& [u, v] : s.graph().edges()) {
        const NodeId a = s.node(u).id, b = s.node(v).id;
        out.insert({std::min(a, b), std::max(a, b)});
    }
    return out;
}

}  // namespace

TEST(BuildSnapshot, RangeIsInclusive) {
    RadioModel m;
    m.range = 300;
    const auto at_range = build_snapshot(0, {{0, NodeKind::vehicle, {0, 0}}, {1, NodeKind::vehicle, {300, 0}}}, m);
    EXPECT_EQ(at_range.graph().edge_count(), 1u);
    const auto beyond = build_snapshot(0, {{0, NodeKind::vehicle, {0, 0}}, {1, NodeKind::vehicle, {300.001, 0}}}, m);
    EXPECT_EQ(beyond.graph().edge_count(), 0u);
}

TEST(BuildSnapshot, DuplicateIdsRejected) {
    RadioModel m;
    EXPECT_THROW(build_snapshot(0, {{3, NodeKind::vehicle, {0, 0}}, {3, NodeKind::vehicle, {1, 0}}}, m), ValidationError);
}

TEST(BuildSnapshot, SpatialHashMatchesAllPairs) {
    Rng rng(8);
    for (int trial = 0; trial < 30; ++trial) {
        RadioModel m;
        m.range = rng.uniform(20, 400);
        auto nodes = random_nodes(200, 2000, rng);
        std::set<std::pair<NodeId, NodeId>> brute;
        for (std::size_t i = 0; i < nodes.size(); ++i)
            for (std::size_t j = i + 1; j < nodes.size(); ++j)
                if (distance(nodes[i].position, nodes[j].position) <= m.range) brute.insert({nodes[i].id, nodes[j].id});
        EXPECT_EQ(edge_ids(build_snapshot(0, nodes, m)), brute);
    }
}

TEST(UnitDiskPairs, NegativeCoordinatesAndCellBoundaries) {
    const std::vector<Point> pts{{-10, -10}, {-10, 0}, {0, 0}, {10, 0}, {20, 0}, {-20.5, -10}};
    auto pairs = unit_disk_pairs(pts, 10);
    std::sort(pairs.begin(), pairs.end());
    std::vector<Edge> brute;
    for (Vertex i = 0; i < pts.size(); ++i)
        for (Vertex j = i + 1; j < pts.size(); ++j)
            if (distance(pts[i], pts[j]) <= 10) brute.push_back({i, j});
    EXPECT_EQ(pairs, brute);
}

TEST(BuildSnapshot, ManhattanLosMatchesBruteForce) {
    RoadMap map;
    map.spacing = 100;
    map.streets_x = 6;
    map.streets_y = 6;
    map.corridor_width = 12;
    RadioModel m;
    m.range = 250;
    m.los = LosMode::manhattan_los;
    m.road_map = map;
    Rng rng(4);
    for (int trial = 0; trial < 10; ++trial) {
        // nodes on street centre lines
        std::vector<Node> nodes;
        for (NodeId i = 0; i < 80; ++i) {
            const double along = rng.uniform(0, 500);
            const double line = 100.0 * static_cast<double>(rng.below(6));
            nodes.push_back({i, NodeKind::vehicle, rng.below(2) ? Point{along, line} : Point{line, along}});
        }
        std::set<std::pair<NodeId, NodeId>> brute;
        for (std::size_t i = 0; i < nodes.size(); ++i)
            for (std::size_t j = i + 1; j < nodes.size(); ++j) {
                const Point a = nodes[i].position, b = nodes[j].position;
                if (distance(a, b) > m.range) continue;
                bool blocked = false;
                for (int bx = 0; bx < 5; ++bx)
                    for (int by = 0; by < 5; ++by)
                        blocked = blocked || segment_crosses_open_rect(a, b, bx * 100 + 6, by * 100 + 6, bx * 100 + 94, by * 100 + 94);
                if (!blocked) brute.insert({nodes[i].id, nodes[j].id});
            }
        EXPECT_EQ(edge_ids(build_snapshot(0, nodes, m)), brute);
    }
}

TEST(BuildSnapshot, LosRequiresRoadMap) {
    RadioModel m;
    m.los = LosMode::manhattan_los;
    EXPECT_THROW(m.validate(), ConfigError);
    RadioModel bad;
    bad.range = 0;
    EXPECT_THROW(bad.validate(), ConfigError);
}

TEST(BuildSnapshot, MonotoneInRange) {
    Rng rng(12);
    auto nodes = random_nodes(150, 1500, rng);
    RadioModel small, large;
    small.range = 75;
    large.range = 300;
    const auto a = edge_ids(build_snapshot(0, nodes, small));
    const auto b = edge_ids(build_snapshot(0, nodes, large));
    for (const auto& e : a) EXPECT_TRUE(b.count(e));
}

class SeriesTest : public ::testing::Test {
protected:
    void SetUp() override {
        GridScenarioConfig cfg;
        cfg.vehicle_count = 80;
        cfg.duration = 60;
        trajs = generate_grid_scenario(cfg);
        ids = vehicle_ids(trajs);
        region = cfg.road.bounds();
    }
    std::vector<Trajectory> trajs;
    std::vector<std::string> ids;
    std::optional<Region> region;
};

TEST_F(SeriesTest, TickCountAndWindowCoverage) {
    const auto all = sample_penetration(ids, 1.0, 1);
    SnapshotSeries series(trajs, RsuSet{}, all, RadioModel{}, Window{10, 40}, 1.0);
    EXPECT_EQ(series.size(), 30u);
    EXPECT_EQ(series.at(0).t(), 10.0);
    EXPECT_EQ(series.at(29).t(), 39.0);
    const Snapshot third = series.at(3);
    for (const Node& n : third.nodes()) EXPECT_EQ(n.kind, NodeKind::vehicle);
    EXPECT_THROW(SnapshotSeries(trajs, RsuSet{}, all, RadioModel{}, Window{100, 200}, 1.0), DomainError);
}

TEST_F(SeriesTest, NestedPenetrationGivesInducedSubgraph) {
    const auto small = sample_penetration(ids, 0.3, 5);
    const auto large = sample_penetration(ids, 0.7, 5);
    SnapshotSeries a(trajs, RsuSet{}, small, RadioModel{}, Window{0, 30}, 1.0);
    SnapshotSeries b(trajs, RsuSet{}, large, RadioModel{}, Window{0, 30}, 1.0);
    for (std::size_t k = 0; k < a.size(); ++k) {
        const auto sa = a.at(k), sb = b.at(k);
        EXPECT_EQ(sa.size(), 24u);
        const auto ea = edge_ids(sa), eb = edge_ids(sb);
        for (const auto& e : ea) EXPECT_TRUE(eb.count(e));
        // induced: every large-sample edge between small-sample nodes is present
        std::set<NodeId> small_nodes;
        for (const Node& n : sa.nodes()) small_nodes.insert(n.id);
        for (const auto& e : eb)
            if (small_nodes.count(e.first) && small_nodes.count(e.second)) EXPECT_TRUE(ea.count(e));
    }
}

TEST_F(SeriesTest, RsusPresentEveryTickWithStableIds) {
    RsuSet rsus{{{"r1", {400, 400}}, {"r2", {1200, 800}}}};
    SnapshotSeries series(trajs, rsus, sample_penetration(ids, 0.5, 1), RadioModel{}, Window{0, 20}, 1.0);
    const auto& reg = series.registry();
    EXPECT_EQ(reg.vehicle_count, 80u);
    for (std::size_t k = 0; k < series.size(); ++k) {
        const auto s = series.at(k);
        std::size_t count = 0;
        for (const Node& n : s.nodes()) {
            if (n.kind != NodeKind::rsu) continue;
            ++count;
            EXPECT_EQ(reg.kind(n.id), NodeKind::rsu);
            EXPECT_TRUE(reg.name(n.id) == "r1" || reg.name(n.id) == "r2");
        }
        EXPECT_EQ(count, 2u);
    }
}

TEST_F(SeriesTest, DumpRoundTrip) {
    SnapshotSeries series(trajs, RsuSet{{{"r", {1000, 1000}}}}, sample_penetration(ids, 1.0, 1), RadioModel{},
                          Window{0, 5}, 1.0);
    const auto s = series.at(2);
    std::stringstream io;
    write_snapshot_dump(io, s, series.registry());
    const auto dump = read_snapshot_dump(io);
    EXPECT_EQ(dump.t, s.t());
    ASSERT_EQ(dump.names.size(), s.size());
    for (Vertex v = 0; v < s.size(); ++v) {
        EXPECT_EQ(dump.names[v], series.registry().name(s.node(v).id));
        EXPECT_EQ(dump.positions[v], s.node(v).position);
    }
    EXPECT_EQ(dump.edges.size(), s.graph().edge_count());
}
