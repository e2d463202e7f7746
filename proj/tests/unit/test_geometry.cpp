#include <gtest/gtest.h>

#include <cmath>

#include "support.hpp"
#include "vgs/errors.hpp"
#include "vgs/geometry.hpp"
#include "vgs/road_map.hpp"

using namespace vgs;
using namespace vgs::testing;


TEST(Region, RejectsEmptyAndContainsBoundary) {
    EXPECT_THROW(Region(0, 0, 0, 1), Error);
    const Region r(0, 0, 10, 5);
    EXPECT_TRUE(r.contains({10, 5}));
    EXPECT_TRUE(r.contains({0, 0}));
    EXPECT_FALSE(r.contains({10.0001, 1}));
    EXPECT_DOUBLE_EQ(r.area(), 50.0);
}

TEST(ConvexHull, SquareWithInteriorAndCollinearPoints) {
    const std::vector<Point> pts{{0, 0}, {2, 0}, {1, 0}, {2, 2}, {0, 2}, {1, 1}, {0, 1}};
    const auto hull = convex_hull(pts);
    EXPECT_EQ(hull.size(), 4u);
    EXPECT_DOUBLE_EQ(polygon_area(hull), 4.0);
}

TEST(ConvexHull, DegenerateInputs) {
    EXPECT_LT(convex_hull(std::vector<Point>{}).size(), 3u);
    EXPECT_LT(convex_hull(std::vector<Point>{{1, 1}}).size(), 3u);
    EXPECT_LT(convex_hull(std::vector<Point>{{0, 0}, {1, 1}, {2, 2}}).size(), 3u);
}

TEST(ConvexHull, MatchesBruteForceEdgeOracle) {
    Rng rng(11);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<Point> pts;
        const int n = 3 + static_cast<int>(rng.below(15));
        for (int i = 0; i < n; ++i) {
            // integer lattice keeps the oracle's collinearity tests exact
            pts.push_back({static_cast<double>(rng.below(20)), static_cast<double>(rng.below(20))});
        }
        std::sort(pts.begin(), pts.end(), [](Point a, Point b) { return std::tie(a.x, a.y) < std::tie(b.x, b.y); });
        pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
        const auto hull = convex_hull(pts);
        const double area = hull.size() >= 3 ? polygon_area(hull) : 0.0;
        EXPECT_NEAR(area, hull_area_oracle(pts), 1e-9) << "trial " << trial;
    }
}

TEST(SegmentRect, CrossingCases) {
    EXPECT_TRUE(segment_crosses_open_rect({-1, 0.5}, {2, 0.5}, 0, 0, 1, 1));
    EXPECT_FALSE(segment_crosses_open_rect({-1, 0}, {2, 0}, 0, 0, 1, 1));  // grazes the edge
    EXPECT_FALSE(segment_crosses_open_rect({-1, -1}, {-0.5, 3}, 0, 0, 1, 1));
    EXPECT_TRUE(segment_crosses_open_rect({0.5, 0.5}, {0.6, 0.6}, 0, 0, 1, 1));
}

TEST(SegmentRect, MatchesDenseSampling) {
    Rng rng(5);
    for (int trial = 0; trial < 300; ++trial) {
        const Point a{rng.uniform(-2, 3), rng.uniform(-2, 3)};
        const Point b{rng.uniform(-2, 3), rng.uniform(-2, 3)};
        bool sampled = false;
        for (int i = 0; i <= 20000; ++i) {
            const double s = i / 20000.0;
            const double x = a.x + s * (b.x - a.x), y = a.y + s * (b.y - a.y);
            if (x > 0 && x < 1 && y > 0 && y < 1) sampled = true;
        }
        // sampling can only miss tiny clips; only check the sampled-positive direction strictly
        if (sampled) EXPECT_TRUE(segment_crosses_open_rect(a, b, 0, 0, 1, 1));
    }
}

TEST(RoadMap, ValidationAndGeometry) {
    RoadMap m;
    m.streets_x = 1;
    EXPECT_THROW(m.validate(), ConfigError);
    RoadMap g;
    g.spacing = 100;
    g.streets_x = 3;
    g.streets_y = 3;
    g.corridor_width = 10;
    EXPECT_NO_THROW(g.validate());
    EXPECT_EQ(g.nearest_intersection({149, 51}), (std::array<int, 2>{1, 1}));
    EXPECT_EQ(g.nearest_intersection({-500, 900}), (std::array<int, 2>{0, 2}));
    // along a street: clear; across a block: blocked
    EXPECT_TRUE(g.line_of_sight({0, 0}, {200, 0}));
    EXPECT_FALSE(g.line_of_sight({0, 50}, {50, 0}));
    EXPECT_EQ(outgoing_roads(g, {0, 0}).size(), 2u);
    EXPECT_EQ(outgoing_roads(g, {1, 1}).size(), 4u);
    const auto seg = street_segment_at(g, {150, 0});
    ASSERT_TRUE(seg);
    EXPECT_EQ((*seg)[0], (std::array<int, 2>{1, 0}));
    EXPECT_EQ((*seg)[1], (std::array<int, 2>{2, 0}));
    EXPECT_FALSE(street_segment_at(g, {100, 100}));  // intersection square
    EXPECT_FALSE(street_segment_at(g, {50, 50}));    // inside a block
}

TEST(RoadMap, ProgressAlongRoad) {
    RoadMap g;
    g.spacing = 100;
    g.streets_x = 3;
    g.streets_y = 3;
    g.corridor_width = 10;
    const auto roads = outgoing_roads(g, {1, 1});
    const Road* east = nullptr;
    for (const auto& r : roads) if (r.heading == Heading::east) east = &r;
    ASSERT_NE(east, nullptr);
    EXPECT_DOUBLE_EQ(east->length, 100.0);
    const auto p = progress_along(g, *east, {170, 102}, 30);
    ASSERT_TRUE(p);
    EXPECT_DOUBLE_EQ(*p, 70.0);
    EXPECT_FALSE(progress_along(g, *east, {120, 100}, 30));  // not past min progress
    EXPECT_FALSE(progress_along(g, *east, {170, 130}, 30));  // off the corridor
}
