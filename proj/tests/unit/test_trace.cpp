#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <set>
#include <sstream>

#include "vgs/errors.hpp"
#include "vgs/rng.hpp"
#include "vgs/trace.hpp"

using namespace vgs;

namespace {

std::vector<Trajectory> parse(const std::string& text) {
    std::istringstream in(text);
    return parse_trace(in);
}

}  // namespace

TEST(ParseTrace, CartesianRows) {
    const auto t = parse("0,a,0,0\n1,a,5,0\n");
    ASSERT_EQ(t.size(), 1u);
    EXPECT_EQ(t[0].vehicle_id, "a");
    ASSERT_EQ(t[0].samples.size(), 2u);
    EXPECT_EQ(t[0].samples[1], (Sample{1, 5, 0}));
}

TEST(ParseTrace, OutOfOrderTimestampsNameTheVehicle) {
    try {
        parse("1,a,0,0\n0,a,1,1\n");
        FAIL() << "expected ValidationError";
    } catch (const ValidationError& e) {
        EXPECT_NE(std::string(e.what()).find("'a'"), std::string::npos);
    }
}

TEST(ParseTrace, MalformedRowCarriesLineNumber) {
    try {
        parse("#format,cartesian\n0,a,0,0\n1,a,zz,0\n");
        FAIL() << "expected ParseError";
    } catch (const ParseError& e) {
        EXPECT_EQ(e.line(), 3u);
    }
    EXPECT_THROW(parse("0,a,0\n"), ParseError);
    EXPECT_THROW(parse("#format,polar\n"), ParseError);
}

TEST(ParseTrace, ManyVehiclesKeepFirstAppearanceOrder) {
    std::ostringstream text;
    for (int t = 0; t < 3; ++t)
        for (int v = 703; v >= 0; --v) text << t << ",veh" << v << ',' << v << ",0\n";
    const auto trajs = parse(text.str());
    ASSERT_EQ(trajs.size(), 704u);
    EXPECT_EQ(trajs.front().vehicle_id, "veh703");
    for (const auto& tr : trajs) EXPECT_EQ(tr.samples.size(), 3u);
}

TEST(ParseTrace, GpsRowsAreProjected) {
    const auto t = parse("#format,gps\n#ref,0,0\n0,a,0,0\n1,a,0,0.01\n");
    ASSERT_EQ(t.size(), 1u);
    EXPECT_NEAR(t[0].samples[1].x, 1111.95, 0.01);
    EXPECT_DOUBLE_EQ(t[0].samples[1].y, 0.0);
    EXPECT_THROW(parse("#format,gps\n0,a,0,0\n"), ParseError);
    std::istringstream cart("0,a,0,0\n");
    EXPECT_NO_THROW(parse_trace(cart, TraceFormat::cartesian));
    std::istringstream wrong("#format,gps\n#ref,0,0\n0,a,0,0\n");
    EXPECT_THROW(parse_trace(wrong, TraceFormat::cartesian), ParseError);
}

TEST(ProjectGps, IdentityAndFormula) {
    const GeoPoint ref{31.2, 121.4};
    const Point o = project_gps(ref.lat, ref.lon, ref);
    EXPECT_EQ(o.x, 0.0);
    EXPECT_EQ(o.y, 0.0);
    const double k = kEarthRadius * std::numbers::pi / 180.0;
    const Point p = project_gps(0.0, 0.01, GeoPoint{0, 0});
    EXPECT_NEAR(p.x, k * 0.01, 1e-9);
    EXPECT_NEAR(p.x, 1111.95, 0.01);
    const Point q = project_gps(ref.lat + 0.01, ref.lon, ref);
    EXPECT_NEAR(q.y, 1111.95, 0.01);
    EXPECT_EQ(q.x, 0.0);
    EXPECT_THROW(project_gps(91, 0, ref), DomainError);
    EXPECT_THROW(project_gps(0, 181, ref), DomainError);
}

TEST(ProjectGps, LinearInOffsets) {
    const GeoPoint ref{34.05, -118.25};
    Rng rng(3);
    for (int i = 0; i < 100; ++i) {
        const double dlat = rng.uniform(-0.02, 0.02), dlon = rng.uniform(-0.02, 0.02);
        const Point a = project_gps(ref.lat + dlat, ref.lon + dlon, ref);
        const Point b = project_gps(ref.lat + 2 * dlat, ref.lon + 2 * dlon, ref);
        EXPECT_NEAR(b.x, 2 * a.x, 1e-6);
        EXPECT_NEAR(b.y, 2 * a.y, 1e-6);
    }
}

TEST(ClipAndResample, InterpolatesMidpoint) {
    const std::vector<Trajectory> in{{"a", {{0, 0, 0}, {2, 2, 0}}}};
    const auto out = clip_and_resample(in, Region(-10, -10, 10, 10), 1.0);
    ASSERT_EQ(out.size(), 1u);
    ASSERT_EQ(out[0].samples.size(), 3u);
    EXPECT_EQ(out[0].samples[1], (Sample{1, 1, 0}));
}

TEST(ClipAndResample, DropsOutsideAndCountsTicks) {
    const std::vector<Trajectory> in{{"out", {{0, 100, 100}, {10, 101, 100}}},
                                     {"still", {{0, 1, 1}, {10, 1, 1}}}};
    const auto out = clip_and_resample(in, Region(0, 0, 10, 10), 1.0);
    ASSERT_EQ(out.size(), 1u);
    EXPECT_EQ(out[0].vehicle_id, "still");
    EXPECT_EQ(out[0].samples.size(), 11u);
}

TEST(ClipAndResample, ReentrySplitsIntoSegmentsWithSameId) {
    const std::vector<Trajectory> in{{"a", {{0, 5, 5}, {2, 15, 5}, {4, 5, 5}}}};
    const auto out = clip_and_resample(in, Region(0, 0, 10, 10), 1.0);
    ASSERT_EQ(out.size(), 2u);
    EXPECT_EQ(out[0].vehicle_id, "a");
    EXPECT_EQ(out[1].vehicle_id, "a");
    EXPECT_EQ(out[0].samples.back().t, 1.0);
    EXPECT_EQ(out[1].samples.front().t, 3.0);
}

TEST(ClipAndResample, PropertyUniformTicksInsideRegion) {
    Rng rng(17);
    const Region region(0, 0, 500, 500);
    std::vector<Trajectory> in;
    for (int v = 0; v < 40; ++v) {
        Trajectory tr{"v" + std::to_string(v), {}};
        double t = rng.uniform(0, 5);
        for (int s = 0; s < 30; ++s) {
            tr.samples.push_back({t, rng.uniform(-100, 600), rng.uniform(-100, 600)});
            t += rng.uniform(0.3, 4.0);
        }
        in.push_back(tr);
    }
    const double dt = 0.5;
    for (const auto& tr : clip_and_resample(in, region, dt)) {
        ASSERT_FALSE(tr.samples.empty());
        for (std::size_t i = 0; i < tr.samples.size(); ++i) {
            const auto& s = tr.samples[i];
            EXPECT_TRUE(region.contains({s.x, s.y}));
            EXPECT_NEAR(std::remainder(s.t, dt), 0.0, 1e-9);
            if (i) EXPECT_NEAR(s.t - tr.samples[i - 1].t, dt, 1e-9);
        }
    }
}

TEST(WriteTrace, RoundTripsExactly) {
    Rng rng(2);
    std::vector<Trajectory> in;
    for (int v = 0; v < 5; ++v) {
        Trajectory tr{"id" + std::to_string(v), {}};
        for (int s = 0; s < 8; ++s) tr.samples.push_back({s * 0.1 + v, rng.uniform(-1e4, 1e4), rng.unit() / 3});
        in.push_back(tr);
    }
    std::stringstream io;
    write_trace(io, in);
    const auto back = parse_trace(io);
    ASSERT_EQ(back.size(), in.size());
    for (std::size_t i = 0; i < in.size(); ++i) EXPECT_EQ(back[i], in[i]);
}

TEST(Penetration, CountsAndNesting) {
    std::vector<std::string> ids;
    for (int i = 0; i < 100; ++i) ids.push_back("v" + std::to_string(i));
    EXPECT_EQ(sample_penetration(ids, 1.0, 4).selected.size(), 100u);
    EXPECT_EQ(sample_penetration(ids, 0.05, 4).selected.size(), 5u);
    EXPECT_THROW(sample_penetration(ids, 0.0, 4), DomainError);
    EXPECT_THROW(sample_penetration(ids, 1.5, 4), DomainError);
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto small = sample_penetration(ids, 0.2, seed);
        const auto large = sample_penetration(ids, 0.4, seed);
        for (const auto& id : small.selected) EXPECT_TRUE(large.contains(id));
    }
}

TEST(Penetration, IndependentOfInputOrder) {
    std::vector<std::string> ids{"c", "a", "b", "e", "d"};
    auto shuffled = ids;
    std::reverse(shuffled.begin(), shuffled.end());
    EXPECT_EQ(sample_penetration(ids, 0.6, 9).selected, sample_penetration(shuffled, 0.6, 9).selected);
}

TEST(LoadRsus, CountsFiltersAndErrors) {
    const Region region(0, 0, 1000, 1000);
    std::ostringstream text;
    text << "#coords,xy\n";
    for (int i = 0; i < 427; ++i) text << "ap" << i << ',' << i * 2 << ',' << 500 << '\n';
    text << "far,5000,5000\n";
    std::istringstream in(text.str());
    EXPECT_EQ(load_rsus(in, region).size(), 427u);

    std::istringstream empty("");
    EXPECT_TRUE(load_rsus(empty, region).empty());

    std::istringstream bad("#coords,gps\n#ref,0,0\nx,200,0\n");
    EXPECT_THROW(load_rsus(bad, region), DomainError);

    std::istringstream malformed("#coords,xy\nx,1\n");
    EXPECT_THROW(load_rsus(malformed, region), ParseError);

    std::istringstream dup("a,1,1\na,2,2\n");
    EXPECT_THROW(load_rsus(dup, region), ValidationError);

    std::istringstream gps("#coords,gps\nr,0.001,0.001\n");
    const auto set = load_rsus(gps, region, GeoPoint{0, 0});
    ASSERT_EQ(set.size(), 1u);
    EXPECT_NEAR(set.units[0].position.y, 111.195, 0.001);
}
