#include <gtest/gtest.h>

#include <fstream>
#include <functional>
#include <sstream>

#include "vgs/config.hpp"
#include "vgs/errors.hpp"

using namespace vgs;

namespace {

std::string field_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const ConfigError& e) {
        return e.field();
    }
    return "<no error>";
}

}  // namespace

TEST(Config, DefaultsAreValid) {
    const ScenarioConfig cfg = load_config(std::nullopt);
    EXPECT_EQ(cfg.range, 300.0);
    EXPECT_EQ(cfg.dt, 1.0);
    EXPECT_EQ(cfg.runs, 5u);
    EXPECT_EQ(cfg.stride, 10u);
    EXPECT_EQ(cfg.penetration, (std::vector<double>{1.0}));
    EXPECT_EQ(cfg.effective_ttl(), 300.0);
}

TEST(Config, TextParsingAndComments) {
    ScenarioConfig cfg;
    std::istringstream in("# scenario\n\nrange = 75\npenetration = 0.2, 0.4,1\nlos=manhattan_los\n"
                          "window.start = 1000\nwindow.length = 3600\nprotocol = gpcr\n");
    apply_config_text(cfg, in);
    EXPECT_EQ(cfg.range, 75.0);
    EXPECT_EQ(cfg.penetration, (std::vector<double>{0.2, 0.4, 1.0}));
    EXPECT_EQ(cfg.los, LosMode::manhattan_los);
    EXPECT_TRUE(cfg.radio().road_map);
    EXPECT_EQ(cfg.window_start, 1000.0);
    EXPECT_EQ(*cfg.window_length, 3600.0);
    EXPECT_EQ(cfg.effective_ttl(), 30.0);

    std::istringstream bad("range 75\n");
    EXPECT_THROW(apply_config_text(cfg, bad), ParseError);
}

TEST(Config, PrecedenceCliOverFileOverDefaults) {
    const auto path = std::filesystem::temp_directory_path() / "vgs_config_precedence.cfg";
    {
        std::ofstream f(path);
        f << "range = 150\nseed = 9\n";
    }
    const auto file_only = load_config(path);
    EXPECT_EQ(file_only.range, 150.0);
    EXPECT_EQ(file_only.seed, 9u);
    EXPECT_EQ(file_only.stride, 10u);
    const auto cli = load_config(path, {{"range", "75"}});
    EXPECT_EQ(cli.range, 75.0);
    EXPECT_EQ(cli.seed, 9u);
    std::filesystem::remove(path);
    EXPECT_THROW(load_config(std::filesystem::path("/nonexistent/vgs.cfg")), IoError);
}

TEST(Config, ErrorsNameTheField) {
    EXPECT_EQ(field_of([] { load_config(std::nullopt, {{"range", "-1"}}); }), "range");
    EXPECT_EQ(field_of([] { load_config(std::nullopt, {{"range", "abc"}}); }), "range");
    EXPECT_EQ(field_of([] { load_config(std::nullopt, {{"penetration", "0.5,1.2"}}); }), "penetration");
    EXPECT_EQ(field_of([] { load_config(std::nullopt, {{"penetration", "0"}}); }), "penetration");
    EXPECT_EQ(field_of([] { load_config(std::nullopt, {{"stride", "0"}}); }), "stride");
    EXPECT_EQ(field_of([] { load_config(std::nullopt, {{"window.length", "0"}}); }), "window.length");
    EXPECT_EQ(field_of([] { load_config(std::nullopt, {{"protocol", "aodv"}}); }), "protocol");
    EXPECT_EQ(field_of([] { load_config(std::nullopt, {{"gpcr_mode", "x"}}); }), "gpcr_mode");
    EXPECT_EQ(field_of([] { load_config(std::nullopt, {{"bogus", "1"}}); }), "bogus");
    EXPECT_EQ(field_of([] { load_config(std::nullopt, {{"runs", "0"}}); }), "runs");
    EXPECT_EQ(field_of([] { load_config(std::nullopt, {{"road.streets_x", "0"}}); }), "road.streets");
    EXPECT_EQ(field_of([] { load_config(std::nullopt, {{"synth.vehicles", "0"}}); }), "synth.vehicles");
    EXPECT_EQ(field_of([] { load_config(std::nullopt, {{"region", "0,0,1"}}); }), "region");
}

TEST(Config, ScenarioFromSynthAndTrace) {
    auto cfg = load_config(std::nullopt, {{"synth.vehicles", "20"}, {"synth.duration", "50"}});
    const Scenario sc = load_scenario(cfg);
    EXPECT_EQ(vehicle_ids(sc.trajectories).size(), 20u);
    EXPECT_EQ(sc.window.t_start, 0.0);
    EXPECT_EQ(sc.window.t_end, 50.0);

    const auto path = std::filesystem::temp_directory_path() / "vgs_config_trace.csv";
    {
        std::ofstream f(path);
        f << "#format,cartesian\n0,a,1,1\n1,a,2,1\n2,a,3,1\n";
    }
    auto tcfg = load_config(std::nullopt, {{"trace", path.string()}, {"region", "0,0,10,10"}});
    const Scenario ts = load_scenario(tcfg);
    EXPECT_EQ(ts.window.t_end, 3.0);
    EXPECT_EQ(ts.trajectories.size(), 1u);
    std::filesystem::remove(path);
    auto missing = load_config(std::nullopt, {{"trace", "/nonexistent/trace.csv"}});
    EXPECT_THROW(load_scenario(missing), IoError);
}
