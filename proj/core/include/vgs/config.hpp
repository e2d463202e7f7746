#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "vgs/analysis.hpp"
#include "vgs/mobility.hpp"
#include "vgs/routing.hpp"
#include "vgs/snapshot.hpp"
#include "vgs/trace.hpp"

namespace vgs {

// Everything a command needs, read from a flat `key = value` file. Blank
// lines and lines starting with '#' are ignored.
struct ScenarioConfig {
    // Trace source: a file when `trace` is set, the grid generator otherwise.
    std::optional<std::filesystem::path> trace;
    std::optional<TraceFormat> trace_format;
    GridScenarioConfig synth{};
    RoadMap road{};  // mobility grid, LOS blocks and the VADD map
    bool road_map_given = false;

    std::optional<Region> region;  // defaults to the road grid bounds
    double dt = 1.0;
    double window_start = 0.0;
    std::optional<double> window_length;  // defaults to the rest of the trace

    double range = 300.0;
    LosMode los = LosMode::unit_disk;

    std::vector<double> penetration{1.0};
    std::uint64_t seed = 1;

    std::optional<std::filesystem::path> rsu_file;
    std::optional<GeoPoint> rsu_ref;

    MetricOptions metrics{};
    std::size_t stride = 10;  // betweenness every `stride` ticks
    bool dump_snapshots = false;

    std::filesystem::path out = "vgs_out";

    // Routing.
    Protocol protocol = Protocol::vadd_baseline;
    GpcrMode gpcr_mode = GpcrMode::neighbor_table;
    TrafficConfig traffic{};
    std::optional<double> ttl;  // per-protocol default when unset
    RoutingParams routing{};
    std::size_t runs = 5;

    // Applies one setting; throws ConfigError naming `key` on bad input.
    void set(const std::string& key, const std::string& value);
    void validate() const;

    Region effective_region() const;
    RadioModel radio() const;
    double effective_ttl() const;
};

// Later entries win. File settings first, then command-line overrides.
ScenarioConfig load_config(const std::optional<std::filesystem::path>& file,
                           const std::vector<std::pair<std::string, std::string>>& overrides = {});
void apply_config_text(ScenarioConfig& cfg, std::istream& in);

// Trajectories clipped to the region and resampled on the tick grid, plus RSUs.
struct Scenario {
    std::vector<Trajectory> trajectories;
    RsuSet rsus;
    Region region;
    Window window;
    double dt = 1.0;
};

Scenario load_scenario(const ScenarioConfig& cfg);

}  // namespace vgs
