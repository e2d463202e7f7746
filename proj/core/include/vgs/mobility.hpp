#pragma once

#include <cstdint>
#include <vector>

#include "vgs/road_map.hpp"
#include "vgs/trace.hpp"

namespace vgs {

// Random-turn mobility on a Manhattan grid. Every vehicle drives the whole
// duration at its own constant speed and picks a uniformly random onward
// street at each intersection (U-turns only at dead ends).
struct GridScenarioConfig {
    RoadMap road{};
    int vehicle_count = 150;
    double speed_min = 5.0;  // m/s
    double speed_max = 15.0;
    double duration = 600.0;  // seconds
    double dt = 1.0;
    std::uint64_t seed = 1;

    void validate() const;
};

// Pure function of the config: the same config yields identical output.
std::vector<Trajectory> generate_grid_scenario(const GridScenarioConfig& cfg);

}  // namespace vgs
