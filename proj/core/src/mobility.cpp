#include "vgs/mobility.hpp"

#include <cmath>
#include <string>

#include "vgs/errors.hpp"
#include "vgs/rng.hpp"

namespace vgs {

void GridScenarioConfig::validate() const {
    road.validate();
    if (vehicle_count <= 0) throw ConfigError("synth.vehicles", "must be positive");
    if (!(speed_min >= 1.0 && speed_max <= 30.0 && speed_min <= speed_max)) {
        throw ConfigError("synth.speed", "speed range must lie within [1, 30] m/s with min <= max");
    }
    if (!(duration > 0.0) || !std::isfinite(duration)) throw ConfigError("synth.duration", "must be positive");
    if (!(dt > 0.0) || !std::isfinite(dt)) throw ConfigError("dt", "must be positive");
}

namespace {

constexpr int kStep[4][2] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};

bool valid_heading(const RoadMap& map, int i, int j, int h) {
    const int ni = i + kStep[h][0];
    const int nj = j + kStep[h][1];
    return ni >= 0 && nj >= 0 && ni < map.streets_x && nj < map.streets_y;
}

struct Vehicle {
    int i = 0, j = 0;  // intersection the current road starts at
    int heading = 0;
    double progress = 0.0;
    double speed = 0.0;
};

int choose_heading(const RoadMap& map, int i, int j, int arriving, Rng& rng) {
    const int reverse = (arriving + 2) % 4;
    int options[4];
    int n = 0;
    for (int h = 0; h < 4; ++h) {
        if (h != reverse && valid_heading(map, i, j, h)) options[n++] = h;
    }
    if (n == 0) return reverse;
    return options[rng.below(static_cast<std::uint64_t>(n))];
}

std::string vehicle_name(int index, int count) {
    const std::size_t width = std::to_string(count - 1).size();
    std::string digits = std::to_string(index);
    return "v" + std::string(width - digits.size(), '0') + digits;
}

}  // namespace

std::vector<Trajectory> generate_grid_scenario(const GridScenarioConfig& cfg) {
    cfg.validate();
    const RoadMap& map = cfg.road;
    Rng rng(cfg.seed);

    std::vector<Vehicle> fleet(static_cast<std::size_t>(cfg.vehicle_count));
    for (Vehicle& v : fleet) {
        v.i = static_cast<int>(rng.below(static_cast<std::uint64_t>(map.streets_x)));
        v.j = static_cast<int>(rng.below(static_cast<std::uint64_t>(map.streets_y)));
        do {
            v.heading = static_cast<int>(rng.below(4));
        } while (!valid_heading(map, v.i, v.j, v.heading));
        v.progress = rng.uniform(0.0, map.spacing);
        v.speed = rng.uniform(cfg.speed_min, cfg.speed_max);
    }

    const auto ticks = static_cast<long long>(std::floor(cfg.duration / cfg.dt + 1e-9));
    std::vector<Trajectory> out(fleet.size());
    for (std::size_t n = 0; n < fleet.size(); ++n) {
        out[n].vehicle_id = vehicle_name(static_cast<int>(n), cfg.vehicle_count);
        out[n].samples.reserve(static_cast<std::size_t>(ticks + 1));
    }

    for (long long k = 0; k <= ticks; ++k) {
        const double t = static_cast<double>(k) * cfg.dt;
        for (std::size_t n = 0; n < fleet.size(); ++n) {
            Vehicle& v = fleet[n];
            if (k > 0) {
                double remaining = v.speed * cfg.dt;
                while (v.progress + remaining >= map.spacing) {
                    remaining -= map.spacing - v.progress;
                    v.i += kStep[v.heading][0];
                    v.j += kStep[v.heading][1];
                    v.heading = choose_heading(map, v.i, v.j, v.heading, rng);
                    v.progress = 0.0;
                }
                v.progress += remaining;
            }
            const Point base = map.intersection(v.i, v.j);
            out[n].samples.push_back({t, base.x + kStep[v.heading][0] * v.progress,
                                      base.y + kStep[v.heading][1] * v.progress});
        }
    }
    return out;
}

}  // namespace vgs
