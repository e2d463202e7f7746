#include "vgs/road_map.hpp"

#include <algorithm>
#include <cmath>

#include "vgs/errors.hpp"

namespace vgs {

void RoadMap::validate() const {
    if (streets_x < 2 || streets_y < 2) {
        throw ConfigError("road.streets", "grid needs at least 2 streets in each direction");
    }
    if (!(spacing > 0.0) || !std::isfinite(spacing)) {
        throw ConfigError("road.spacing", "must be positive");
    }
    if (!(corridor_width >= 0.0) || corridor_width >= spacing) {
        throw ConfigError("road.corridor_width", "must be in [0, spacing)");
    }
}

Region RoadMap::bounds() const {
    return Region(origin.x, origin.y, origin.x + spacing * (streets_x - 1),
                  origin.y + spacing * (streets_y - 1));
}

Point RoadMap::intersection(int i, int j) const {
    return {origin.x + spacing * i, origin.y + spacing * j};
}

std::array<int, 2> RoadMap::nearest_intersection(Point p) const {
    const int i = static_cast<int>(std::lround((p.x - origin.x) / spacing));
    const int j = static_cast<int>(std::lround((p.y - origin.y) / spacing));
    return {std::clamp(i, 0, streets_x - 1), std::clamp(j, 0, streets_y - 1)};
}

bool RoadMap::line_of_sight(Point a, Point b) const {
    const double half = corridor_width * 0.5;
    const auto cell_range = [&](double lo, double hi, double o, int streets) {
        int first = static_cast<int>(std::floor((lo - o) / spacing));
        int last = static_cast<int>(std::floor((hi - o) / spacing));
        first = std::max(first, 0);
        last = std::min(last, streets - 2);
        return std::array<int, 2>{first, last};
    };
    const auto xs = cell_range(std::min(a.x, b.x), std::max(a.x, b.x), origin.x, streets_x);
    const auto ys = cell_range(std::min(a.y, b.y), std::max(a.y, b.y), origin.y, streets_y);
    for (int i = xs[0]; i <= xs[1]; ++i) {
        const double bx0 = origin.x + spacing * i + half;
        const double bx1 = origin.x + spacing * (i + 1) - half;
        for (int j = ys[0]; j <= ys[1]; ++j) {
            const double by0 = origin.y + spacing * j + half;
            const double by1 = origin.y + spacing * (j + 1) - half;
            if (segment_crosses_open_rect(a, b, bx0, by0, bx1, by1)) {
                return false;
            }
        }
    }
    return true;
}

namespace {

constexpr std::array<std::array<int, 2>, 4> kSteps{{{1, 0}, {0, 1}, {-1, 0}, {0, -1}}};

}  // namespace

std::vector<Road> outgoing_roads(const RoadMap& map, std::array<int, 2> at) {
    std::vector<Road> roads;
    for (int h = 0; h < 4; ++h) {
        const int ni = at[0] + kSteps[h][0];
        const int nj = at[1] + kSteps[h][1];
        if (ni < 0 || nj < 0 || ni >= map.streets_x || nj >= map.streets_y) continue;
        roads.push_back(Road{at, {ni, nj}, static_cast<Heading>(h), map.spacing});
    }
    return roads;
}

std::optional<double> progress_along(const RoadMap& map, const Road& road, Point p,
                                     double min_progress) {
    const Point start = map.intersection(road.from[0], road.from[1]);
    const auto& step = kSteps[static_cast<int>(road.heading)];
    const double rx = p.x - start.x;
    const double ry = p.y - start.y;
    const double along = rx * step[0] + ry * step[1];
    const double across = std::abs(rx * step[1] - ry * step[0]);
    if (across > map.corridor_width * 0.5 || along <= min_progress || along > road.length) {
        return std::nullopt;
    }
    return along;
}

std::optional<std::array<std::array<int, 2>, 2>> street_segment_at(const RoadMap& map, Point p) {
    const double half = map.corridor_width * 0.5;
    const auto [ni, nj] = map.nearest_intersection(p);
    const Point c = map.intersection(ni, nj);
    const Region b = map.bounds();
    if (p.x < b.x_min() - half || p.x > b.x_max() + half || p.y < b.y_min() - half ||
        p.y > b.y_max() + half) {
        return std::nullopt;
    }
    const bool on_vertical = std::abs(p.x - c.x) <= half;
    const bool on_horizontal = std::abs(p.y - c.y) <= half;
    if (on_vertical == on_horizontal) {
        return std::nullopt;  // intersection square, or inside a block
    }
    if (on_vertical) {
        int j = static_cast<int>(std::floor((p.y - map.origin.y) / map.spacing));
        j = std::clamp(j, 0, map.streets_y - 2);
        return std::array<std::array<int, 2>, 2>{{{ni, j}, {ni, j + 1}}};
    }
    int i = static_cast<int>(std::floor((p.x - map.origin.x) / map.spacing));
    i = std::clamp(i, 0, map.streets_x - 2);
    return std::array<std::array<int, 2>, 2>{{{i, nj}, {i + 1, nj}}};
}

}  // namespace vgs
