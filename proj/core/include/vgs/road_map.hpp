#pragma once

#include <array>
#include <optional>
#include <vector>

#include "vgs/geometry.hpp"

namespace vgs {

// Manhattan street grid: `streets_x` vertical streets at origin.x + i*spacing
// and `streets_y` horizontal streets at origin.y + j*spacing. Each street is a
// corridor of `corridor_width` meters; the open rectangles between corridors
// are building blocks that stop radio line of sight.
struct RoadMap {
    Point origin{};
    double spacing = 200.0;
    int streets_x = 11;
    int streets_y = 11;
    double corridor_width = 20.0;

    // Throws ConfigError on infeasible geometry.
    void validate() const;

    Region bounds() const;
    Point intersection(int i, int j) const;

    // Closest grid intersection (i, j), clamped to the grid.
    std::array<int, 2> nearest_intersection(Point p) const;

    // False when the segment passes through the interior of any block.
    bool line_of_sight(Point a, Point b) const;
};

enum class Heading { east, north, west, south };

// A street segment leaving intersection `from` in direction `heading`.
struct Road {
    std::array<int, 2> from{};
    std::array<int, 2> to{};
    Heading heading = Heading::east;
    double length = 0.0;
};

// Roads leaving intersection (i, j), in Heading order, skipping grid edges.
std::vector<Road> outgoing_roads(const RoadMap& map, std::array<int, 2> at);

// Distance travelled from the road's start along its direction, when `p`
// lies inside the road corridor strictly past `min_progress` and no further
// than the road's length; nullopt otherwise.
std::optional<double> progress_along(const RoadMap& map, const Road& road, Point p,
                                     double min_progress);

// The street segment `p` sits on when it is inside a corridor and not in an
// intersection square, returned as the two end intersections.
std::optional<std::array<std::array<int, 2>, 2>> street_segment_at(const RoadMap& map, Point p);

}  // namespace vgs
