#pragma once

#include <span>
#include <vector>

#include "vgs/geometry.hpp"
#include "vgs/graph.hpp"

namespace vgs {

// All index pairs (i < j) with distance(points[i], points[j]) <= range,
// sorted. Uses a uniform grid with cell size `range`, so only the 3x3 block
// of cells around each point is examined.
std::vector<Edge> unit_disk_pairs(std::span<const Point> points, double range);

}  // namespace vgs
