#include "vgs/spatial_hash.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <unordered_map>

namespace vgs {

namespace {

struct Cell {
    std::int64_t cx;
    std::int64_t cy;
};

std::uint64_t cell_key(std::int64_t cx, std::int64_t cy) {
    return (static_cast<std::uint64_t>(cx) << 32) ^ (static_cast<std::uint64_t>(cy) & 0xffffffffULL);
}

}  // namespace

std::vector<Edge> unit_disk_pairs(std::span<const Point> points, double range) {
    std::vector<Edge> out;
    const std::size_t n = points.size();
    if (n < 2 || !(range >= 0.0)) return out;
    const double range_sq = range * range;
    const double cell = range > 0.0 ? range : 1.0;

    std::vector<Cell> cells(n);
    std::vector<Vertex> order(n);
    for (std::size_t i = 0; i < n; ++i) {
        cells[i] = {static_cast<std::int64_t>(std::floor(points[i].x / cell)),
                    static_cast<std::int64_t>(std::floor(points[i].y / cell))};
        order[i] = static_cast<Vertex>(i);
    }
    std::sort(order.begin(), order.end(), [&](Vertex a, Vertex b) {
        if (cells[a].cx != cells[b].cx) return cells[a].cx < cells[b].cx;
        if (cells[a].cy != cells[b].cy) return cells[a].cy < cells[b].cy;
        return a < b;
    });

    // key -> [begin, end) into `order`
    std::unordered_map<std::uint64_t, std::pair<std::size_t, std::size_t>> buckets;
    buckets.reserve(n);
    for (std::size_t b = 0; b < n;) {
        std::size_t e = b + 1;
        while (e < n && cells[order[e]].cx == cells[order[b]].cx &&
               cells[order[e]].cy == cells[order[b]].cy) {
            ++e;
        }
        buckets.emplace(cell_key(cells[order[b]].cx, cells[order[b]].cy), std::make_pair(b, e));
        b = e;
    }

    const auto emit = [&](Vertex a, Vertex b) {
        if (distance_sq(points[a], points[b]) <= range_sq) {
            out.emplace_back(std::min(a, b), std::max(a, b));
        }
    };
    // Each unordered cell pair is visited once: the cell itself plus four
    // "forward" neighbours.
    constexpr std::int64_t kForward[4][2] = {{1, -1}, {1, 0}, {1, 1}, {0, 1}};
    for (const auto& [key, span] : buckets) {
        const auto [b, e] = span;
        const Cell c = cells[order[b]];
        for (std::size_t i = b; i < e; ++i) {
            for (std::size_t j = i + 1; j < e; ++j) emit(order[i], order[j]);
        }
        for (const auto& d : kForward) {
            const auto it = buckets.find(cell_key(c.cx + d[0], c.cy + d[1]));
            if (it == buckets.end()) continue;
            for (std::size_t i = b; i < e; ++i) {
                for (std::size_t j = it->second.first; j < it->second.second; ++j) {
                    emit(order[i], order[j]);
                }
            }
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace vgs
