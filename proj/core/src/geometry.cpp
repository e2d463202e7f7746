#include "vgs/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "vgs/errors.hpp"

namespace vgs {

double distance_sq(Point a, Point b) {
    const double dx = a.x - b.x;
    const double dy = a.y - b.y;
    return dx * dx + dy * dy;
}

double distance(Point a, Point b) { return std::sqrt(distance_sq(a, b)); }

Region::Region(double x_min, double y_min, double x_max, double y_max)
    : x_min_(x_min), y_min_(y_min), x_max_(x_max), y_max_(y_max) {
    if (!(std::isfinite(x_min) && std::isfinite(y_min) && std::isfinite(x_max) &&
          std::isfinite(y_max))) {
        throw DomainError("region bounds must be finite");
    }
    if (!(x_min < x_max) || !(y_min < y_max)) {
        throw DomainError("region requires x_min < x_max and y_min < y_max");
    }
}

bool Region::contains(Point p) const {
    return p.x >= x_min_ && p.x <= x_max_ && p.y >= y_min_ && p.y <= y_max_;
}

namespace {

double cross(Point o, Point a, Point b) {
    return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

}  // namespace

std::vector<Point> convex_hull(std::span<const Point> points) {
    std::vector<Point> pts(points.begin(), points.end());
    std::sort(pts.begin(), pts.end(), [](Point a, Point b) {
        return a.x < b.x || (a.x == b.x && a.y < b.y);
    });
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    if (pts.size() < 3) {
        return pts;
    }

    std::vector<Point> hull(2 * pts.size());
    std::size_t k = 0;
    for (const Point& p : pts) {
        while (k >= 2 && cross(hull[k - 2], hull[k - 1], p) <= 0) --k;
        hull[k++] = p;
    }
    for (std::size_t i = pts.size() - 1, lower = k + 1; i-- > 0;) {
        while (k >= lower && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
        hull[k++] = pts[i];
    }
    hull.resize(k - 1);
    return hull;
}

double polygon_area(std::span<const Point> polygon) {
    if (polygon.size() < 3) {
        return 0.0;
    }
    double twice = 0.0;
    for (std::size_t i = 0, j = polygon.size() - 1; i < polygon.size(); j = i++) {
        twice += polygon[j].x * polygon[i].y - polygon[i].x * polygon[j].y;
    }
    return std::abs(twice) * 0.5;
}

namespace {

// Open parameter interval where the coordinate lies strictly between lo and hi.
bool open_slab(double origin, double delta, double lo, double hi, double& t_lo, double& t_hi) {
    if (delta == 0.0) {
        if (origin > lo && origin < hi) {
            t_lo = -std::numeric_limits<double>::infinity();
            t_hi = std::numeric_limits<double>::infinity();
            return true;
        }
        return false;
    }
    const double a = (lo - origin) / delta;
    const double b = (hi - origin) / delta;
    t_lo = std::min(a, b);
    t_hi = std::max(a, b);
    return true;
}

}  // namespace

bool segment_crosses_open_rect(Point a, Point b, double x0, double y0, double x1, double y1) {
    if (!(x0 < x1) || !(y0 < y1)) {
        return false;
    }
    double xl, xh, yl, yh;
    if (!open_slab(a.x, b.x - a.x, x0, x1, xl, xh)) return false;
    if (!open_slab(a.y, b.y - a.y, y0, y1, yl, yh)) return false;
    const double lo = std::max(xl, yl);
    const double hi = std::min(xh, yh);
    return lo < hi && lo < 1.0 && hi > 0.0;
}

}  // namespace vgs
