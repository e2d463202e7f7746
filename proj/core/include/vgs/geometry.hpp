#pragma once

#include <span>
#include <vector>

namespace vgs {

struct Point {
    double x = 0.0;
    double y = 0.0;

    friend bool operator==(const Point&, const Point&) = default;
};

double distance(Point a, Point b);
double distance_sq(Point a, Point b);

// Axis-aligned rectangle in meters. Construction validates x_min < x_max and
// y_min < y_max.
class Region {
public:
    Region(double x_min, double y_min, double x_max, double y_max);

    double x_min() const { return x_min_; }
    double y_min() const { return y_min_; }
    double x_max() const { return x_max_; }
    double y_max() const { return y_max_; }
    double width() const { return x_max_ - x_min_; }
    double height() const { return y_max_ - y_min_; }
    double area() const { return width() * height(); }

    // Boundary counts as inside.
    bool contains(Point p) const;

    friend bool operator==(const Region&, const Region&) = default;

private:
    double x_min_, y_min_, x_max_, y_max_;
};

// Andrew's monotone chain. Returns the hull counter-clockwise without
// collinear points; degenerate inputs give fewer than 3 vertices.
std::vector<Point> convex_hull(std::span<const Point> points);

// Absolute shoelace area of a simple polygon.
double polygon_area(std::span<const Point> polygon);

// True when some point of the closed segment [a, b] lies strictly inside the
// open rectangle (x0, x1) x (y0, y1).
bool segment_crosses_open_rect(Point a, Point b, double x0, double y0, double x1, double y1);

}  // namespace vgs
