#pragma once

#include <array>
#include <stdexcept>
#include <vector>

namespace textspot {

struct Point {
    double x = 0.0;
    double y = 0.0;
};

Point operator+(Point a, Point b);
Point operator-(Point a, Point b);
Point operator*(double s, Point p);

double dot(Point a, Point b);
double cross(Point a, Point b);
double norm(Point p);

// Four corners in clockwise order starting top-left (image coordinates,
// y grows downward).
using Quad = std::array<Point, 4>;

struct DegeneratePolygon : std::runtime_error {
    explicit DegeneratePolygon(const std::string& what) : std::runtime_error(what) {}
};

// Signed area is positive for clockwise rings in image coordinates.
double signed_area(const std::vector<Point>& poly);
double polygon_area(const std::vector<Point>& poly);

std::vector<Point> convex_hull(std::vector<Point> pts);

// Smallest-area enclosing rectangle of the convex hull, corners clockwise
// from the one nearest the hull's top-left.
Quad min_area_rect(const std::vector<Point>& pts);

// Intersection of convex polygons (Sutherland-Hodgman). Result may be empty.
std::vector<Point> clip_convex(const std::vector<Point>& subject,
                               const std::vector<Point>& clip);

// IoU of two polygons after taking their convex hulls. Zero if either
// hull is degenerate.
double polygon_iou(const std::vector<Point>& a, const std::vector<Point>& b);

Point centroid(const std::vector<Point>& poly);

// Intersection of the two diagonals of a quad. Projectively invariant,
// so it tracks the warped center of a perspective-mapped square.
Point diagonal_intersection(const Quad& q);

// 3x3 projective map taking the unit square corners `src` onto `dst`.
struct Homography {
    std::array<double, 9> m;

    Point apply(Point p) const;
};

Homography homography_from_quads(const Quad& src, const Quad& dst);

}  // namespace textspot
