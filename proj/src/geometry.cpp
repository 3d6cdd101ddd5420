#include "textspot/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace textspot {

Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
Point operator*(double s, Point p) { return {s * p.x, s * p.y}; }

double dot(Point a, Point b) { return a.x * b.x + a.y * b.y; }
double cross(Point a, Point b) { return a.x * b.y - a.y * b.x; }
double norm(Point p) { return std::sqrt(dot(p, p)); }

double signed_area(const std::vector<Point>& poly) {
    if (poly.size() < 3) return 0.0;
    double s = 0.0;
    for (size_t i = 0; i < poly.size(); ++i) {
        const Point& a = poly[i];
        const Point& b = poly[(i + 1) % poly.size()];
        s += cross(a, b);
    }
    // Shoelace sign flips in image coordinates (y down): clockwise rings
    // come out positive with this orientation.
    return 0.5 * s;
}

double polygon_area(const std::vector<Point>& poly) {
    return std::abs(signed_area(poly));
}

std::vector<Point> convex_hull(std::vector<Point> pts) {
    std::sort(pts.begin(), pts.end(), [](Point a, Point b) {
        return a.x < b.x || (a.x == b.x && a.y < b.y);
    });
    pts.erase(std::unique(pts.begin(), pts.end(),
                          [](Point a, Point b) { return a.x == b.x && a.y == b.y; }),
              pts.end());
    if (pts.size() < 3) return pts;

    std::vector<Point> hull(2 * pts.size());
    size_t k = 0;
    for (size_t i = 0; i < pts.size(); ++i) {
        while (k >= 2 && cross(hull[k - 1] - hull[k - 2], pts[i] - hull[k - 2]) <= 0) --k;
        hull[k++] = pts[i];
    }
    for (size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
        while (k >= t && cross(hull[k - 1] - hull[k - 2], pts[i] - hull[k - 2]) <= 0) --k;
        hull[k++] = pts[i];
    }
    hull.resize(k - 1);
    return hull;
}

namespace {

// Clockwise ring starting at the corner closest to the polygon's top-left.
Quad order_clockwise(std::array<Point, 4> c) {
    Point ctr{(c[0].x + c[1].x + c[2].x + c[3].x) / 4.0,
              (c[0].y + c[1].y + c[2].y + c[3].y) / 4.0};
    std::sort(c.begin(), c.end(), [&](Point a, Point b) {
        return std::atan2(a.y - ctr.y, a.x - ctr.x) < std::atan2(b.y - ctr.y, b.x - ctr.x);
    });
    // atan2 order is counter-clockwise on screen (y down = clockwise in math
    // coords); reversing gives a clockwise ring in image coordinates.
    std::reverse(c.begin(), c.end());
    size_t best = 0;
    double best_key = std::numeric_limits<double>::max();
    for (size_t i = 0; i < 4; ++i) {
        double key = c[i].x + c[i].y;
        if (key < best_key) {
            best_key = key;
            best = i;
        }
    }
    Quad out;
    for (size_t i = 0; i < 4; ++i) out[i] = c[(best + i) % 4];
    return out;
}

}  // namespace

Quad min_area_rect(const std::vector<Point>& pts) {
    std::vector<Point> hull = convex_hull(pts);
    if (hull.empty()) throw DegeneratePolygon("min_area_rect: no points");
    if (hull.size() == 1) {
        Point p = hull[0];
        return {p, p, p, p};
    }
    if (hull.size() == 2) {
        return order_clockwise({hull[0], hull[1], hull[1], hull[0]});
    }

    double best_area = std::numeric_limits<double>::max();
    std::array<Point, 4> best{};
    for (size_t i = 0; i < hull.size(); ++i) {
        Point edge = hull[(i + 1) % hull.size()] - hull[i];
        double len = norm(edge);
        if (len == 0.0) continue;
        Point u{edge.x / len, edge.y / len};
        Point v{-u.y, u.x};

        double min_u = std::numeric_limits<double>::max(), max_u = -min_u;
        double min_v = std::numeric_limits<double>::max(), max_v = -min_v;
        for (const Point& p : hull) {
            double pu = dot(p, u);
            double pv = dot(p, v);
            min_u = std::min(min_u, pu);
            max_u = std::max(max_u, pu);
            min_v = std::min(min_v, pv);
            max_v = std::max(max_v, pv);
        }
        double area = (max_u - min_u) * (max_v - min_v);
        if (area < best_area) {
            best_area = area;
            best = {Point{min_u * u.x + min_v * v.x, min_u * u.y + min_v * v.y},
                    Point{max_u * u.x + min_v * v.x, max_u * u.y + min_v * v.y},
                    Point{max_u * u.x + max_v * v.x, max_u * u.y + max_v * v.y},
                    Point{min_u * u.x + max_v * v.x, min_u * u.y + max_v * v.y}};
        }
    }
    return order_clockwise(best);
}

std::vector<Point> clip_convex(const std::vector<Point>& subject,
                               const std::vector<Point>& clip) {
    if (subject.empty() || clip.size() < 3) return {};

    // Inside test must match the clip ring's winding.
    double orient = signed_area(clip) >= 0 ? 1.0 : -1.0;
    std::vector<Point> out = subject;
    for (size_t i = 0; i < clip.size() && !out.empty(); ++i) {
        Point a = clip[i];
        Point b = clip[(i + 1) % clip.size()];
        std::vector<Point> in;
        in.swap(out);
        for (size_t j = 0; j < in.size(); ++j) {
            Point p = in[j];
            Point q = in[(j + 1) % in.size()];
            double sp = orient * cross(b - a, p - a);
            double sq = orient * cross(b - a, q - a);
            bool p_in = sp >= 0.0;
            bool q_in = sq >= 0.0;
            if (p_in) out.push_back(p);
            if (p_in != q_in) {
                double t = sp / (sp - sq);
                out.push_back(p + t * (q - p));
            }
        }
    }
    return out;
}

double polygon_iou(const std::vector<Point>& a, const std::vector<Point>& b) {
    std::vector<Point> ha = convex_hull(a);
    std::vector<Point> hb = convex_hull(b);
    if (ha.size() < 3 || hb.size() < 3) return 0.0;
    double area_a = polygon_area(ha);
    double area_b = polygon_area(hb);
    if (area_a <= 0.0 || area_b <= 0.0) return 0.0;
    double inter = polygon_area(clip_convex(ha, hb));
    double uni = area_a + area_b - inter;
    return uni > 0.0 ? inter / uni : 0.0;
}

Point centroid(const std::vector<Point>& poly) {
    if (poly.empty()) throw DegeneratePolygon("centroid: empty polygon");
    Point c{0.0, 0.0};
    for (const Point& p : poly) c = c + p;
    return {c.x / static_cast<double>(poly.size()), c.y / static_cast<double>(poly.size())};
}

Point diagonal_intersection(const Quad& q) {
    Point r = q[2] - q[0];
    Point s = q[3] - q[1];
    double denom = cross(r, s);
    if (std::abs(denom) < 1e-12) throw DegeneratePolygon("diagonal_intersection: parallel diagonals");
    double t = cross(q[1] - q[0], s) / denom;
    return q[0] + t * r;
}

Point Homography::apply(Point p) const {
    double w = m[6] * p.x + m[7] * p.y + m[8];
    if (std::abs(w) < 1e-12) throw DegeneratePolygon("homography: point at infinity");
    return {(m[0] * p.x + m[1] * p.y + m[2]) / w,
            (m[3] * p.x + m[4] * p.y + m[5]) / w};
}

Homography homography_from_quads(const Quad& src, const Quad& dst) {
    // Direct linear transform: 8 equations in the 8 unknowns of a 3x3
    // matrix with m[8] fixed to 1. Gaussian elimination with partial
    // pivoting is plenty for 8x8.
    double a[8][9] = {};
    for (int i = 0; i < 4; ++i) {
        double x = src[i].x, y = src[i].y;
        double u = dst[i].x, v = dst[i].y;
        double* r0 = a[2 * i];
        double* r1 = a[2 * i + 1];
        r0[0] = x; r0[1] = y; r0[2] = 1; r0[6] = -u * x; r0[7] = -u * y; r0[8] = u;
        r1[3] = x; r1[4] = y; r1[5] = 1; r1[6] = -v * x; r1[7] = -v * y; r1[8] = v;
    }
    for (int col = 0; col < 8; ++col) {
        int pivot = col;
        for (int r = col + 1; r < 8; ++r) {
            if (std::abs(a[r][col]) > std::abs(a[pivot][col])) pivot = r;
        }
        if (std::abs(a[pivot][col]) < 1e-12) {
            throw DegeneratePolygon("homography_from_quads: degenerate correspondence");
        }
        std::swap(a[col], a[pivot]);
        for (int r = 0; r < 8; ++r) {
            if (r == col) continue;
            double f = a[r][col] / a[col][col];
            for (int c = col; c < 9; ++c) a[r][c] -= f * a[col][c];
        }
    }
    Homography h{};
    for (int i = 0; i < 8; ++i) h.m[i] = a[i][8] / a[i][i];
    h.m[8] = 1.0;
    return h;
}

}  // namespace textspot
