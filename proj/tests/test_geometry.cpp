#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "oracles.hpp"
#include "textspot/geometry.hpp"

using namespace textspot;

namespace {

std::vector<Point> random_quad(std::mt19937_64& rng) {
    // Angle-sorted points around a center; simple but possibly non-convex,
    // so IoU comparisons below are over hulls on both sides.
    std::uniform_real_distribution<double> radius(2.0, 6.0);
    std::uniform_real_distribution<double> center(-5.0, 5.0);
    double cx = center(rng), cy = center(rng);
    std::uniform_real_distribution<double> jitter(0.0, 1.5);
    std::vector<Point> pts;
    for (int k = 0; k < 4; ++k) {
        double ang = k * 1.5707963267948966 + jitter(rng);
        double r = radius(rng);
        pts.push_back({cx + r * std::cos(ang), cy + r * std::sin(ang)});
    }
    return pts;
}

}  // namespace

TEST_CASE("signed area is positive for clockwise rings in image coordinates") {
    // y grows downward, so (0,0)->(2,0)->(2,1)->(0,1) is clockwise on screen.
    std::vector<Point> cw{{0, 0}, {2, 0}, {2, 1}, {0, 1}};
    CHECK(signed_area(cw) == doctest::Approx(2.0));
    std::vector<Point> ccw(cw.rbegin(), cw.rend());
    CHECK(signed_area(ccw) == doctest::Approx(-2.0));
    CHECK(polygon_area(ccw) == doctest::Approx(2.0));
}

TEST_CASE("convex hull drops interior and collinear points") {
    std::vector<Point> pts{{0, 0}, {4, 0}, {4, 4}, {0, 4}, {2, 2}, {2, 0}, {0, 2}};
    auto hull = convex_hull(pts);
    CHECK(hull.size() == 4);
    CHECK(polygon_area(hull) == doctest::Approx(16.0));
}

TEST_CASE("min_area_rect recovers a rotated rectangle from its corners") {
    const double ang = 0.6;
    const double c = std::cos(ang), s = std::sin(ang);
    std::vector<Point> pts;
    for (Point p : std::vector<Point>{{-3, -1}, {3, -1}, {3, 1}, {-3, 1}})
        pts.push_back({p.x * c - p.y * s, p.x * s + p.y * c});
    Quad rect = min_area_rect(pts);
    CHECK(polygon_area({rect.begin(), rect.end()}) == doctest::Approx(12.0).epsilon(1e-9));
    // every input corner lies on the rectangle boundary
    for (Point p : pts) {
        double best = 1e9;
        for (int i = 0; i < 4; ++i) best = std::min(best, norm(rect[i] - p));
        CHECK(best == doctest::Approx(0.0).epsilon(1e-9));
    }
}

TEST_CASE("min_area_rect beats the axis-aligned bounding box on a diamond") {
    std::vector<Point> diamond{{0, -2}, {2, 0}, {0, 2}, {-2, 0}};
    Quad rect = min_area_rect(diamond);
    CHECK(polygon_area({rect.begin(), rect.end()}) == doctest::Approx(8.0).epsilon(1e-9));
}

TEST_CASE("clip_convex computes the intersection of overlapping squares") {
    std::vector<Point> a{{0, 0}, {2, 0}, {2, 2}, {0, 2}};
    std::vector<Point> b{{1, 1}, {3, 1}, {3, 3}, {1, 3}};
    auto inter = clip_convex(a, b);
    CHECK(polygon_area(inter) == doctest::Approx(1.0));
    std::vector<Point> far{{10, 10}, {11, 10}, {11, 11}, {10, 11}};
    CHECK(clip_convex(a, far).empty());
}

TEST_CASE("polygon_iou matches dense sampling on random convex quads") {
    std::mt19937_64 rng(2024);
    for (int trial = 0; trial < 40; ++trial) {
        auto a = random_quad(rng);
        auto b = random_quad(rng);
        double fast = polygon_iou(a, b);
        double slow = oracle::sampled_iou(a, b);
        CHECK(fast == doctest::Approx(slow).epsilon(0.02));
    }
}

TEST_CASE("polygon_iou is symmetric and exactly one on identical polygons") {
    std::vector<Point> a{{0, 0}, {4, 0}, {4, 2}, {0, 2}};
    std::vector<Point> b{{2, 1}, {6, 1}, {6, 3}, {2, 3}};
    CHECK(polygon_iou(a, a) == doctest::Approx(1.0));
    CHECK(polygon_iou(a, b) == doctest::Approx(polygon_iou(b, a)));
    CHECK(polygon_iou(a, b) == doctest::Approx(2.0 / (8.0 + 8.0 - 2.0)));
}

TEST_CASE("degenerate polygons yield zero IoU rather than an exception") {
    std::vector<Point> line{{0, 0}, {1, 0}, {2, 0}, {3, 0}};
    std::vector<Point> box{{0, 0}, {1, 0}, {1, 1}, {0, 1}};
    CHECK(polygon_iou(line, box) == 0.0);
}

TEST_CASE("diagonal intersection of a square is its center") {
    Quad q{{{0, 0}, {2, 0}, {2, 2}, {0, 2}}};
    Point c = diagonal_intersection(q);
    CHECK(c.x == doctest::Approx(1.0));
    CHECK(c.y == doctest::Approx(1.0));
}

TEST_CASE("homography maps source corners onto destination corners") {
    Quad src{{{-1, -1}, {1, -1}, {1, 1}, {-1, 1}}};
    Quad dst{{{10, 5}, {42, 8}, {40, 30}, {12, 27}}};
    Homography h = homography_from_quads(src, dst);
    for (int i = 0; i < 4; ++i) {
        Point p = h.apply(src[i]);
        CHECK(p.x == doctest::Approx(dst[i].x).epsilon(1e-9));
        CHECK(p.y == doctest::Approx(dst[i].y).epsilon(1e-9));
    }
}

TEST_CASE("diagonal intersection commutes with projective warps") {
    // the warped center of the canonical square is the diagonal
    // intersection of the warped quad, not the vertex average
    Quad src{{{-1, -1}, {1, -1}, {1, 1}, {-1, 1}}};
    Quad dst{{{3, 2}, {20, 6}, {17, 19}, {1, 12}}};
    Homography h = homography_from_quads(src, dst);
    Point mapped_center = h.apply({0, 0});
    Point diag = diagonal_intersection(dst);
    CHECK(mapped_center.x == doctest::Approx(diag.x).epsilon(1e-9));
    CHECK(mapped_center.y == doctest::Approx(diag.y).epsilon(1e-9));
    Point avg = centroid({dst.begin(), dst.end()});
    CHECK(std::abs(avg.x - diag.x) + std::abs(avg.y - diag.y) > 0.1);
}

TEST_CASE("homography round-trips interior points through its inverse pair") {
    Quad src{{{-1, -1}, {1, -1}, {1, 1}, {-1, 1}}};
    Quad dst{{{5, 1}, {25, 4}, {23, 18}, {6, 15}}};
    Homography fwd = homography_from_quads(src, dst);
    Homography rev = homography_from_quads(dst, src);
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int i = 0; i < 25; ++i) {
        Point p{u(rng), u(rng)};
        Point back = rev.apply(fwd.apply(p));
        CHECK(back.x == doctest::Approx(p.x).epsilon(1e-9));
        CHECK(back.y == doctest::Approx(p.y).epsilon(1e-9));
    }
}
