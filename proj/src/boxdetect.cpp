#include "textspot/boxdetect.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <tuple>
#include <numeric>

namespace textspot {

namespace {

// Union-find over flat cell indices for the classic two-pass labeling.
struct DisjointSet {
    std::vector<int> parent;

    explicit DisjointSet(std::size_t n) : parent(n) {
        std::iota(parent.begin(), parent.end(), 0);
    }
    int find(int a) {
        while (parent[a] != a) {
            parent[a] = parent[parent[a]];
            a = parent[a];
        }
        return a;
    }
    void unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
};

}  // namespace

std::vector<Component> connected_components(const Mask& mask) {
    const int h = mask.height;
    const int w = mask.width;
    std::vector<int> label(static_cast<std::size_t>(h) * w, -1);
    DisjointSet ds(static_cast<std::size_t>(h) * w);

    // First pass: label from already-visited neighbours (the four cells
    // above/left in raster order), merging when several labels meet.
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            if (!mask.at(y, x)) continue;
            int idx = y * w + x;
            label[idx] = idx;
            const int dy[4] = {-1, -1, -1, 0};
            const int dx[4] = {-1, 0, 1, -1};
            for (int k = 0; k < 4; ++k) {
                int ny = y + dy[k], nx = x + dx[k];
                if (ny < 0 || nx < 0 || nx >= w) continue;
                int nidx = ny * w + nx;
                if (label[nidx] >= 0) ds.unite(idx, nidx);
            }
        }
    }

    // Second pass: gather pixels per root, raster order keeps pixel lists
    // sorted row-major.
    std::vector<Component> comps;
    std::vector<int> root_to_comp(static_cast<std::size_t>(h) * w, -1);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            int idx = y * w + x;
            if (label[idx] < 0) continue;
            int root = ds.find(idx);
            if (root_to_comp[root] < 0) {
                root_to_comp[root] = static_cast<int>(comps.size());
                comps.push_back({});
            }
            comps[root_to_comp[root]].pixels.push_back({x, y});
        }
    }

    for (Component& c : comps) {
        double sx = 0.0, sy = 0.0;
        for (GridPoint p : c.pixels) {
            sx += p.x;
            sy += p.y;
        }
        c.centroid = {sx / static_cast<double>(c.pixels.size()),
                      sy / static_cast<double>(c.pixels.size())};
    }

    auto order_key = [](const Component& c) {
        int min_y = std::numeric_limits<int>::max();
        int min_x = std::numeric_limits<int>::max();
        for (GridPoint p : c.pixels) {
            min_y = std::min(min_y, p.y);
            min_x = std::min(min_x, p.x);
        }
        // (min y, min x) can tie across components; the first row-major
        // pixel is unique, making the order total.
        return std::tuple<int, int, int>{min_y, min_x, c.pixels.front().x};
    };
    std::stable_sort(comps.begin(), comps.end(), [&](const Component& a, const Component& b) {
        return order_key(a) < order_key(b);
    });
    for (std::size_t i = 0; i < comps.size(); ++i) comps[i].id = static_cast<int>(i);
    return comps;
}

namespace {

Quad expand_rect(const Quad& rect, const BoxConfig& cfg, int w, int h) {
    Point ctr = {(rect[0].x + rect[1].x + rect[2].x + rect[3].x) / 4.0,
                 (rect[0].y + rect[1].y + rect[2].y + rect[3].y) / 4.0};
    Point e01 = rect[1] - rect[0];
    Point e03 = rect[3] - rect[0];
    double len01 = norm(e01);
    double len03 = norm(e03);

    // Principal axes of the rectangle; u spans the long side.
    Point u = len01 >= len03 ? e01 : e03;
    Point v = len01 >= len03 ? e03 : e01;
    double long_len = std::max(len01, len03);
    double short_len = std::min(len01, len03);
    double ulen = norm(u);
    double vlen = norm(v);
    Point un = ulen > 0 ? Point{u.x / ulen, u.y / ulen} : Point{1.0, 0.0};
    Point vn = vlen > 0 ? Point{v.x / vlen, v.y / vlen} : Point{0.0, 1.0};

    double new_short = short_len * cfg.expand_short;
    double new_long = long_len + cfg.expand_long * (new_short - short_len);

    Quad out;
    const double su[4] = {-0.5, 0.5, 0.5, -0.5};
    const double sv[4] = {-0.5, -0.5, 0.5, 0.5};
    for (int i = 0; i < 4; ++i) {
        Point p = ctr + (su[i] * new_long) * un + (sv[i] * new_short) * vn;
        p.x = std::clamp(p.x, 0.0, static_cast<double>(w - 1));
        p.y = std::clamp(p.y, 0.0, static_cast<double>(h - 1));
        out[i] = p;
    }
    return out;
}

}  // namespace

std::vector<TextBox> detect_boxes(const Tensor& region, const Tensor& affinity,
                                  const BoxConfig& cfg) {
    if (region.dims() != affinity.dims()) {
        throw DimMismatch("region and affinity maps differ in shape");
    }
    const int h = static_cast<int>(region.height());
    const int w = static_cast<int>(region.width());

    Mask mask{h, w, std::vector<std::uint8_t>(static_cast<std::size_t>(h) * w, 0)};
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            double s = std::clamp(static_cast<double>(region.at(y, x)) + affinity.at(y, x), 0.0, 1.0);
            if (s >= cfg.box_threshold) mask.cells[static_cast<std::size_t>(y) * w + x] = 1;
        }
    }

    std::vector<TextBox> boxes;
    for (const Component& c : connected_components(mask)) {
        if (static_cast<int>(c.pixels.size()) < cfg.min_area) continue;
        // Cells enter the fit as unit squares (their four corners), so the
        // rectangle measures pixel area rather than center-to-center span.
        std::vector<Point> pts;
        pts.reserve(c.pixels.size() * 4);
        double score_sum = 0.0;
        for (GridPoint p : c.pixels) {
            double px = p.x, py = p.y;
            pts.push_back({px - 0.5, py - 0.5});
            pts.push_back({px + 0.5, py - 0.5});
            pts.push_back({px + 0.5, py + 0.5});
            pts.push_back({px - 0.5, py + 0.5});
            score_sum += region.at(p.y, p.x);
        }
        Quad rect;
        try {
            rect = min_area_rect(pts);
        } catch (const DegeneratePolygon&) {
            continue;
        }
        rect = expand_rect(rect, cfg, w, h);

        double s01 = norm(rect[1] - rect[0]);
        double s03 = norm(rect[3] - rect[0]);
        TextBox box;
        box.polygon = rect;
        box.pixels = c.pixels;
        box.shorter_side = std::min(s01, s03);
        box.longer_side = std::max(s01, s03);
        box.mean_region_score = score_sum / static_cast<double>(c.pixels.size());
        if (box.longer_side <= 0.0) continue;
        boxes.push_back(std::move(box));
    }
    return boxes;
}

std::vector<Point> map_to_image_coords(const std::vector<Point>& poly, int stride) {
    std::vector<Point> out;
    out.reserve(poly.size());
    double shift = stride / 2.0;
    for (Point p : poly) out.push_back({p.x * stride + shift, p.y * stride + shift});
    return out;
}

Quad map_to_image_coords(const Quad& poly, int stride) {
    Quad out;
    double shift = stride / 2.0;
    for (int i = 0; i < 4; ++i) out[i] = {poly[i].x * stride + shift, poly[i].y * stride + shift};
    return out;
}

bool point_in_quad(const Quad& q, Point p) {
    std::vector<Point> ring(q.begin(), q.end());
    double orient = signed_area(ring) >= 0 ? 1.0 : -1.0;
    for (int i = 0; i < 4; ++i) {
        Point a = q[i];
        Point b = q[(i + 1) % 4];
        if (orient * cross(b - a, p - a) < -1e-9) return false;
    }
    return true;
}

}  // namespace textspot
