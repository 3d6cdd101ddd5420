#include "textspot/charspot.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "textspot/boxdetect.hpp"

namespace textspot {

namespace {

bool is_peak_cell(const Tensor& r, int y, int x) {
    float v = r.at(y, x);
    for (int dy = -1; dy <= 1; ++dy) {
        for (int dx = -1; dx <= 1; ++dx) {
            if (dy == 0 && dx == 0) continue;
            int ny = y + dy, nx = x + dx;
            if (!r.in_bounds(ny, nx)) continue;  // outside counts as -inf
            if (r.at(ny, nx) > v) return false;
        }
    }
    return true;
}

void sort_points(std::vector<CharPoint>& pts) {
    std::sort(pts.begin(), pts.end(), [](const CharPoint& a, const CharPoint& b) {
        return a.y < b.y || (a.y == b.y && a.x < b.x);
    });
}

}  // namespace

std::vector<CharPoint> spot_peaks(const Tensor& region, const CharSpotConfig& cfg) {
    const int h = static_cast<int>(region.height());
    const int w = static_cast<int>(region.width());

    Mask peaks{h, w, std::vector<std::uint8_t>(static_cast<std::size_t>(h) * w, 0)};
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            if (region.at(y, x) >= cfg.spot_threshold && is_peak_cell(region, y, x)) {
                peaks.cells[static_cast<std::size_t>(y) * w + x] = 1;
            }
        }
    }

    // Adjacent peak cells necessarily share a value (a cell next to a
    // strictly larger one is no maximum), so components of the peak mask
    // are exactly the equal-value plateaus.
    std::vector<CharPoint> out;
    for (const Component& c : connected_components(peaks)) {
        GridPoint best = c.pixels.front();
        double best_d = std::numeric_limits<double>::max();
        for (GridPoint p : c.pixels) {
            double dx = p.x - c.centroid.x;
            double dy = p.y - c.centroid.y;
            double d = dx * dx + dy * dy;
            if (d < best_d - 1e-12) {
                best_d = d;
                best = p;
            }
        }
        out.push_back({best.x, best.y, PointSource::Peak, region.at(best.y, best.x)});
    }
    sort_points(out);
    return out;
}

std::vector<CharPoint> spot_labels(const Tensor& region, const CharSpotConfig& cfg) {
    const int h = static_cast<int>(region.height());
    const int w = static_cast<int>(region.width());

    Mask mask{h, w, std::vector<std::uint8_t>(static_cast<std::size_t>(h) * w, 0)};
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            if (region.at(y, x) >= cfg.char_threshold) {
                mask.cells[static_cast<std::size_t>(y) * w + x] = 1;
            }
        }
    }

    std::vector<CharPoint> out;
    for (const Component& c : connected_components(mask)) {
        int cx = static_cast<int>(std::lround(c.centroid.x));
        int cy = static_cast<int>(std::lround(c.centroid.y));
        cx = std::clamp(cx, 0, w - 1);
        cy = std::clamp(cy, 0, h - 1);
        out.push_back({cx, cy, PointSource::Label, region.at(cy, cx)});
    }
    sort_points(out);
    return out;
}

std::vector<std::vector<CharPoint>> spot_hybrid(const Tensor& region,
                                                const std::vector<TextBox>& boxes,
                                                const CharSpotConfig& cfg) {
    std::vector<CharPoint> peak_pts = spot_peaks(region, cfg);
    std::vector<CharPoint> label_pts = spot_labels(region, cfg);

    auto wants_labels = [&](const TextBox& b) {
        switch (cfg.mode) {
            case SpotMode::PeakOnly: return false;
            case SpotMode::LabelOnly: return true;
            case SpotMode::Hybrid: break;
        }
        return b.shorter_side > cfg.size_threshold;
    };

    // A point inside two same-branch boxes goes to the higher-scoring box.
    std::vector<std::vector<CharPoint>> per_box(boxes.size());
    auto assign = [&](const std::vector<CharPoint>& pts, bool label_branch) {
        for (const CharPoint& p : pts) {
            int best = -1;
            for (std::size_t i = 0; i < boxes.size(); ++i) {
                if (wants_labels(boxes[i]) != label_branch) continue;
                if (!point_in_quad(boxes[i].polygon,
                                   {static_cast<double>(p.x), static_cast<double>(p.y)})) {
                    continue;
                }
                if (best < 0 || boxes[i].mean_region_score > boxes[best].mean_region_score) {
                    best = static_cast<int>(i);
                }
            }
            if (best >= 0) per_box[best].push_back(p);
        }
    };
    assign(peak_pts, false);
    assign(label_pts, true);

    for (auto& pts : per_box) sort_points(pts);
    return per_box;
}

}  // namespace textspot
