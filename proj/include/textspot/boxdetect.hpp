#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "textspot/charspot.hpp"
#include "textspot/geometry.hpp"
#include "textspot/tensor.hpp"

namespace textspot {

struct Mask {
    int height = 0;
    int width = 0;
    std::vector<std::uint8_t> cells;  // row-major, nonzero = foreground

    bool at(int y, int x) const {
        return cells[static_cast<std::size_t>(y) * width + x] != 0;
    }
};

struct Component {
    int id = 0;
    std::vector<GridPoint> pixels;  // sorted row-major
    Point centroid;
};

// 8-connected partition of the foreground. Components ordered by
// (min y, min x) over their pixels — ties broken by the first row-major
// pixel, which is unique — and ids reassigned to match.
std::vector<Component> connected_components(const Mask& mask);

struct BoxConfig {
    double box_threshold = 0.35;
    int min_area = 10;
    // Rendered supervision is a Gaussian, so the thresholded blob sits
    // well inside the word it marks. Fitted rectangles are grown about
    // their center to compensate: short side times expand_short, long
    // side padded by expand_long times the short-side growth.
    double expand_short = 1.97;
    double expand_long = 0.9;
};

struct TextBox {
    Quad polygon;                   // heat-map coords, clamped to map bounds
    std::vector<GridPoint> pixels;  // component cells the box came from
    double shorter_side = 0.0;
    double longer_side = 0.0;
    double mean_region_score = 0.0;
    std::vector<CharPoint> chars;          // filled by spotting
    std::string transcription;             // filled by decoding
    std::vector<std::vector<float>> char_probs;  // one row per char point
};

// Threshold clamp(R + A, 0, 1) at box_threshold, link 8-connected
// components, drop those under min_area pixels, fit min-area rotated
// rectangles and grow them per BoxConfig.
std::vector<TextBox> detect_boxes(const Tensor& region, const Tensor& affinity,
                                  const BoxConfig& cfg);

// Heat-map coords to image pixels: scale by stride, shift by stride/2 to
// pixel centers.
std::vector<Point> map_to_image_coords(const std::vector<Point>& poly, int stride);
Quad map_to_image_coords(const Quad& poly, int stride);

bool point_in_quad(const Quad& q, Point p);

}  // namespace textspot
