#pragma once

#include <vector>

#include "textspot/tensor.hpp"

namespace textspot {

struct TextBox;

enum class PointSource { Peak, Label };

// Ablation switch: Hybrid routes per box by shorter side, the other two
// force one branch everywhere.
enum class SpotMode { Hybrid, PeakOnly, LabelOnly };

struct CharPoint {
    int x = 0;
    int y = 0;
    PointSource source = PointSource::Peak;
    float score = 0.0f;
};

struct CharSpotConfig {
    double spot_threshold = 0.3;
    double char_threshold = 0.4;
    // Heat-map px (~4x that in image px). Boxes with shorter side above
    // this are "large" and use labeling, the rest use peaks.
    double size_threshold = 28.0;
    SpotMode mode = SpotMode::Hybrid;
};

// Local maxima of the region map: cells >= all 8 neighbours (out-of-bounds
// counts as -inf) and >= spot_threshold. 8-connected equal-value plateaus
// collapse to one point at the plateau cell nearest the plateau centroid
// (ties by (y, x)), so the returned score is the plateau value itself.
// Output sorted by (y, x).
std::vector<CharPoint> spot_peaks(const Tensor& region, const CharSpotConfig& cfg);

// Binarize the region map at char_threshold and take component centroids,
// rounded to the nearest cell; score is R at that cell. Touching blobs
// merge into one point — that is the documented failure mode of this
// branch on small text.
std::vector<CharPoint> spot_labels(const Tensor& region, const CharSpotConfig& cfg);

// Per-box character points. Large boxes (shorter side > size_threshold)
// take Label points, small boxes take Peak points; a point claimed by two
// boxes of the same branch goes to the one with higher mean region score.
std::vector<std::vector<CharPoint>> spot_hybrid(const Tensor& region,
                                                const std::vector<TextBox>& boxes,
                                                const CharSpotConfig& cfg);

}  // namespace textspot
