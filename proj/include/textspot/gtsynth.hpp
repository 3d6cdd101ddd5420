#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "textspot/decode.hpp"
#include "textspot/geometry.hpp"
#include "textspot/records.hpp"
#include "textspot/tensor.hpp"

namespace textspot {

struct AlphabetTooLarge : std::runtime_error {
    explicit AlphabetTooLarge(const std::string& what) : std::runtime_error(what) {}
};

struct CharQuad {
    Quad corners;   // heat-map grid coords, ring order
    Point center;   // diagonal intersection
    int label = -1; // alphabet class, -1 while unassigned
};

CharQuad make_char_quad(const Quad& corners, int label = -1);

struct CharPointGt {
    int x = 0;
    int y = 0;
    int label = 0;
};

struct GroundTruthMaps {
    Tensor region_gt;    // rank 2, values in [0,1]
    Tensor affinity_gt;  // rank 2, values in [0,1]
    std::vector<CharPointGt> char_points;
    int width = 0;
    int height = 0;
};

struct GaussianSpec {
    // Isotropic Gaussian on the canonical [-1,1]^2 square, perspective
    // warped onto each quad; sigma in canonical half-width units. Values
    // outside the warped square are not rendered.
    double sigma_ratio = 0.35;
};

// Split a word polygon into word_len character quads of equal parametric
// width along its longer edge pair. Polygons with more than 4 vertices
// are reduced to their min-area quad first. Labels stay unassigned.
std::vector<CharQuad> divide_word_polygon(const std::vector<Point>& word_poly, int word_len);

// Render region/affinity supervision. Region: warped Gaussian per char
// quad, peak 1.0 at the quad center, combined by per-pixel max. Affinity:
// same rendering on quads built between adjacent same-word characters
// (corners are the upper/lower diagonal-triangle centers of the pair).
GroundTruthMaps render_gt(const std::vector<std::vector<CharQuad>>& words, int width,
                          int height, const GaussianSpec& spec = {});
GroundTruthMaps render_gt(const std::vector<CharQuad>& word, int width, int height,
                          const GaussianSpec& spec = {});

Quad affinity_quad(const CharQuad& a, const CharQuad& b);

// Feature map that is zero except at gt char points, which carry a scaled
// one-hot of their class; decoding with identity-like params recovers
// every class with probability near 1.
Tensor oracle_features(const GroundTruthMaps& gt, const DecoderParams& params,
                       double scale = 10.0);

// Synthetic scene generation for fixtures and benchmarks.
struct SceneOptions {
    int width = 320;   // heat-map grid
    int height = 320;
    int min_words = 3;
    int max_words = 8;
    std::uint64_t seed = 1;
    double large_fraction = 0.4;    // words routed to the labeling branch
    double touching_fraction = 0.0; // small words with overlapping chars
    bool glyph_detail = true;       // sub-peaks on large characters
    double max_rotation_deg = 30.0; // small words only
    int stride = 4;
    GaussianSpec gaussian;
    double feature_scale = 10.0;
    char detail_class = '#';        // class planted at glyph-detail cells
};

struct SceneWord {
    Quad polygon;  // heat-map coords
    std::string text;
    std::vector<CharQuad> quads;
    bool large = false;
    bool touching = false;
};

struct Scene {
    GroundTruthMaps gt;
    Tensor features;  // oracle features plus glyph-detail distractors
    std::vector<SceneWord> words;
    AnnotationRecord annotation;           // image coords (stride applied)
    std::vector<GridPoint> detail_cells;   // cells carrying distractor features
};

Scene make_scene(const SceneOptions& opts, const DecoderParams& params);

// Uppercase A-Z word of the given length.
std::string random_word(std::mt19937_64& rng, int min_len, int max_len);

}  // namespace textspot
