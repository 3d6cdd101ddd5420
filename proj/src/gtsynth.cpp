#include "textspot/gtsynth.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "textspot/boxdetect.hpp"

namespace textspot {

namespace {

const Quad kCanonical = {Point{-1.0, -1.0}, Point{1.0, -1.0}, Point{1.0, 1.0},
                         Point{-1.0, 1.0}};

// Warp an isotropic Gaussian (center `offset` in canonical coords, given
// amplitude) from the canonical square onto `q`, max-combining into `map`.
// Cells whose preimage falls outside the square are left alone.
void render_quad_gaussian(Tensor& map, const Quad& q, double sigma, double amplitude,
                          Point offset) {
    Homography inv = homography_from_quads(q, kCanonical);
    const int h = static_cast<int>(map.height());
    const int w = static_cast<int>(map.width());

    double min_x = q[0].x, max_x = q[0].x, min_y = q[0].y, max_y = q[0].y;
    for (const Point& p : q) {
        min_x = std::min(min_x, p.x);
        max_x = std::max(max_x, p.x);
        min_y = std::min(min_y, p.y);
        max_y = std::max(max_y, p.y);
    }
    int x0 = std::max(0, static_cast<int>(std::floor(min_x)));
    int x1 = std::min(w - 1, static_cast<int>(std::ceil(max_x)));
    int y0 = std::max(0, static_cast<int>(std::floor(min_y)));
    int y1 = std::min(h - 1, static_cast<int>(std::ceil(max_y)));

    const double inv_two_sigma2 = 1.0 / (2.0 * sigma * sigma);
    for (int y = y0; y <= y1; ++y) {
        for (int x = x0; x <= x1; ++x) {
            Point uv = inv.apply({static_cast<double>(x), static_cast<double>(y)});
            if (std::abs(uv.x) > 1.0 || std::abs(uv.y) > 1.0) continue;
            double du = uv.x - offset.x;
            double dv = uv.y - offset.y;
            float val = static_cast<float>(amplitude * std::exp(-(du * du + dv * dv) * inv_two_sigma2));
            float& cell = map.at(y, x);
            cell = std::max(cell, val);
        }
    }
}

Point lerp(Point a, Point b, double t) { return a + t * (b - a); }

}  // namespace

CharQuad make_char_quad(const Quad& corners, int label) {
    std::vector<Point> ring(corners.begin(), corners.end());
    if (polygon_area(ring) <= 0.0) throw DegeneratePolygon("character quad has zero area");
    CharQuad q;
    q.corners = corners;
    q.center = diagonal_intersection(corners);
    q.label = label;
    return q;
}

std::vector<CharQuad> divide_word_polygon(const std::vector<Point>& word_poly, int word_len) {
    if (word_len < 1) throw std::invalid_argument("word_len must be >= 1");
    if (word_poly.size() < 3) throw DegeneratePolygon("word polygon needs >= 3 vertices");
    if (polygon_area(word_poly) <= 0.0) throw DegeneratePolygon("word polygon has zero area");

    Quad quad;
    if (word_poly.size() == 4) {
        std::copy(word_poly.begin(), word_poly.end(), quad.begin());
    } else {
        quad = min_area_rect(word_poly);
    }

    // Split along the longer opposite-edge pair so quads line up with the
    // reading direction.
    double pair_a = norm(quad[1] - quad[0]) + norm(quad[2] - quad[3]);
    double pair_b = norm(quad[2] - quad[1]) + norm(quad[3] - quad[0]);
    if (pair_b > pair_a) {
        quad = {quad[1], quad[2], quad[3], quad[0]};
    }

    std::vector<CharQuad> out;
    out.reserve(word_len);
    for (int i = 0; i < word_len; ++i) {
        double t0 = static_cast<double>(i) / word_len;
        double t1 = static_cast<double>(i + 1) / word_len;
        Quad c = {lerp(quad[0], quad[1], t0), lerp(quad[0], quad[1], t1),
                  lerp(quad[3], quad[2], t1), lerp(quad[3], quad[2], t0)};
        out.push_back(make_char_quad(c));
    }
    return out;
}

Quad affinity_quad(const CharQuad& a, const CharQuad& b) {
    auto upper = [](const CharQuad& q) {
        return Point{(q.corners[0].x + q.corners[1].x + q.center.x) / 3.0,
                     (q.corners[0].y + q.corners[1].y + q.center.y) / 3.0};
    };
    auto lower = [](const CharQuad& q) {
        return Point{(q.corners[2].x + q.corners[3].x + q.center.x) / 3.0,
                     (q.corners[2].y + q.corners[3].y + q.center.y) / 3.0};
    };
    return {upper(a), upper(b), lower(b), lower(a)};
}

GroundTruthMaps render_gt(const std::vector<std::vector<CharQuad>>& words, int width,
                          int height, const GaussianSpec& spec) {
    GroundTruthMaps gt;
    gt.width = width;
    gt.height = height;
    gt.region_gt = Tensor::zeros({static_cast<std::uint32_t>(height),
                                  static_cast<std::uint32_t>(width)});
    gt.affinity_gt = Tensor::zeros({static_cast<std::uint32_t>(height),
                                    static_cast<std::uint32_t>(width)});

    for (const auto& word : words) {
        for (const CharQuad& q : word) {
            render_quad_gaussian(gt.region_gt, q.corners, spec.sigma_ratio, 1.0, {0.0, 0.0});
            int cx = std::clamp(static_cast<int>(std::lround(q.center.x)), 0, width - 1);
            int cy = std::clamp(static_cast<int>(std::lround(q.center.y)), 0, height - 1);
            gt.char_points.push_back({cx, cy, q.label});
        }
        for (std::size_t i = 0; i + 1 < word.size(); ++i) {
            Quad aq = affinity_quad(word[i], word[i + 1]);
            render_quad_gaussian(gt.affinity_gt, aq, spec.sigma_ratio, 1.0, {0.0, 0.0});
        }
    }
    return gt;
}

GroundTruthMaps render_gt(const std::vector<CharQuad>& word, int width, int height,
                          const GaussianSpec& spec) {
    return render_gt(std::vector<std::vector<CharQuad>>{word}, width, height, spec);
}

Tensor oracle_features(const GroundTruthMaps& gt, const DecoderParams& params, double scale) {
    if (params.num_classes > params.feature_dim) {
        throw AlphabetTooLarge("oracle features need C <= F, got C=" +
                               std::to_string(params.num_classes) +
                               " F=" + std::to_string(params.feature_dim));
    }
    Tensor f = Tensor::zeros({static_cast<std::uint32_t>(gt.height),
                              static_cast<std::uint32_t>(gt.width),
                              static_cast<std::uint32_t>(params.feature_dim)});
    for (const CharPointGt& p : gt.char_points) {
        if (p.label < 0 || static_cast<std::size_t>(p.label) >= params.num_classes) {
            throw ClassOutOfRange("gt char point with class outside alphabet");
        }
        f.at(p.y, p.x, p.label) = static_cast<float>(scale);
    }
    return f;
}

namespace {

constexpr double kDetailOffset = 0.55;   // canonical position of glyph bumps
constexpr double kDetailSigma = 0.22;
constexpr double kDetailAmplitude = 0.55;

struct PlacedWord {
    SceneWord word;
    double bx0, by0, bx1, by1;  // bounding box, heat-map coords
};

bool boxes_clash(const PlacedWord& a, double x0, double y0, double x1, double y1,
                 double gap) {
    return !(x1 + gap < a.bx0 || a.bx1 + gap < x0 || y1 + gap < a.by0 || a.by1 + gap < y0);
}

std::string scene_texts_alphabet() { return default_alphabet(); }

}  // namespace

std::string random_word(std::mt19937_64& rng, int min_len, int max_len) {
    std::uniform_int_distribution<int> len_d(min_len, max_len);
    std::uniform_int_distribution<int> ch_d(0, 25);
    int n = len_d(rng);
    std::string w;
    for (int i = 0; i < n; ++i) w.push_back(static_cast<char>('A' + ch_d(rng)));
    return w;
}

Scene make_scene(const SceneOptions& opts, const DecoderParams& params) {
    std::mt19937_64 rng(opts.seed);
    std::uniform_int_distribution<int> words_d(opts.min_words, opts.max_words);
    std::uniform_real_distribution<double> unit_d(0.0, 1.0);

    const int border = 8;
    const double word_gap = 12.0;
    const int n_target = words_d(rng);

    enum class Kind { Large, Small, Touching };
    std::vector<PlacedWord> placed;

    for (int wi = 0; wi < n_target; ++wi) {
        // The first words pin one of each requested kind so every scene
        // carries mixed routing; the rest follow the configured fractions.
        Kind kind;
        if (wi == 0) {
            kind = Kind::Large;
        } else if (wi == 1) {
            kind = Kind::Small;
        } else if (wi == 2 && opts.touching_fraction > 0.0) {
            kind = Kind::Touching;
        } else {
            double u = unit_d(rng);
            if (u < opts.large_fraction) {
                kind = Kind::Large;
            } else if (u < opts.large_fraction + opts.touching_fraction) {
                kind = Kind::Touching;
            } else {
                kind = Kind::Small;
            }
        }

        for (int attempt = 0; attempt < 40; ++attempt) {
            SceneWord w;
            double bx0, by0, bx1, by1;

            if (kind == Kind::Large) {
                const int hw = 13, hh = 15 + static_cast<int>(rng() % 3);
                int max_len = std::min(6, (opts.width - 2 * border - 4) / (2 * hw));
                if (max_len < 3) break;
                w.text = random_word(rng, 3, max_len);
                int len = static_cast<int>(w.text.size());
                int ww = 2 * hw * len, wh = 2 * hh;
                if (opts.width - border - ww <= border || opts.height - border - wh <= border) break;
                std::uniform_int_distribution<int> x_d(border, opts.width - border - ww);
                std::uniform_int_distribution<int> y_d(border, opts.height - border - wh);
                double x0 = x_d(rng), y0 = y_d(rng);
                w.polygon = {Point{x0, y0}, Point{x0 + ww, y0}, Point{x0 + ww, y0 + wh},
                             Point{x0, y0 + wh}};
                w.quads = divide_word_polygon(
                    std::vector<Point>(w.polygon.begin(), w.polygon.end()), len);
                w.large = true;
                bx0 = x0; by0 = y0; bx1 = x0 + ww; by1 = y0 + wh;
            } else if (kind == Kind::Touching) {
                const int hw = 5, hh = 5, spacing = 4;
                w.text = random_word(rng, 3, 6);
                int len = static_cast<int>(w.text.size());
                int ww = 2 * hw + spacing * (len - 1), wh = 2 * hh;
                if (opts.width - border - ww <= border || opts.height - border - wh <= border) break;
                std::uniform_int_distribution<int> x_d(border, opts.width - border - ww);
                std::uniform_int_distribution<int> y_d(border, opts.height - border - wh);
                double x0 = x_d(rng), y0 = y_d(rng);
                w.polygon = {Point{x0, y0}, Point{x0 + ww, y0}, Point{x0 + ww, y0 + wh},
                             Point{x0, y0 + wh}};
                for (int i = 0; i < len; ++i) {
                    double cx = x0 + hw + spacing * i;
                    Quad q = {Point{cx - hw, y0}, Point{cx + hw, y0}, Point{cx + hw, y0 + wh},
                              Point{cx - hw, y0 + wh}};
                    w.quads.push_back(make_char_quad(q));
                }
                w.touching = true;
                bx0 = x0; by0 = y0; bx1 = x0 + ww; by1 = y0 + wh;
            } else {
                const int hw = 5, hh = 5;
                w.text = random_word(rng, 3, 8);
                int len = static_cast<int>(w.text.size());
                double theta = (2.0 * unit_d(rng) - 1.0) * opts.max_rotation_deg *
                               std::numbers::pi / 180.0;
                Point dir{std::cos(theta), std::sin(theta)};
                Point perp{-dir.y, dir.x};
                double half_len = hw * len;
                double reach = half_len + hh + 2.0;
                int lo_x = border + static_cast<int>(std::ceil(reach));
                int hi_x = opts.width - border - static_cast<int>(std::ceil(reach));
                int lo_y = border + static_cast<int>(std::ceil(reach));
                int hi_y = opts.height - border - static_cast<int>(std::ceil(reach));
                if (lo_x >= hi_x || lo_y >= hi_y) break;
                std::uniform_int_distribution<int> x_d(lo_x, hi_x);
                std::uniform_int_distribution<int> y_d(lo_y, hi_y);
                Point ctr{static_cast<double>(x_d(rng)), static_cast<double>(y_d(rng))};
                Point start = ctr - half_len * dir;
                Point end = ctr + half_len * dir;
                w.polygon = {start - (1.0 * hh) * perp, end - (1.0 * hh) * perp,
                             end + (1.0 * hh) * perp, start + (1.0 * hh) * perp};
                w.quads = divide_word_polygon(
                    std::vector<Point>(w.polygon.begin(), w.polygon.end()), len);
                bx0 = bx1 = w.polygon[0].x;
                by0 = by1 = w.polygon[0].y;
                for (const Point& p : w.polygon) {
                    bx0 = std::min(bx0, p.x); bx1 = std::max(bx1, p.x);
                    by0 = std::min(by0, p.y); by1 = std::max(by1, p.y);
                }
            }

            bool clash = false;
            for (const PlacedWord& other : placed) {
                if (boxes_clash(other, bx0, by0, bx1, by1, word_gap)) {
                    clash = true;
                    break;
                }
            }
            if (clash) continue;

            const std::string alphabet = scene_texts_alphabet();
            for (std::size_t i = 0; i < w.quads.size(); ++i) {
                w.quads[i].label = static_cast<int>(alphabet.find(w.text[i]));
            }
            placed.push_back({std::move(w), bx0, by0, bx1, by1});
            break;
        }
    }

    Scene scene;
    std::vector<std::vector<CharQuad>> all_quads;
    for (PlacedWord& pw : placed) {
        all_quads.push_back(pw.word.quads);
        scene.words.push_back(std::move(pw.word));
    }
    scene.gt = render_gt(all_quads, opts.width, opts.height, opts.gaussian);

    // Glyph-detail bumps: two sub-peaks per large character, rendered
    // after the fact so render_gt itself stays bump-free.
    if (opts.glyph_detail) {
        for (const SceneWord& w : scene.words) {
            if (!w.large) continue;
            for (const CharQuad& q : w.quads) {
                render_quad_gaussian(scene.gt.region_gt, q.corners, kDetailSigma,
                                     kDetailAmplitude, {kDetailOffset, 0.0});
                render_quad_gaussian(scene.gt.region_gt, q.corners, kDetailSigma,
                                     kDetailAmplitude, {-kDetailOffset, 0.0});
            }
        }
    }

    scene.features = oracle_features(scene.gt, params, opts.feature_scale);

    // Distractor features at the bump cells: a confident wrong class, so
    // spurious peak points survive confidence filtering.
    if (opts.glyph_detail) {
        std::size_t detail_cls = params.alphabet.find(opts.detail_class);
        if (detail_cls == std::string::npos) {
            throw ClassOutOfRange("detail class not in alphabet");
        }
        for (const SceneWord& w : scene.words) {
            if (!w.large) continue;
            for (const CharQuad& q : w.quads) {
                int cx = static_cast<int>(std::lround(q.center.x));
                int cy = static_cast<int>(std::lround(q.center.y));
                int hw = static_cast<int>(std::lround(norm(q.corners[1] - q.corners[0]) / 2.0));
                for (int side : {-1, 1}) {
                    // The bump peak sits past the main-Gaussian crossover,
                    // found by scanning the rendered row outward.
                    int best_x = -1, best_y = -1;
                    float best_v = -1.0f;
                    int from = cx + side * static_cast<int>(std::ceil(0.43 * hw));
                    int to = cx + side * (hw - 1);
                    for (int x = std::min(from, to); x <= std::max(from, to); ++x) {
                        for (int y = cy - 1; y <= cy + 1; ++y) {
                            if (!scene.gt.region_gt.in_bounds(y, x)) continue;
                            float v = scene.gt.region_gt.at(y, x);
                            if (v > best_v) {
                                best_v = v;
                                best_x = x;
                                best_y = y;
                            }
                        }
                    }
                    if (best_x < 0) continue;
                    for (std::size_t c = 0; c < params.feature_dim; ++c) {
                        scene.features.at(best_y, best_x, static_cast<int>(c)) = 0.0f;
                    }
                    scene.features.at(best_y, best_x, static_cast<int>(detail_cls)) =
                        static_cast<float>(opts.feature_scale);
                    scene.detail_cells.push_back({best_x, best_y});
                }
            }
        }
    }

    scene.annotation.image_id = "scene-" + std::to_string(opts.seed);
    for (const SceneWord& w : scene.words) {
        Quad img = map_to_image_coords(w.polygon, opts.stride);
        scene.annotation.polygons.push_back(std::vector<Point>(img.begin(), img.end()));
        scene.annotation.transcriptions.push_back(w.text);
        scene.annotation.ignore.push_back(false);
    }
    return scene;
}

}  // namespace textspot
