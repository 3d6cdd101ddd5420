#include "textspot/pipeline.hpp"

#include <chrono>

namespace textspot {

namespace {

void check_unit(double v, const char* name) {
    if (v < 0.0 || v > 1.0) {
        throw ConfigError(std::string(name) + " must lie in [0,1], got " + std::to_string(v));
    }
}

double ms_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
        .count();
}

}  // namespace

void SpotConfig::validate() const {
    check_unit(box.box_threshold, "box threshold");
    check_unit(spot.spot_threshold, "spot threshold");
    check_unit(spot.char_threshold, "char threshold");
    check_unit(confidence_threshold, "confidence threshold");
    if (box.min_area < 0) throw ConfigError("min area must be >= 0");
    if (box.expand_short < 1.0) throw ConfigError("short-side expansion must be >= 1");
    if (box.expand_long < 0.0) throw ConfigError("long-side expansion must be >= 0");
    if (spot.size_threshold < 0.0) throw ConfigError("size threshold must be >= 0");
    if (stride < 1) throw ConfigError("stride must be >= 1");
    if (long_side <= 0) throw ConfigError("long side must be > 0");
}

std::vector<TextBox> spot(const Tensor& region, const Tensor& affinity,
                          const Tensor& features, const DecoderParams& params,
                          const SpotConfig& cfg, StageTimes* times) {
    cfg.validate();
    if (features.rank() != 3 || features.dims()[0] != region.dims()[0] ||
        features.dims()[1] != region.dims()[1]) {
        throw DimMismatch("feature map not aligned with heat maps");
    }
    DecoderParams run_params = params;
    run_params.confidence_threshold = cfg.confidence_threshold;

    using clock = std::chrono::steady_clock;
    auto t0 = clock::now();

    std::vector<TextBox> boxes = detect_boxes(region, affinity, cfg.box);
    auto t1 = clock::now();

    std::vector<std::vector<CharPoint>> per_box = spot_hybrid(region, boxes, cfg.spot);
    auto t2 = clock::now();

    std::vector<CharProbMatrix> probs(boxes.size());
    for (std::size_t i = 0; i < boxes.size(); ++i) {
        probs[i] = decode_points(features, per_box[i], run_params);
    }
    auto t3 = clock::now();

    std::vector<TextBox> words = assemble_words(std::move(boxes), per_box, probs, run_params);
    for (TextBox& w : words) w.polygon = map_to_image_coords(w.polygon, cfg.stride);

    if (times) {
        times->detect_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
        times->charspot_ms = std::chrono::duration<double, std::milli>(t2 - t1).count();
        times->decode_ms = std::chrono::duration<double, std::milli>(t3 - t2).count();
        times->assemble_ms = ms_since(t3);
        times->total_ms = ms_since(t0);
    }
    return words;
}

}  // namespace textspot
