#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "textspot/boxdetect.hpp"
#include "textspot/charspot.hpp"
#include "textspot/decode.hpp"
#include "textspot/tensor.hpp"

namespace textspot {

struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

struct SpotConfig {
    BoxConfig box;
    CharSpotConfig spot;
    double confidence_threshold = 0.3;
    int stride = 4;
    int long_side = 1280;  // image long side the maps were computed at

    void validate() const;
};

struct StageTimes {
    double detect_ms = 0.0;
    double charspot_ms = 0.0;
    double decode_ms = 0.0;
    double assemble_ms = 0.0;
    double total_ms = 0.0;
};

// Full pass: detect boxes on R+A, spot character points per box, decode
// them, assemble transcriptions, and map polygons to image coordinates.
// Box order follows detect_boxes (component min y, then min x). Optional
// timing output covers compute only, no I/O.
std::vector<TextBox> spot(const Tensor& region, const Tensor& affinity,
                          const Tensor& features, const DecoderParams& params,
                          const SpotConfig& cfg, StageTimes* times = nullptr);

}  // namespace textspot
