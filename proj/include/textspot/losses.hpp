#pragma once

#include <optional>
#include <string>
#include <vector>

#include "textspot/charspot.hpp"
#include "textspot/decode.hpp"
#include "textspot/gtsynth.hpp"
#include "textspot/tensor.hpp"

namespace textspot {

struct LossConfig {
    double alpha = 0.01;  // recognition weight
};

struct LossReport {
    double l_det = 0.0;
    double l_rec = 0.0;
    double l_total = 0.0;
};

// (1/(W*H)) * (sum (R - R_gt)^2 + sum (A - A_gt)^2); both maps share the
// single normalizer.
double loss_det(const Tensor& region, const Tensor& affinity, const GroundTruthMaps& gt);

// Mean cross-entropy of the decoder at the gt char points; zero when
// there are no points.
double loss_rec(const Tensor& features, const DecoderParams& params,
                const std::vector<CharPointGt>& p_gt);

LossReport loss_total(double l_det, double l_rec, const LossConfig& cfg);

// Self-labeling: spot the word crop as a single box (routed by the crop's
// shorter side), and accept the points as labels only when their count
// matches the transcription length. Rejection is a value, not an error;
// transcriptions with characters outside the alphabet are rejected too.
std::optional<std::vector<CharPointGt>> self_label(const Tensor& word_crop_region,
                                                   const std::string& transcription,
                                                   const CharSpotConfig& cfg,
                                                   const std::string& alphabet);

}  // namespace textspot
