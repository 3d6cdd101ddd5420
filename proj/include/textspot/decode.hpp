#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "textspot/boxdetect.hpp"
#include "textspot/charspot.hpp"
#include "textspot/tensor.hpp"

namespace textspot {

struct ChannelMismatch : std::runtime_error {
    explicit ChannelMismatch(const std::string& what) : std::runtime_error(what) {}
};
struct PointOutOfBounds : std::runtime_error {
    explicit PointOutOfBounds(const std::string& what) : std::runtime_error(what) {}
};
struct ClassOutOfRange : std::runtime_error {
    explicit ClassOutOfRange(const std::string& what) : std::runtime_error(what) {}
};

// 94 printable Latin characters (ASCII 33..126).
std::string default_alphabet();

struct DecoderParams {
    std::size_t feature_dim = 0;                 // F
    std::size_t num_classes = 0;                 // C
    std::vector<float> weights;                  // F x C, row-major
    std::vector<float> biases;                   // C
    std::string alphabet;                        // class index -> character
    double confidence_threshold = 0.3;

    void validate() const;
    float weight(std::size_t f, std::size_t c) const { return weights[f * num_classes + c]; }
};

// Identity-like params: w[i][i] = 1 for i < C, zero elsewhere, zero bias.
// Decoding a scaled one-hot feature then recovers its class.
DecoderParams identity_params(std::size_t feature_dim, std::string alphabet,
                              double confidence_threshold = 0.3);

// Row i = softmax(f[y_i, x_i] . w - b), one row per point.
struct CharProbMatrix {
    std::size_t classes = 0;
    std::vector<std::vector<float>> rows;
};

CharProbMatrix decode_points(const Tensor& features, const std::vector<CharPoint>& points,
                             const DecoderParams& params);

// Same affine+softmax at every cell; returns {H, W, C}. Memory/compute
// baseline and reference for the sparse path.
Tensor dense_decode(const Tensor& features, const DecoderParams& params);

struct DecodeCost {
    std::uint64_t macs = 0;
    std::uint64_t output_bytes = 0;
};

DecodeCost decode_cost_dense(std::uint64_t w, std::uint64_t h, std::uint64_t f, std::uint64_t c);
DecodeCost decode_cost_points(std::uint64_t n, std::uint64_t f, std::uint64_t c);

// Per box: drop points below the confidence threshold, order survivors by
// x (ties by y), transcribe argmax classes. Boxes left without any
// confident point are removed.
std::vector<TextBox> assemble_words(std::vector<TextBox> boxes,
                                    const std::vector<std::vector<CharPoint>>& points_per_box,
                                    const std::vector<CharProbMatrix>& probs_per_box,
                                    const DecoderParams& params);

// DecoderParams round-trip: <prefix>.w.cfts (rank-2 F x C),
// <prefix>.b.cfts (rank-2 1 x C), <prefix>.alphabet.txt.
void write_decoder_params(const std::string& prefix, const DecoderParams& params);
DecoderParams read_decoder_params(const std::string& prefix,
                                  double confidence_threshold = 0.3);

}  // namespace textspot
