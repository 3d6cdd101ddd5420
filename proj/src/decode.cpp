#include "textspot/decode.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>

#include "textspot/tensor_io.hpp"

namespace textspot {

std::string default_alphabet() {
    std::string a;
    for (char c = 33; c <= 126; ++c) a.push_back(c);
    return a;
}

void DecoderParams::validate() const {
    if (num_classes == 0 || feature_dim == 0) {
        throw ChannelMismatch("decoder params need F >= 1 and C >= 1");
    }
    if (weights.size() != feature_dim * num_classes) {
        throw ChannelMismatch("weight matrix is not F x C");
    }
    if (biases.size() != num_classes) throw ChannelMismatch("bias vector is not C long");
    if (alphabet.size() != num_classes) {
        throw ClassOutOfRange("alphabet length differs from C");
    }
    for (std::size_t i = 0; i < alphabet.size(); ++i) {
        if (alphabet.find(alphabet[i], i + 1) != std::string::npos) {
            throw ClassOutOfRange("alphabet entries must be unique");
        }
    }
    if (confidence_threshold < 0.0 || confidence_threshold > 1.0) {
        throw ClassOutOfRange("confidence threshold outside [0,1]");
    }
}

DecoderParams identity_params(std::size_t feature_dim, std::string alphabet,
                              double confidence_threshold) {
    DecoderParams p;
    p.feature_dim = feature_dim;
    p.num_classes = alphabet.size();
    p.alphabet = std::move(alphabet);
    p.confidence_threshold = confidence_threshold;
    p.weights.assign(feature_dim * p.num_classes, 0.0f);
    for (std::size_t i = 0; i < p.num_classes && i < feature_dim; ++i) {
        p.weights[i * p.num_classes + i] = 1.0f;
    }
    p.biases.assign(p.num_classes, 0.0f);
    p.validate();
    return p;
}

namespace {

// softmax(f . w - b) with max subtraction.
void decode_one(std::span<const float> feat, const DecoderParams& params,
                std::vector<float>& row) {
    const std::size_t c_n = params.num_classes;
    row.assign(c_n, 0.0f);
    std::vector<double> logits(c_n);
    for (std::size_t c = 0; c < c_n; ++c) logits[c] = -static_cast<double>(params.biases[c]);
    for (std::size_t f = 0; f < params.feature_dim; ++f) {
        double fv = feat[f];
        if (fv == 0.0) continue;
        const float* wrow = params.weights.data() + f * c_n;
        for (std::size_t c = 0; c < c_n; ++c) logits[c] += fv * wrow[c];
    }
    double mx = -std::numeric_limits<double>::infinity();
    for (double v : logits) mx = std::max(mx, v);
    double sum = 0.0;
    for (std::size_t c = 0; c < c_n; ++c) {
        logits[c] = std::exp(logits[c] - mx);
        sum += logits[c];
    }
    for (std::size_t c = 0; c < c_n; ++c) row[c] = static_cast<float>(logits[c] / sum);
}

}  // namespace

CharProbMatrix decode_points(const Tensor& features, const std::vector<CharPoint>& points,
                             const DecoderParams& params) {
    params.validate();
    if (features.channels() != params.feature_dim) {
        throw ChannelMismatch("feature map has " + std::to_string(features.channels()) +
                              " channels, decoder expects " + std::to_string(params.feature_dim));
    }
    CharProbMatrix out;
    out.classes = params.num_classes;
    out.rows.resize(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) {
        const CharPoint& p = points[i];
        if (!features.in_bounds(p.y, p.x)) {
            throw PointOutOfBounds("point (" + std::to_string(p.x) + "," + std::to_string(p.y) +
                                   ") outside feature map");
        }
        decode_one(features.feature(p.y, p.x), params, out.rows[i]);
    }
    return out;
}

Tensor dense_decode(const Tensor& features, const DecoderParams& params) {
    params.validate();
    if (features.channels() != params.feature_dim) {
        throw ChannelMismatch("feature map has " + std::to_string(features.channels()) +
                              " channels, decoder expects " + std::to_string(params.feature_dim));
    }
    const int h = static_cast<int>(features.height());
    const int w = static_cast<int>(features.width());
    Tensor out = Tensor::zeros({static_cast<std::uint32_t>(h), static_cast<std::uint32_t>(w),
                                static_cast<std::uint32_t>(params.num_classes)});
    std::vector<float> row;
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            decode_one(features.feature(y, x), params, row);
            std::copy(row.begin(), row.end(), out.feature(y, x).begin());
        }
    }
    return out;
}

DecodeCost decode_cost_dense(std::uint64_t w, std::uint64_t h, std::uint64_t f, std::uint64_t c) {
    return {w * h * f * c, w * h * c * 4};
}

DecodeCost decode_cost_points(std::uint64_t n, std::uint64_t f, std::uint64_t c) {
    return {n * f * c, n * c * 4};
}

std::vector<TextBox> assemble_words(std::vector<TextBox> boxes,
                                    const std::vector<std::vector<CharPoint>>& points_per_box,
                                    const std::vector<CharProbMatrix>& probs_per_box,
                                    const DecoderParams& params) {
    if (points_per_box.size() != boxes.size() || probs_per_box.size() != boxes.size()) {
        throw DimMismatch("assemble_words: per-box lists misaligned with boxes");
    }
    std::vector<TextBox> out;
    for (std::size_t b = 0; b < boxes.size(); ++b) {
        const auto& pts = points_per_box[b];
        const auto& probs = probs_per_box[b];
        if (probs.rows.size() != pts.size()) {
            throw DimMismatch("assemble_words: probability rows misaligned with points");
        }

        struct Entry {
            CharPoint pt;
            std::vector<float> row;
            std::size_t cls;
        };
        std::vector<Entry> kept;
        for (std::size_t i = 0; i < pts.size(); ++i) {
            const auto& row = probs.rows[i];
            std::size_t cls = static_cast<std::size_t>(
                std::max_element(row.begin(), row.end()) - row.begin());
            if (row[cls] < params.confidence_threshold) continue;
            kept.push_back({pts[i], row, cls});
        }
        if (kept.empty()) continue;  // unreadable box, removed entirely

        std::sort(kept.begin(), kept.end(), [](const Entry& a, const Entry& b) {
            return a.pt.x < b.pt.x || (a.pt.x == b.pt.x && a.pt.y < b.pt.y);
        });

        TextBox box = boxes[b];
        box.transcription.clear();
        box.chars.clear();
        box.char_probs.clear();
        for (Entry& e : kept) {
            box.transcription.push_back(params.alphabet[e.cls]);
            box.chars.push_back(e.pt);
            box.char_probs.push_back(std::move(e.row));
        }
        out.push_back(std::move(box));
    }
    return out;
}

void write_decoder_params(const std::string& prefix, const DecoderParams& params) {
    params.validate();
    write_tensor_file(prefix + ".w.cfts",
                      Tensor({static_cast<std::uint32_t>(params.feature_dim),
                              static_cast<std::uint32_t>(params.num_classes)},
                             params.weights));
    write_tensor_file(prefix + ".b.cfts",
                      Tensor({1, static_cast<std::uint32_t>(params.num_classes)}, params.biases));
    std::ofstream out(prefix + ".alphabet.txt", std::ios::binary);
    if (!out) throw IoFailure("cannot open for writing: " + prefix + ".alphabet.txt");
    out << params.alphabet;
    if (!out) throw IoFailure("write failed: " + prefix + ".alphabet.txt");
}

DecoderParams read_decoder_params(const std::string& prefix, double confidence_threshold) {
    Tensor w = read_tensor_file(prefix + ".w.cfts");
    Tensor b = read_tensor_file(prefix + ".b.cfts");
    if (w.rank() != 2 || b.rank() != 2 || b.height() != 1) {
        throw MalformedHeader("decoder tensors must be F x C and 1 x C");
    }
    std::ifstream in(prefix + ".alphabet.txt", std::ios::binary);
    if (!in) throw IoFailure("cannot open for reading: " + prefix + ".alphabet.txt");
    std::string alphabet((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    while (!alphabet.empty() && (alphabet.back() == '\n' || alphabet.back() == '\r')) {
        alphabet.pop_back();
    }

    DecoderParams params;
    params.feature_dim = w.height();
    params.num_classes = w.width();
    params.weights = w.data();
    params.biases = b.data();
    params.alphabet = std::move(alphabet);
    params.confidence_threshold = confidence_threshold;
    params.validate();
    return params;
}

}  // namespace textspot
