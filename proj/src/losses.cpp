#include "textspot/losses.hpp"

#include <algorithm>
#include <cmath>

namespace textspot {

double loss_det(const Tensor& region, const Tensor& affinity, const GroundTruthMaps& gt) {
    if (region.dims() != gt.region_gt.dims() || affinity.dims() != gt.affinity_gt.dims() ||
        region.dims() != affinity.dims()) {
        throw DimMismatch("loss_det: prediction and gt maps differ in shape");
    }
    double sum = 0.0;
    const auto& r = region.data();
    const auto& rg = gt.region_gt.data();
    const auto& a = affinity.data();
    const auto& ag = gt.affinity_gt.data();
    for (std::size_t i = 0; i < r.size(); ++i) {
        double dr = static_cast<double>(r[i]) - rg[i];
        double da = static_cast<double>(a[i]) - ag[i];
        sum += dr * dr + da * da;
    }
    return sum / static_cast<double>(region.height() * region.width());
}

double loss_rec(const Tensor& features, const DecoderParams& params,
                const std::vector<CharPointGt>& p_gt) {
    if (p_gt.empty()) return 0.0;
    params.validate();
    if (features.rank() != 3 || features.dims()[2] != params.feature_dim) {
        throw ChannelMismatch("loss_rec: feature channels do not match the decoder");
    }
    const int h = features.height();
    const int w = features.width();
    // Cross-entropy in double end to end; the float rows decode_points
    // yields would cost ~1e-7 here.
    double sum = 0.0;
    std::vector<double> logits(params.num_classes);
    for (const CharPointGt& p : p_gt) {
        if (p.label < 0 || static_cast<std::size_t>(p.label) >= params.num_classes) {
            throw ClassOutOfRange("gt class " + std::to_string(p.label) + " outside alphabet");
        }
        if (p.x < 0 || p.x >= w || p.y < 0 || p.y >= h) {
            throw PointOutOfBounds("gt point (" + std::to_string(p.x) + ", " +
                                   std::to_string(p.y) + ") outside the feature map");
        }
        for (std::size_t c = 0; c < params.num_classes; ++c)
            logits[c] = -static_cast<double>(params.biases[c]);
        for (std::size_t f = 0; f < params.feature_dim; ++f) {
            double fv = features.at(p.y, p.x, static_cast<int>(f));
            if (fv == 0.0) continue;
            for (std::size_t c = 0; c < params.num_classes; ++c)
                logits[c] += fv * static_cast<double>(params.weight(f, c));
        }
        double mx = *std::max_element(logits.begin(), logits.end());
        double denom = 0.0;
        for (double v : logits) denom += std::exp(v - mx);
        double log_p = logits[p.label] - mx - std::log(denom);
        sum += -log_p;
    }
    return sum / static_cast<double>(p_gt.size());
}

LossReport loss_total(double l_det, double l_rec, const LossConfig& cfg) {
    LossReport r;
    r.l_det = l_det;
    r.l_rec = l_rec;
    r.l_total = l_det + cfg.alpha * l_rec;
    return r;
}

std::optional<std::vector<CharPointGt>> self_label(const Tensor& word_crop_region,
                                                   const std::string& transcription,
                                                   const CharSpotConfig& cfg,
                                                   const std::string& alphabet) {
    double shorter = std::min(word_crop_region.height(), word_crop_region.width());
    std::vector<CharPoint> pts;
    switch (cfg.mode) {
        case SpotMode::PeakOnly:
            pts = spot_peaks(word_crop_region, cfg);
            break;
        case SpotMode::LabelOnly:
            pts = spot_labels(word_crop_region, cfg);
            break;
        case SpotMode::Hybrid:
            pts = shorter > cfg.size_threshold ? spot_labels(word_crop_region, cfg)
                                               : spot_peaks(word_crop_region, cfg);
            break;
    }
    if (pts.size() != transcription.size()) return std::nullopt;

    std::sort(pts.begin(), pts.end(), [](const CharPoint& a, const CharPoint& b) {
        return a.x < b.x || (a.x == b.x && a.y < b.y);
    });
    std::vector<CharPointGt> out;
    out.reserve(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) {
        std::size_t cls = alphabet.find(transcription[i]);
        if (cls == std::string::npos) return std::nullopt;
        out.push_back({pts[i].x, pts[i].y, static_cast<int>(cls)});
    }
    return out;
}

}  // namespace textspot
