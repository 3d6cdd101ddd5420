#include "textspot/evalkit.hpp"

#include <algorithm>
#include <cctype>
#include <map>

#include "textspot/geometry.hpp"

namespace textspot {

double hmean(double p, double r) {
    if (p < 0.0 || p > 1.0 || r < 0.0 || r > 1.0) {
        throw OutOfRange("hmean arguments must lie in [0,1]");
    }
    if (p + r == 0.0) return 0.0;
    return 2.0 * p * r / (p + r);
}

namespace {

struct Match {
    int pred = -1;
    int gt = -1;
    double iou = 0.0;
};

// Greedy one-to-one assignment by descending IoU; ties broken by pred
// index, then gt index, so the outcome is deterministic.
std::vector<Match> greedy_match(const std::vector<std::vector<Point>>& preds,
                                const std::vector<std::vector<Point>>& gts,
                                double iou_thr) {
    std::vector<Match> pairs;
    for (int p = 0; p < static_cast<int>(preds.size()); ++p) {
        for (int g = 0; g < static_cast<int>(gts.size()); ++g) {
            double iou = polygon_iou(preds[p], gts[g]);
            if (iou >= iou_thr) pairs.push_back({p, g, iou});
        }
    }
    std::sort(pairs.begin(), pairs.end(), [](const Match& a, const Match& b) {
        if (a.iou != b.iou) return a.iou > b.iou;
        if (a.pred != b.pred) return a.pred < b.pred;
        return a.gt < b.gt;
    });
    std::vector<bool> pred_used(preds.size(), false), gt_used(gts.size(), false);
    std::vector<Match> out;
    for (const Match& m : pairs) {
        if (pred_used[m.pred] || gt_used[m.gt]) continue;
        pred_used[m.pred] = true;
        gt_used[m.gt] = true;
        out.push_back(m);
    }
    return out;
}

std::string fold_case(const std::string& s) { return to_upper(s); }

bool is_alnum_word(const std::string& s) {
    if (s.empty()) return false;
    return std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isalnum(c); });
}

struct ImagePair {
    const ResultRecord* pred = nullptr;
    const AnnotationRecord* gt = nullptr;
};

std::map<std::string, ImagePair> pair_by_image(const std::vector<ResultRecord>& preds,
                                               const std::vector<AnnotationRecord>& gts) {
    std::map<std::string, ImagePair> pairs;
    for (const AnnotationRecord& g : gts) pairs[g.image_id].gt = &g;
    for (const ResultRecord& p : preds) pairs[p.image_id].pred = &p;
    return pairs;
}

EvalReport finish(long tp, long fp, long fn) {
    EvalReport r;
    r.tp = tp;
    r.fp = fp;
    r.fn = fn;
    r.precision = tp + fp > 0 ? static_cast<double>(tp) / static_cast<double>(tp + fp) : 0.0;
    r.recall = tp + fn > 0 ? static_cast<double>(tp) / static_cast<double>(tp + fn) : 0.0;
    r.hmean = hmean(r.precision, r.recall);
    return r;
}

}  // namespace

EvalReport eval_detection(const std::vector<ResultRecord>& preds,
                          const std::vector<AnnotationRecord>& gts, double iou_thr) {
    if (iou_thr <= 0.0 || iou_thr >= 1.0) throw OutOfRange("iou threshold must be in (0,1)");
    long tp = 0, fp = 0, fn = 0;
    for (const auto& [id, pair] : pair_by_image(preds, gts)) {
        std::vector<std::vector<Point>> pred_polys, gt_polys;
        std::vector<bool> ignore;
        if (pair.pred) {
            for (const ResultBox& b : pair.pred->boxes) pred_polys.push_back(b.polygon);
        }
        if (pair.gt) {
            gt_polys = pair.gt->polygons;
            ignore = pair.gt->ignore;
        }

        std::vector<Match> matches = greedy_match(pred_polys, gt_polys, iou_thr);
        std::vector<bool> pred_matched(pred_polys.size(), false);
        std::vector<bool> gt_matched(gt_polys.size(), false);
        for (const Match& m : matches) {
            pred_matched[m.pred] = true;
            gt_matched[m.gt] = true;
            if (!ignore[m.gt]) ++tp;  // matches to ignored gt count nowhere
        }
        for (std::size_t p = 0; p < pred_polys.size(); ++p) {
            if (!pred_matched[p]) ++fp;
        }
        for (std::size_t g = 0; g < gt_polys.size(); ++g) {
            if (!gt_matched[g] && !ignore[g]) ++fn;
        }
    }
    return finish(tp, fp, fn);
}

EvalReport eval_recognition(const std::vector<ResultRecord>& preds,
                            const std::vector<AnnotationRecord>& gts, Protocol protocol,
                            const Lexicon* lex, const std::string& alphabet,
                            const MatchConfig& match_cfg) {
    long tp = 0, fp = 0, fn = 0;
    for (const auto& [id, pair] : pair_by_image(preds, gts)) {
        std::vector<std::vector<Point>> pred_polys, gt_polys;
        std::vector<std::string> pred_texts, gt_texts;
        std::vector<bool> ignore;
        if (pair.pred) {
            for (const ResultBox& b : pair.pred->boxes) {
                pred_polys.push_back(b.polygon);
                std::string text = b.transcription;
                if (lex) {
                    auto rows = !b.char_probs.empty() ? b.char_probs
                                                      : one_hot_rows(text, alphabet);
                    text = match_lexicon(rows, text, *lex, alphabet, match_cfg).matched;
                }
                pred_texts.push_back(fold_case(text));
            }
        }
        if (pair.gt) {
            gt_polys = pair.gt->polygons;
            ignore = pair.gt->ignore;
            for (std::size_t g = 0; g < gt_polys.size(); ++g) {
                gt_texts.push_back(fold_case(pair.gt->transcriptions[g]));
                if (protocol == Protocol::WordSpotting &&
                    (!is_alnum_word(gt_texts.back()) || gt_texts.back().size() < 3)) {
                    ignore[g] = true;  // out-of-protocol words become don't-care
                }
            }
        }

        std::vector<Match> matches = greedy_match(pred_polys, gt_polys, 0.5);
        std::vector<bool> pred_matched(pred_polys.size(), false);
        std::vector<bool> gt_correct(gt_polys.size(), false);
        std::vector<bool> gt_matched(gt_polys.size(), false);
        for (const Match& m : matches) {
            gt_matched[m.gt] = true;
            if (ignore[m.gt]) {
                pred_matched[m.pred] = true;  // swallowed by don't-care region
                continue;
            }
            if (pred_texts[m.pred] == gt_texts[m.gt]) {
                pred_matched[m.pred] = true;
                gt_correct[m.gt] = true;
                ++tp;
            }
        }
        for (std::size_t p = 0; p < pred_polys.size(); ++p) {
            if (!pred_matched[p]) ++fp;
        }
        for (std::size_t g = 0; g < gt_polys.size(); ++g) {
            if (!ignore[g] && !gt_correct[g]) ++fn;
        }
    }
    return finish(tp, fp, fn);
}

std::vector<SweepPoint> lexicon_sweep(const std::vector<ResultRecord>& preds,
                                      const std::vector<AnnotationRecord>& gts,
                                      const Lexicon& base, const Lexicon& pool,
                                      const std::vector<std::size_t>& sizes,
                                      std::uint64_t seed, const std::string& alphabet,
                                      int trials, const MatchConfig& match_cfg) {
    std::vector<SweepPoint> out;
    for (std::size_t size : sizes) {
        double h_sum = 0.0;
        for (int t = 0; t < trials; ++t) {
            Lexicon lex = inflate_lexicon(base, pool, size, seed + static_cast<std::uint64_t>(t));
            EvalReport rep = eval_recognition(preds, gts, Protocol::WordSpotting, &lex,
                                              alphabet, match_cfg);
            h_sum += rep.hmean;
        }
        out.push_back({size, h_sum / trials});
    }
    return out;
}

}  // namespace textspot
