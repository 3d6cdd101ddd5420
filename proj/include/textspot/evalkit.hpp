#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "textspot/lexicon.hpp"
#include "textspot/records.hpp"

namespace textspot {

struct OutOfRange : std::runtime_error {
    explicit OutOfRange(const std::string& what) : std::runtime_error(what) {}
};

struct EvalReport {
    double precision = 0.0;
    double recall = 0.0;
    double hmean = 0.0;
    long tp = 0;
    long fp = 0;
    long fn = 0;
};

double hmean(double p, double r);

enum class Protocol { WordSpotting, EndToEnd };

// Greedy one-to-one matching by descending IoU (ties by prediction index,
// then gt index). Ignored gt never counts as FN, and predictions matched
// to ignored gt never count as FP.
EvalReport eval_detection(const std::vector<ResultRecord>& preds,
                          const std::vector<AnnotationRecord>& gts, double iou_thr);

// A prediction is correct iff it matches a gt box at IoU >= 0.5 AND the
// transcriptions agree case-insensitively. WordSpotting additionally
// treats gt words that are not alphanumeric or shorter than 3 chars as
// ignore regions. When a lexicon is given, predictions are rewritten by
// weighted-edit-distance matching first.
EvalReport eval_recognition(const std::vector<ResultRecord>& preds,
                            const std::vector<AnnotationRecord>& gts, Protocol protocol,
                            const Lexicon* lex = nullptr, const std::string& alphabet = "",
                            const MatchConfig& match_cfg = {});

struct SweepPoint {
    std::size_t size = 0;
    double hmean = 0.0;
};

// Word-spotting H across lexicon sizes, each point averaged over `trials`
// seeded inflations (trial t uses seed + t).
std::vector<SweepPoint> lexicon_sweep(const std::vector<ResultRecord>& preds,
                                      const std::vector<AnnotationRecord>& gts,
                                      const Lexicon& base, const Lexicon& pool,
                                      const std::vector<std::size_t>& sizes,
                                      std::uint64_t seed, const std::string& alphabet,
                                      int trials = 5, const MatchConfig& match_cfg = {});

}  // namespace textspot
