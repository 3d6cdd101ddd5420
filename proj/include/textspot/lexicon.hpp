#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "textspot/records.hpp"

namespace textspot {

struct UnknownTargetChar : std::runtime_error {
    explicit UnknownTargetChar(const std::string& what) : std::runtime_error(what) {}
};
struct PoolTooSmall : std::runtime_error {
    explicit PoolTooSmall(const std::string& what) : std::runtime_error(what) {}
};

struct MatchConfig {
    // A match is rejected when its cost exceeds this per target char.
    double reject_threshold = 0.5;
};

struct MatchResult {
    std::string original;
    std::string matched;
    double cost = 0.0;
    bool is_matched = false;
};

// Plain Levenshtein distance, unit costs.
int edit_distance(const std::string& a, const std::string& b);

// Edit distance over decoded probability rows: substituting row i for
// target char c costs 1 - p_i(c) (probability folded across letter case),
// deleting row i costs p_i(argmax), inserting a target char costs 1.
// With one-hot rows this reduces to unit-cost edit distance.
double weighted_edit_distance(const std::vector<std::vector<float>>& probs,
                              const std::string& target, const std::string& alphabet);

// Lowest-cost lexicon word, ties broken lexicographically. Unmatched
// (cost above reject_threshold per target char, or empty lexicon) passes
// the decoded string through.
MatchResult match_lexicon(const std::vector<std::vector<float>>& probs,
                          const std::string& decoded, const Lexicon& lex,
                          const std::string& alphabet, const MatchConfig& cfg = {});

// base plus n seeded-random pool words, deduplicated. Sampling is a
// partial Fisher-Yates with a rejection-based bounded draw, so the same
// seed yields prefix-nested samples across different n: growing the
// lexicon never swaps earlier samples out.
Lexicon inflate_lexicon(const Lexicon& base, const Lexicon& pool, std::size_t n,
                        std::uint64_t seed);

// One-hot probability rows spelling `word`, for matching transcriptions
// that come without decoder confidences.
std::vector<std::vector<float>> one_hot_rows(const std::string& word,
                                             const std::string& alphabet);

}  // namespace textspot
