#include "textspot/lexicon.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <limits>
#include <random>

namespace textspot {

int edit_distance(const std::string& a, const std::string& b) {
    const std::size_t n = a.size(), m = b.size();
    std::vector<int> prev(m + 1), cur(m + 1);
    for (std::size_t j = 0; j <= m; ++j) prev[j] = static_cast<int>(j);
    for (std::size_t i = 1; i <= n; ++i) {
        cur[0] = static_cast<int>(i);
        for (std::size_t j = 1; j <= m; ++j) {
            int sub = prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
            cur[j] = std::min({sub, prev[j] + 1, cur[j - 1] + 1});
        }
        std::swap(prev, cur);
    }
    return prev[m];
}

namespace {

double row_max(const std::vector<float>& row) {
    return *std::max_element(row.begin(), row.end());
}

// Case-folded probability table per decoded row: folded[toupper(c)] sums
// the mass of every class matching c up to ASCII case, and present[c]
// records whether c was reachable within that row at all. Folding once
// per row keeps the DP cheap when one word scans a large lexicon.
struct FoldedRow {
    std::array<double, 128> folded{};
    std::array<bool, 128> present{};
    double del = 0.0;
};

std::vector<FoldedRow> fold_rows(const std::vector<std::vector<float>>& probs,
                                 const std::string& alphabet) {
    std::vector<FoldedRow> rows(probs.size());
    for (std::size_t i = 0; i < probs.size(); ++i) {
        FoldedRow& r = rows[i];
        r.del = probs[i].empty() ? 0.0 : row_max(probs[i]);
        for (std::size_t c = 0; c < alphabet.size() && c < probs[i].size(); ++c) {
            unsigned char up = static_cast<unsigned char>(
                std::toupper(static_cast<unsigned char>(alphabet[c])));
            if (up >= 128) continue;
            r.folded[up] += probs[i][c];
            r.present[up] = true;
        }
    }
    return rows;
}

double fold_of(const FoldedRow& row, char target) {
    unsigned char t = static_cast<unsigned char>(
        std::toupper(static_cast<unsigned char>(target)));
    if (t >= 128 || !row.present[t]) {
        throw UnknownTargetChar(std::string("target char '") + target + "' not in alphabet");
    }
    return row.folded[t];
}

double wed_folded(const std::vector<FoldedRow>& rows, const std::string& target) {
    const std::size_t n = rows.size(), m = target.size();
    std::vector<double> prev(m + 1), cur(m + 1);
    for (std::size_t j = 0; j <= m; ++j) prev[j] = static_cast<double>(j);  // insertions
    for (std::size_t i = 1; i <= n; ++i) {
        cur[0] = prev[0] + rows[i - 1].del;
        for (std::size_t j = 1; j <= m; ++j) {
            double sub = 1.0 - fold_of(rows[i - 1], target[j - 1]);
            cur[j] = std::min({prev[j - 1] + sub,            // substitute
                               prev[j] + rows[i - 1].del,    // delete decoded char
                               cur[j - 1] + 1.0});           // insert target char
        }
        std::swap(prev, cur);
    }
    return prev[m];
}

}  // namespace

double weighted_edit_distance(const std::vector<std::vector<float>>& probs,
                              const std::string& target, const std::string& alphabet) {
    return wed_folded(fold_rows(probs, alphabet), target);
}

MatchResult match_lexicon(const std::vector<std::vector<float>>& probs,
                          const std::string& decoded, const Lexicon& lex,
                          const std::string& alphabet, const MatchConfig& cfg) {
    MatchResult res;
    res.original = decoded;
    res.matched = decoded;
    if (lex.words.empty()) return res;

    const std::vector<FoldedRow> rows = fold_rows(probs, alphabet);

    // Deletion-cost prefix bound: a word shorter than the decode needs at
    // least (n - len) deletions, which cost at least the smallest argmax
    // probabilities; a longer word needs unit-cost insertions.
    std::vector<double> sorted_del;
    sorted_del.reserve(rows.size());
    for (const FoldedRow& row : rows) sorted_del.push_back(row.del);
    std::sort(sorted_del.begin(), sorted_del.end());
    std::vector<double> del_prefix(sorted_del.size() + 1, 0.0);
    for (std::size_t i = 0; i < sorted_del.size(); ++i) {
        del_prefix[i + 1] = del_prefix[i] + sorted_del[i];
    }

    double best_cost = std::numeric_limits<double>::infinity();
    const std::string* best_word = nullptr;
    for (const std::string& w : lex.words) {
        double bound = 0.0;
        if (w.size() > probs.size()) {
            bound = static_cast<double>(w.size() - probs.size());
        } else {
            bound = del_prefix[probs.size() - w.size()];
        }
        if (bound > best_cost) continue;

        double cost = wed_folded(rows, w);
        if (cost < best_cost || (cost == best_cost && (!best_word || w < *best_word))) {
            best_cost = cost;
            best_word = &w;
        }
    }

    if (!best_word || best_cost > cfg.reject_threshold * static_cast<double>(best_word->size())) {
        return res;
    }
    res.matched = *best_word;
    res.cost = best_cost;
    res.is_matched = true;
    return res;
}

namespace {

// Unbiased draw from [0, bound) by rejection; keeps sampling reproducible
// independent of the standard library's distribution internals.
std::uint64_t bounded_uniform(std::mt19937_64& rng, std::uint64_t bound) {
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % bound;
    std::uint64_t v;
    do {
        v = rng();
    } while (v >= limit);
    return v % bound;
}

}  // namespace

Lexicon inflate_lexicon(const Lexicon& base, const Lexicon& pool, std::size_t n,
                        std::uint64_t seed) {
    if (n > pool.words.size()) {
        throw PoolTooSmall("asked for " + std::to_string(n) + " words from a pool of " +
                           std::to_string(pool.words.size()));
    }
    std::vector<std::string> deck = pool.words;
    std::mt19937_64 rng(seed);
    for (std::size_t i = 0; i < n; ++i) {
        std::uint64_t j = i + bounded_uniform(rng, deck.size() - i);
        std::swap(deck[i], deck[j]);
    }

    std::vector<std::string> words(deck.begin(), deck.begin() + static_cast<std::ptrdiff_t>(n));
    words.insert(words.end(), base.words.begin(), base.words.end());
    Lexicon out = make_lexicon(std::move(words), base.kind);
    return out;
}

std::vector<std::vector<float>> one_hot_rows(const std::string& word,
                                             const std::string& alphabet) {
    std::vector<std::vector<float>> rows;
    rows.reserve(word.size());
    for (char ch : word) {
        std::size_t idx = alphabet.find(ch);
        if (idx == std::string::npos) {
            throw UnknownTargetChar(std::string("char '") + ch + "' not in alphabet");
        }
        std::vector<float> row(alphabet.size(), 0.0f);
        row[idx] = 1.0f;
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace textspot
