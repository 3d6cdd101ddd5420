#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "textspot/decode.hpp"
#include "textspot/lexicon.hpp"

using namespace textspot;

namespace {

std::string random_upper(std::mt19937_64& rng, int max_len) {
    std::uniform_int_distribution<int> len(0, max_len);
    std::uniform_int_distribution<int> ch('A', 'E');  // narrow range forces overlaps
    std::string s(len(rng), ' ');
    for (char& c : s) c = static_cast<char>(ch(rng));
    return s;
}

std::vector<std::vector<float>> random_rows(std::mt19937_64& rng, int n, int classes) {
    std::uniform_real_distribution<float> u(0.0f, 1.0f);
    std::vector<std::vector<float>> rows(n, std::vector<float>(classes));
    for (auto& row : rows) {
        float sum = 0.0f;
        for (float& v : row) {
            v = u(rng) + 0.01f;
            sum += v;
        }
        for (float& v : row) v /= sum;
    }
    return rows;
}

}  // namespace

TEST_CASE("the classic kitten/sitting distance is three") {
    CHECK(edit_distance("kitten", "sitting") == 3);
    CHECK(edit_distance("same", "same") == 0);
    CHECK(edit_distance("", "abc") == 3);
    CHECK(edit_distance("abc", "") == 3);
    CHECK(edit_distance("", "") == 0);
}

TEST_CASE("edit distance matches an independent recursion on short strings") {
    std::mt19937_64 rng(31);
    for (int i = 0; i < 80; ++i) {
        std::string a = random_upper(rng, 8);
        std::string b = random_upper(rng, 8);
        CHECK(edit_distance(a, b) == oracle::levenshtein_recursive(a, b));
    }
}

TEST_CASE("edit distance behaves like a metric") {
    std::mt19937_64 rng(32);
    for (int i = 0; i < 60; ++i) {
        std::string a = random_upper(rng, 7);
        std::string b = random_upper(rng, 7);
        std::string c = random_upper(rng, 7);
        CHECK(edit_distance(a, a) == 0);
        CHECK(edit_distance(a, b) == edit_distance(b, a));
        CHECK(edit_distance(a, c) <= edit_distance(a, b) + edit_distance(b, c));
        if (a != b) CHECK(edit_distance(a, b) > 0);
    }
}

TEST_CASE("one-hot rows spelling the target cost nothing") {
    std::string alphabet = default_alphabet();
    auto rows = one_hot_rows("HELLO", alphabet);
    CHECK(weighted_edit_distance(rows, "HELLO", alphabet) == doctest::Approx(0.0));
}

TEST_CASE("uniform rows against an equal-length target cost L*(1 - 1/C)") {
    const int C = 10;
    std::string alphabet = default_alphabet().substr(0, C);
    const std::string target = "!#%'";  // 4 chars inside the narrow alphabet
    std::vector<std::vector<float>> rows(target.size(),
                                         std::vector<float>(C, 1.0f / C));
    double got = weighted_edit_distance(rows, target, alphabet);
    CHECK(got == doctest::Approx(target.size() * (1.0 - 1.0 / C)).epsilon(1e-6));
}

TEST_CASE("the weighted distance agrees with a full-matrix reference") {
    std::mt19937_64 rng(33);
    std::string alphabet = default_alphabet();
    for (int i = 0; i < 60; ++i) {
        auto rows = random_rows(rng, 5, static_cast<int>(alphabet.size()));
        std::string target = random_upper(rng, 4);
        if (target.empty()) target = "A";
        double got = weighted_edit_distance(rows, target, alphabet);
        double want = oracle::full_matrix_wed(rows, target, alphabet);
        CHECK(got == doctest::Approx(want).epsilon(1e-9));
    }
}

TEST_CASE("one-hot weighted distance collapses to plain edit distance") {
    std::mt19937_64 rng(34);
    std::string alphabet = default_alphabet();
    for (int i = 0; i < 60; ++i) {
        std::string decoded = random_upper(rng, 6);
        std::string target = random_upper(rng, 6);
        if (target.empty()) target = "B";
        auto rows = one_hot_rows(decoded, alphabet);
        double w = weighted_edit_distance(rows, target, alphabet);
        CHECK(w == doctest::Approx(edit_distance(decoded, target)).epsilon(1e-9));
    }
}

TEST_CASE("substitution credit folds across letter case") {
    std::string alphabet = default_alphabet();  // holds both 'a' and 'A'
    std::vector<float> row(alphabet.size(), 0.0f);
    row[alphabet.find('a')] = 0.6f;
    row[alphabet.find('A')] = 0.15f;
    row[alphabet.find('z')] = 0.25f;
    // matching target 'A' collects mass from both cases: cost 1 - 0.75
    double got = weighted_edit_distance({row}, "A", alphabet);
    CHECK(got == doctest::Approx(0.25).epsilon(1e-6));
}

TEST_CASE("a target char missing from the alphabet is an error") {
    std::string alphabet = "ABC";
    auto rows = one_hot_rows("A", alphabet);
    CHECK_THROWS_AS(weighted_edit_distance(rows, "AX", alphabet), UnknownTargetChar);
}

TEST_CASE("a word already in the lexicon matches itself at zero cost") {
    std::string alphabet = default_alphabet();
    Lexicon lex = make_lexicon({"apple", "banana", "cherry"});
    auto rows = one_hot_rows("BANANA", alphabet);
    MatchResult r = match_lexicon(rows, "BANANA", lex, alphabet);
    CHECK(r.is_matched);
    CHECK(r.matched == "BANANA");
    CHECK(r.cost == doctest::Approx(0.0));
    CHECK(r.original == "BANANA");
}

TEST_CASE("an empty lexicon passes the decoded string through") {
    std::string alphabet = default_alphabet();
    Lexicon lex;
    auto rows = one_hot_rows("WHATEVER", alphabet);
    MatchResult r = match_lexicon(rows, "WHATEVER", lex, alphabet);
    CHECK_FALSE(r.is_matched);
    CHECK(r.matched == "WHATEVER");
}

TEST_CASE("one substituted char still recovers the lexicon word") {
    std::string alphabet = default_alphabet();
    Lexicon lex = make_lexicon({"window", "shadow", "meadow"});
    auto rows = one_hot_rows("WINDOX", alphabet);  // last char flipped
    MatchResult r = match_lexicon(rows, "WINDOX", lex, alphabet);
    CHECK(r.is_matched);
    CHECK(r.matched == "WINDOW");
    // brute force over the lexicon confirms it was the argmin
    double best = 1e18;
    std::string best_word;
    for (const std::string& w : lex.words) {
        double c = oracle::full_matrix_wed(rows, w, alphabet);
        if (c < best) {
            best = c;
            best_word = w;
        }
    }
    CHECK(best_word == "WINDOW");
    CHECK(r.cost == doctest::Approx(best).epsilon(1e-9));
}

TEST_CASE("costs clearly above the rejection budget leave the word unmatched") {
    std::string alphabet = default_alphabet();
    Lexicon lex = make_lexicon({"ZZZZZZZZ"});
    auto rows = one_hot_rows("AB", alphabet);
    MatchResult r = match_lexicon(rows, "AB", lex, alphabet);
    CHECK_FALSE(r.is_matched);
    CHECK(r.matched == "AB");
}

TEST_CASE("cost ties resolve to the lexicographically smaller word") {
    std::string alphabet = default_alphabet();
    Lexicon lex = make_lexicon({"AD", "AC"});
    auto rows = one_hot_rows("AB", alphabet);
    // both candidates cost exactly one substitution; budget is 0.5*2 = 1.0
    MatchResult r = match_lexicon(rows, "AB", lex, alphabet);
    CHECK(r.is_matched);
    CHECK(r.matched == "AC");
    CHECK(r.cost == doctest::Approx(1.0));
}

TEST_CASE("growing the lexicon never worsens the best cost") {
    std::mt19937_64 rng(35);
    std::string alphabet = default_alphabet();
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<std::string> small_words, extra;
        for (int i = 0; i < 4; ++i) small_words.push_back(random_upper(rng, 6) + "Q");
        for (int i = 0; i < 6; ++i) extra.push_back(random_upper(rng, 6) + "R");
        Lexicon small_lex = make_lexicon(small_words);
        std::vector<std::string> all = small_words;
        all.insert(all.end(), extra.begin(), extra.end());
        Lexicon big_lex = make_lexicon(all);

        std::string decoded = random_upper(rng, 5) + "S";
        auto rows = one_hot_rows(decoded, alphabet);
        MatchConfig cfg;
        cfg.reject_threshold = 1e9;  // isolate the argmin from the rejection rule
        MatchResult a = match_lexicon(rows, decoded, small_lex, alphabet, cfg);
        MatchResult b = match_lexicon(rows, decoded, big_lex, alphabet, cfg);
        CHECK(b.cost <= a.cost + 1e-12);
    }
}

TEST_CASE("inflating by zero keeps the base lexicon") {
    Lexicon base = make_lexicon({"ONE", "TWO"});
    Lexicon pool = make_lexicon({"ALPHA", "BETA", "GAMMA"});
    Lexicon out = inflate_lexicon(base, pool, 0, 7);
    CHECK(out.words == base.words);
}

TEST_CASE("inflation is deterministic in the seed") {
    Lexicon base = make_lexicon({"ONE"});
    std::vector<std::string> pool_words;
    for (char c = 'A'; c <= 'Z'; ++c) pool_words.push_back(std::string(3, c));
    Lexicon pool = make_lexicon(pool_words);
    Lexicon a = inflate_lexicon(base, pool, 10, 42);
    Lexicon b = inflate_lexicon(base, pool, 10, 42);
    CHECK(a.words == b.words);
    Lexicon c = inflate_lexicon(base, pool, 10, 43);
    CHECK(a.words != c.words);
}

TEST_CASE("drawing the whole pool yields the set union") {
    Lexicon base = make_lexicon({"KEEP", "ALPHA"});  // ALPHA also sits in the pool
    Lexicon pool = make_lexicon({"ALPHA", "BETA", "GAMMA"});
    Lexicon out = inflate_lexicon(base, pool, pool.words.size(), 3);
    Lexicon want = make_lexicon({"KEEP", "ALPHA", "BETA", "GAMMA"});
    CHECK(out.words == want.words);
}

TEST_CASE("samples nest as n grows under a fixed seed") {
    Lexicon base;
    std::vector<std::string> pool_words;
    for (int i = 0; i < 200; ++i) pool_words.push_back("W" + std::to_string(i));
    Lexicon pool = make_lexicon(pool_words);
    Lexicon prev;
    for (std::size_t n : {5ul, 20ul, 80ul, 200ul}) {
        Lexicon cur = inflate_lexicon(base, pool, n, 99);
        CHECK(cur.words.size() == n);
        CHECK(std::includes(cur.words.begin(), cur.words.end(), prev.words.begin(),
                            prev.words.end()));
        prev = cur;
    }
}

TEST_CASE("asking for more words than the pool holds is an error") {
    Lexicon base;
    Lexicon pool = make_lexicon({"A", "B"});
    CHECK_THROWS_AS(inflate_lexicon(base, pool, 3, 1), PoolTooSmall);
}

TEST_CASE("one-hot rows place unit mass on each spelled class") {
    std::string alphabet = default_alphabet();
    auto rows = one_hot_rows("AZ", alphabet);
    REQUIRE(rows.size() == 2);
    for (const auto& row : rows) REQUIRE(row.size() == alphabet.size());
    CHECK(rows[0][alphabet.find('A')] == 1.0f);
    CHECK(rows[1][alphabet.find('Z')] == 1.0f);
    CHECK(std::count(rows[0].begin(), rows[0].end(), 0.0f) ==
          static_cast<long>(alphabet.size()) - 1);
}
