#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "overlapdist/border.hpp"
#include "support/naive.hpp"

#include <random>

using namespace ovd;
using namespace ovd::testing;

namespace {
Word w2(const char* s) { return parse_word(s, 2); }
Word w3(const char* s) { return parse_word(s, 3); }
} // namespace

TEST_CASE("first return and max overlap on fixed words") {
    CHECK(first_return(w2("abab")) == 2);
    CHECK(first_return(w2("aaaa")) == 1);
    CHECK(first_return(w2("aab")) == 3);
    CHECK(max_overlap(w2("abab")) == 2);
    CHECK(max_overlap(w2("aab")) == 0);
    CHECK(max_overlap(w2("aabaa")) == 2);
    // a single letter has no shift below n
    CHECK(first_return(w2("a")) == 1);
    CHECK(max_overlap(w2("a")) == 0);
}

TEST_CASE("border sets on fixed words") {
    CHECK(border_set(w2("aabaa")) == std::vector<int>{1, 2});
    CHECK(border_set(w3("abc")).empty());
    CHECK(border_set(w2("aaaa")) == std::vector<int>{1, 2, 3});
}

TEST_CASE("border membership and periodic-block membership") {
    CHECK(has_border(w2("abab"), 2));
    CHECK_FALSE(has_border(w2("abab"), 1));
    CHECK(has_border(w2("aabaa"), 1));
    CHECK_THROWS_AS(has_border(w2("abab"), 0), std::invalid_argument);
    CHECK_THROWS_AS(has_border(w2("abab"), 4), std::invalid_argument);

    CHECK(is_block_periodic(w2("ababa"), 2));
    CHECK_FALSE(is_block_periodic(w2("aab"), 2));
    CHECK_THROWS_AS(is_block_periodic(w2("aab"), 3), std::invalid_argument);
}

TEST_CASE("duality: block form of size n-k is the k-border form") {
    for (unsigned t = 2; t <= 3; ++t) {
        int nmax = t == 2 ? 12 : 8;
        for (int n = 2; n <= nmax; ++n)
            for_all_words(t, n, [&](const Word& w) {
                for (int k = 1; k < n; ++k)
                    REQUIRE(is_block_periodic(w, n - k) == has_border(w, k));
            });
    }
}

TEST_CASE("prefix-function path agrees with definitional scans exhaustively") {
    for (unsigned t = 2; t <= 3; ++t) {
        int nmax = t == 2 ? 12 : 8;
        for (int n = 1; n <= nmax; ++n)
            for_all_words(t, n, [&](const Word& w) {
                REQUIRE(first_return(w) == naive_first_return(w));
                REQUIRE(border_set(w) == naive_border_set(w));
            });
    }
}

TEST_CASE("prefix-function path agrees with the scan on random long words") {
    std::mt19937_64 rng(2024);
    for (int trial = 0; trial < 100000; ++trial) {
        unsigned t = 2 + trial % 3;
        int n = 20 + static_cast<int>(rng() % 60);
        Word w(n);
        for (auto& c : w) c = static_cast<std::uint32_t>(rng() % t);
        REQUIRE(first_return(w) == naive_first_return(w));
    }
}

TEST_CASE("first return never decreases along prefixes") {
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 20000; ++trial) {
        unsigned t = 2 + trial % 2;
        Word w(48);
        for (auto& c : w) c = static_cast<std::uint32_t>(rng() % t);
        auto pi = prefix_function(w);
        for (std::size_t i = 1; i < w.size(); ++i) {
            int prev = static_cast<int>(i) - pi[i - 1];
            int cur = static_cast<int>(i) + 1 - pi[i];
            REQUIRE(prev <= cur);
        }
    }
}

TEST_CASE("bordered words have a border of length at most ceil(n/2)") {
    for (int n = 2; n <= 14; ++n)
        for_all_words(2, n, [&](const Word& w) {
            auto b = border_set(w);
            if (!b.empty()) REQUIRE(2 * b.front() <= n + 1);
        });
    for (int n = 2; n <= 9; ++n)
        for_all_words(3, n, [&](const Word& w) {
            auto b = border_set(w);
            if (!b.empty()) REQUIRE(2 * b.front() <= n + 1);
        });
}

TEST_CASE("word text round trip") {
    CHECK(format_word(w2("abba"), 2) == "abba");
    CHECK(parse_word("0,1,27", 30) == Word{0, 1, 27});
    CHECK(format_word(Word{0, 1, 27}, 30) == "0,1,27");
    CHECK_THROWS_AS(parse_word("abz", 2), std::invalid_argument);
    CHECK_THROWS_AS(parse_word("0,42", 30), std::invalid_argument);

    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 200; ++trial) {
        unsigned t = 2 + rng() % 40;
        Word w(1 + rng() % 30);
        for (auto& c : w) c = static_cast<std::uint32_t>(rng() % t);
        CHECK(parse_word(format_word(w, t), t) == w);
    }
}
