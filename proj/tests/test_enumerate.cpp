#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "overlapdist/corrections.hpp"
#include "overlapdist/enumerate.hpp"
#include "support/naive.hpp"

using namespace ovd;
using namespace ovd::testing;

namespace {

Theta theta73() { return Theta::explicit_probs({Rat(7, 10), Rat(3, 10)}); }

// direct probability of an arbitrary border-set predicate, by word iteration
template <typename Pred>
Rat naive_event(const Theta& th, int n, Pred&& pred) {
    Rat total = 0;
    for_all_words(th.size(), n, [&](const Word& w) {
        if (pred(naive_border_set(w))) total += word_prob(th, w);
    });
    return total;
}

} // namespace

TEST_CASE("exact distributions at small n") {
    Budget budget;
    auto u2 = enumerate_distribution(Theta::uniform(2), 2, Mode::Exact, budget);
    CHECK(u2.pmf_exact == std::vector<Rat>{Rat(1, 2), Rat(1, 2)});

    auto t73 = enumerate_distribution(theta73(), 2, Mode::Exact, budget);
    CHECK(t73.pmf_exact == std::vector<Rat>{Rat(42, 100), Rat(58, 100)});

    auto u2n4 = enumerate_distribution(Theta::uniform(2), 4, Mode::Exact, budget);
    CHECK(u2n4.pmf_exact ==
          std::vector<Rat>{Rat(6, 16), Rat(6, 16), Rat(2, 16), Rat(2, 16)});
    CHECK(u2n4.cdf_tail(2) == Rat(4, 16));
}

TEST_CASE("pmf sums to one and the tail is monotone") {
    Budget budget;
    for (const Theta& th : {Theta::uniform(3), theta73()}) {
        for (int n = 1; n <= 9; ++n) {
            auto d = enumerate_distribution(th, n, Mode::Exact, budget);
            Rat sum = 0;
            for (const auto& p : d.pmf_exact) {
                CHECK(p >= 0);
                sum += p;
            }
            CHECK(sum == 1);
            for (int k = 0; k + 1 < n; ++k)
                CHECK(d.cdf_tail(k) >= d.cdf_tail(k + 1));
        }
    }
}

TEST_CASE("float mode stays within tolerance of exact") {
    Budget budget;
    auto exact = enumerate_distribution(theta73(), 10, Mode::Exact, budget);
    auto approx = enumerate_distribution(theta73(), 10, Mode::Float, budget);
    double sum = 0;
    for (int k = 0; k < 10; ++k) {
        CHECK(std::abs(approx.pmf[k] - exact.pmf[k]) < 1e-12);
        sum += approx.pmf[k];
    }
    CHECK(std::abs(sum - 1.0) < 1e-12);
}

TEST_CASE("level masses: row sums give the power-sum identity") {
    Budget budget;
    for (const Theta& th : {Theta::uniform(2), theta73(),
                            Theta::explicit_probs({Rat(1, 2), Rat(1, 3), Rat(1, 6)})}) {
        auto lm = level_masses(th, 10, Mode::Exact, budget);
        for (int j = 1; j <= 10; ++j)
            for (unsigned q = 1; q <= 4; ++q) {
                Rat total = 0;
                for (int k = 0; k < j; ++k) total += lm.dq(j, k, q);
                CHECK(total == rat_pow(th.moment(q), static_cast<unsigned>(j)));
            }
    }
}

TEST_CASE("level-mass spot values for uniform(2)") {
    Budget budget;
    auto lm = level_masses(Theta::uniform(2), 3, Mode::Exact, budget);
    CHECK(lm.dq(2, 0, 2) == Rat(1, 8));   // words ab, ba
    CHECK(lm.dq(3, 0, 2) == Rat(1, 16));  // 4 unbordered 3-words
    CHECK(lm.dq(2, 1, 2) == Rat(1, 8));   // aa, bb doubled
}

TEST_CASE("union probabilities against the word-level oracle") {
    Budget budget;
    auto u2 = Theta::uniform(2);

    // all shifts: complement of the unbordered words
    Rat all = union_prob(u2, 6, {1, 2, 3, 4, 5}, budget);
    CHECK(all == 1 - Rat(20, 64));

    // empty union is the empty event
    CHECK(union_prob(u2, 6, {}, budget) == 0);

    // same event both ways: suffix unions equal distribution tails
    auto d6 = enumerate_distribution(u2, 6, Mode::Exact, budget);
    for (int k = 1; k < 6; ++k) {
        std::vector<int> J;
        for (int j = k; j < 6; ++j) J.push_back(j);
        CHECK(union_prob(u2, 6, J, budget) == d6.cdf_tail(k));
    }

    CHECK_THROWS_AS(union_prob(u2, 4, {7}, budget), std::invalid_argument);
}

TEST_CASE("event queries match a naive scan on a non-uniform ternary alphabet") {
    Budget budget;
    auto th = Theta::explicit_probs({Rat(1, 2), Rat(1, 3), Rat(1, 6)});
    MaskTable table(th, 7, Mode::Exact, budget);

    BorderEvent ev;
    ev.use_intersect = true;
    ev.intersect = BorderEvent::range_mask(3, 6);
    ev.avoid = BorderEvent::range_mask(1, 1);
    Rat expect = naive_event(th, 7, [](const std::vector<int>& b) {
        bool hit = false;
        for (int j : b) {
            if (j == 1) return false;
            if (j >= 3) hit = true;
        }
        return hit;
    });
    CHECK(table.event_mass(ev) == expect);

    BorderEvent contain;
    contain.contain = BorderEvent::range_mask(2, 2);
    Rat expect2 = naive_event(th, 7, [](const std::vector<int>& b) {
        for (int j : b)
            if (j == 2) return true;
        return false;
    });
    CHECK(table.event_mass(contain) == expect2);
}

TEST_CASE("results do not depend on the thread count") {
    auto th = Theta::explicit_probs({Rat(1, 2), Rat(1, 3), Rat(1, 6)});
    Budget b1, b2, b3;
    auto d1 = enumerate_distribution(th, 9, Mode::Exact, b1, 1);
    auto d4 = enumerate_distribution(th, 9, Mode::Exact, b2, 4);
    auto d7 = enumerate_distribution(th, 9, Mode::Exact, b3, 7);
    CHECK(d1.pmf_exact == d4.pmf_exact);
    CHECK(d1.pmf_exact == d7.pmf_exact);

    Budget f1, f4;
    auto a1 = enumerate_distribution(th, 9, Mode::Float, f1, 1);
    auto a4 = enumerate_distribution(th, 9, Mode::Float, f4, 4);
    for (int k = 0; k < 9; ++k) CHECK(a1.pmf[k] == a4.pmf[k]); // bitwise
}

TEST_CASE("budget exceeded reports the required word count") {
    Budget tiny;
    tiny.max_words = 1000;
    try {
        enumerate_distribution(Theta::uniform(2), 20, Mode::Exact, tiny);
        FAIL("expected budget error");
    } catch (const BudgetExceeded& e) {
        CHECK(e.required_words == Int(1) << 20);
        CHECK(std::string(e.what()).find("1048576") != std::string::npos);
    }
}

TEST_CASE("closed form equals enumeration, including degenerate windows") {
    Budget budget;
    for (const Theta& th : {Theta::uniform(2), theta73()}) {
        CorrectionEngine eng(th, Mode::Exact, budget);
        for (int n = 2; n <= 12; ++n) {
            auto d = enumerate_distribution(th, n, Mode::Exact, budget);
            for (int k = 1; 2 * k <= n; ++k) {
                REQUIRE(eng.formula_cdf_tail(k, n) == d.cdf_tail(k));
                REQUIRE(eng.formula_pmf(k, n) == d.pmf_exact[k]);
            }
        }
    }
    auto u3 = Theta::uniform(3);
    CorrectionEngine eng3(u3, Mode::Exact, budget);
    for (int n = 2; n <= 9; ++n) {
        auto d = enumerate_distribution(u3, n, Mode::Exact, budget);
        for (int k = 1; 2 * k <= n; ++k) {
            REQUIRE(eng3.formula_cdf_tail(k, n) == d.cdf_tail(k));
            REQUIRE(eng3.formula_pmf(k, n) == d.pmf_exact[k]);
        }
    }
}

TEST_CASE("closed-form preconditions") {
    Budget budget;
    CorrectionEngine eng(Theta::uniform(2), Mode::Exact, budget);
    CHECK_THROWS_AS(eng.formula_pmf(0, 4), std::invalid_argument);
    CHECK_THROWS_AS(eng.formula_pmf(3, 5), std::invalid_argument);
    // boundary n = 2k carries the pure m2^k head: P(R_{2k}(k)) = m2^k
    CHECK(union_prob(Theta::uniform(2), 6, {3}, budget) == Rat(1, 8));
}

TEST_CASE("squared level masses realize the doubled-word events") {
    Budget budget;
    for (const Theta& th : {Theta::uniform(2),
                            Theta::explicit_probs({Rat(1, 2), Rat(1, 3), Rat(1, 6)})}) {
        int imax = th.size() == 2 ? 7 : 5;
        auto lm = level_masses(th, imax, Mode::Exact, budget);
        CorrectionEngine eng(th, Mode::Exact, budget);
        for (int i = 2; i <= imax; ++i)
            for (int k = 1; k < i; ++k) {
                BorderEvent cumulative;
                cumulative.contain = BorderEvent::range_mask(i, i);
                cumulative.avoid = BorderEvent::range_mask(k, i - 1);
                Rat rhs = 0;
                for (int j = 0; j < k; ++j) rhs += lm.dq(i, j, 2);
                REQUIRE(eng.table(2 * i).event_mass(cumulative) == rhs);

                BorderEvent level;
                level.contain =
                    BorderEvent::range_mask(i, i) | BorderEvent::range_mask(k, k);
                level.avoid = BorderEvent::range_mask(k + 1, i - 1);
                REQUIRE(eng.table(2 * i).event_mass(level) == lm.dq(i, k, 2));
            }
    }
}

TEST_CASE("large-overlap mass cap") {
    Budget budget;
    for (const Theta& th : {Theta::uniform(2), theta73()}) {
        CorrectionEngine eng(th, Mode::Exact, budget);
        for (int n = 2; n <= 12; ++n) {
            BorderEvent ev;
            ev.use_intersect = true;
            ev.intersect = BorderEvent::range_mask(n / 2, n - 1);
            CHECK(eng.table(n).event_mass(ev) <=
                  Rat(n, 2) * rat_pow(th.moment(2), static_cast<unsigned>(n / 2)));
        }
    }
}
