#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "overlapdist/theta.hpp"

#include <random>

using namespace ovd;

TEST_CASE("rational parsing") {
    CHECK(parse_rational("0.7") == Rat(7, 10));
    CHECK(parse_rational(".5") == Rat(1, 2));
    CHECK(parse_rational("7/10") == Rat(7, 10));
    CHECK(parse_rational("1e-3") == Rat(1, 1000));
    CHECK(parse_rational("2.5e-3") == Rat(1, 400));
    CHECK(parse_rational("12") == Rat(12));
    CHECK_THROWS_AS(parse_rational("abc"), std::invalid_argument);
    CHECK_THROWS_AS(parse_rational(""), std::invalid_argument);
    CHECK(rat_string(Rat(7, 10)) == "7/10");
    CHECK(rat_string(Rat(3)) == "3");
}

TEST_CASE("uniform theta") {
    auto th = Theta::uniform(2);
    REQUIRE(th.size() == 2);
    CHECK(th.prob(0) == Rat(1, 2));
    CHECK(th.tail_mass() == 0);
    CHECK(th.is_uniform());
    // m_i = 1/s^{i-1}
    for (unsigned q = 1; q <= 6; ++q) CHECK(th.moment(q) == Rat(1, 1) / int_pow(2, q - 1));
    CHECK(Theta::uniform(3).moment(2) == Rat(1, 3));
}

TEST_CASE("explicit theta is sorted and validated") {
    auto th = Theta::explicit_probs({Rat(3, 10), Rat(7, 10)});
    CHECK(th.rho() == Rat(7, 10));   // sorted non-increasing
    CHECK(th.prob(1) == Rat(3, 10));
    CHECK(th.moment(1) == 1);
    CHECK(th.moment(2) == Rat(58, 100));
    CHECK(th.moment(3) == Rat(37, 100));
    CHECK(th.moment(4) == Rat(2482, 10000));

    CHECK_THROWS_AS(Theta::explicit_probs({Rat(1, 2)}), InvalidTheta);
    CHECK_THROWS_AS(Theta::explicit_probs({Rat(1, 2), Rat(1, 3)}), InvalidTheta);
    CHECK_THROWS_AS(Theta::explicit_probs({Rat(0), Rat(1)}), InvalidTheta);
    CHECK_THROWS_AS(Theta::explicit_probs({Rat(-1, 2), Rat(3, 2)}), InvalidTheta);
}

TEST_CASE("enumeration weights use a common denominator") {
    auto th = Theta::explicit_probs({Rat(1, 2), Rat(1, 3), Rat(1, 6)});
    CHECK(th.denominator() == 6);
    CHECK(th.numerators() == std::vector<Int>{3, 2, 1});
}

TEST_CASE("geometric truncation") {
    auto th = Theta::geometric(Rat(1, 2), Rat(1, 1000));
    // smallest A with (1/2)^A <= 1/1000 is 10
    CHECK(th.size() == 10);
    CHECK(th.tail_mass() == Rat(1, 1024));
    CHECK(th.rho() == Rat(1, 2));
    CHECK(th.moment(1) == 1 - th.tail_mass());

    // truncated moment approaches the closed form of the full law
    CHECK(geometric_moment(Rat(1, 2), 2) == Rat(1, 3));
    Rat diff = geometric_moment(Rat(1, 2), 2) - th.moment(2);
    CHECK(diff > 0);
    CHECK(diff < Rat(1, 1000000));

    CHECK_THROWS_AS(Theta::geometric(Rat(3, 2), Rat(1, 100)), InvalidTheta);
}

TEST_CASE("moment inequalities on random thetas") {
    std::mt19937_64 rng(123);
    for (int trial = 0; trial < 40; ++trial) {
        int t = 2 + static_cast<int>(rng() % 5);
        std::vector<Int> weights;
        Int total = 0;
        for (int i = 0; i < t; ++i) {
            Int w = 1 + static_cast<long>(rng() % 90);
            weights.push_back(w);
            total += w;
        }
        std::vector<Rat> probs;
        for (auto& w : weights) probs.emplace_back(w, total);
        Theta th = Theta::explicit_probs(std::move(probs));

        for (unsigned q = 1; q <= 5; ++q)
            for (unsigned p = 1; p <= 5; ++p)
                CHECK(th.moment(q * p) <= rat_pow(th.moment(q), p));
        CHECK(th.rho() * th.rho() <= th.moment(2));
        CHECK(th.moment(2) - th.rho() * th.rho() > 0);
        // m4 <= m3 sqrt(m2), squared to stay in rationals
        CHECK(rat_pow(th.moment(4), 2) <= rat_pow(th.moment(3), 2) * th.moment(2));
        // m3/m2^{3/2} < 1, i.e. m3^2 < m2^3
        CHECK(rat_pow(th.moment(3), 2) < rat_pow(th.moment(2), 3));
    }
}

TEST_CASE("theta list parsing") {
    auto th = parse_theta_list("0.7,0.3");
    CHECK(th.rho() == Rat(7, 10));
    CHECK_THROWS(parse_theta_list("0.7"));
    CHECK_THROWS(parse_theta_list("0.7,0.4"));
}
