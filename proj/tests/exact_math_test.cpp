#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <vector>

#include "setpair/exact_math.hpp"

namespace setpair {
namespace {

TEST(Binomial, SmallValues) {
    EXPECT_EQ(binomial(4, 2), 6);
    EXPECT_EQ(binomial(7, 0), 1);
    EXPECT_EQ(binomial(5, 7), 0);
    EXPECT_EQ(binomial(5, -1), 0);
    EXPECT_EQ(binomial(0, 0), 1);
}

TEST(Binomial, NegativeNIsADomainError) { EXPECT_THROW(binomial(-1, 0), DomainError); }

TEST(Binomial, LargeValueIsExact) {
    EXPECT_EQ(binomial(100, 50), BigInt("100891344545564193334812497256"));
}

TEST(Binomial, SymmetryAndPascal) {
    for (int n = 0; n <= 40; ++n) {
        for (int k = 0; k <= n; ++k) {
            EXPECT_EQ(binomial(n, k), binomial(n, n - k));
            if (n < 1) continue;
            EXPECT_EQ(binomial(n, k), binomial(n - 1, k - 1) + binomial(n - 1, k));
        }
    }
}

TEST(RatSum, Examples) {
    const std::vector<Rational> halves{Rational(1, 2), Rational(1, 2)};
    EXPECT_EQ(rat_sum(halves), Rational(1));
    EXPECT_EQ(to_fraction_string(rat_sum(halves)), "1/1");
    EXPECT_EQ(rat_sum({}), Rational(0));
    const std::vector<Rational> mixed{Rational(1, 3), Rational(1, 6)};
    EXPECT_EQ(rat_sum(mixed), Rational(1, 2));
}

TEST(RatSum, OrderIndependent) {
    std::mt19937 rng(7);
    std::uniform_int_distribution<int> num(-50, 50);
    std::uniform_int_distribution<int> den(1, 60);
    for (int round = 0; round < 50; ++round) {
        std::vector<Rational> terms;
        for (int i = 0; i < 12; ++i) terms.emplace_back(num(rng), den(rng));
        const Rational expected = rat_sum(terms);
        std::shuffle(terms.begin(), terms.end(), rng);
        EXPECT_EQ(rat_sum(terms), expected);
    }
}

TEST(RationalText, LowestTermsAndOmittedDenominator) {
    EXPECT_EQ(to_string(Rational(2, 4)), "1/2");
    EXPECT_EQ(to_string(Rational(6, 3)), "2");
    EXPECT_EQ(to_string(Rational(0)), "0");
    EXPECT_EQ(to_string(make_rational(3, -9)), "-1/3");
    EXPECT_EQ(to_fraction_string(Rational(0)), "0/1");
}

TEST(RationalText, ParseNormalizes) {
    EXPECT_EQ(parse_rational("4/6"), Rational(2, 3));
    EXPECT_EQ(parse_rational("-7"), Rational(-7));
    EXPECT_EQ(parse_rational("3/-6"), Rational(-1, 2));
    EXPECT_THROW(parse_rational("1/0"), ParseError);
    EXPECT_THROW(parse_rational("x"), ParseError);
    EXPECT_THROW(parse_rational("1/"), ParseError);
    EXPECT_THROW(parse_rational(""), ParseError);
}

TEST(RationalText, RoundTrip) {
    std::mt19937 rng(11);
    std::uniform_int_distribution<int> num(-1000, 1000);
    std::uniform_int_distribution<int> den(1, 1000);
    for (int i = 0; i < 200; ++i) {
        const Rational r(num(rng), den(rng));
        EXPECT_EQ(parse_rational(to_string(r)), r);
        EXPECT_EQ(parse_rational(to_fraction_string(r)), r);
    }
}

}  // namespace
}  // namespace setpair
