#include <random>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "singlink/divisor_ring.hpp"

using singlink::LambdaDivisor;
using singlink::make_rational;
using singlink::Rational;

namespace {

LambdaDivisor random_divisor(std::mt19937_64& rng, int max_period, int max_terms, bool integral) {
    std::uniform_int_distribution<int> nterms(0, max_terms);
    std::uniform_int_distribution<int> period(1, max_period);
    std::uniform_int_distribution<int> num(-6, 6);
    std::uniform_int_distribution<int> den(1, integral ? 1 : 4);
    LambdaDivisor d;
    for (int k = nterms(rng); k > 0; --k) d += LambdaDivisor::lambda(period(rng)) * make_rational(num(rng), den(rng));
    return d;
}

}  // namespace

TEST(LambdaDivisor, Construction) {
    EXPECT_EQ(singlink::lambda(1), LambdaDivisor({{1, 1}}));
    EXPECT_EQ(singlink::lambda(425), LambdaDivisor({{425, 1}}));
    EXPECT_EQ(singlink::lambda(1), LambdaDivisor::constant(1));
    EXPECT_THROW(singlink::lambda(0), std::invalid_argument);
    EXPECT_THROW(singlink::lambda(-3), std::invalid_argument);
    EXPECT_TRUE(LambdaDivisor().empty());
}

TEST(LambdaDivisor, Addition) {
    EXPECT_TRUE(singlink::add({{2, 1}}, {{2, -1}}).empty());
    EXPECT_EQ(singlink::add({{425, 11}}, {{17, 1}}), LambdaDivisor({{425, 11}, {17, 1}}));
    EXPECT_EQ(singlink::add({{3, 1}, {1, -1}}, {{1, 1}}), LambdaDivisor({{3, 1}}));
}

TEST(LambdaDivisor, Scaling) {
    EXPECT_EQ(singlink::scale({{6, 3}}, make_rational(1, 3)), LambdaDivisor({{6, 1}}));
    EXPECT_TRUE(singlink::scale({{2, 1}}, 0).empty());
    EXPECT_EQ(singlink::scale({{425, 11}, {25, -11}}, -1), LambdaDivisor({{425, -11}, {25, 11}}));
}

TEST(LambdaDivisor, ProductRule) {
    EXPECT_EQ(singlink::lambda(2) * singlink::lambda(2), LambdaDivisor({{2, 2}}));
    EXPECT_EQ(singlink::multiply({{4, 1}}, {{6, 1}}), LambdaDivisor({{12, 2}}));
    for (long n : {1L, 2L, 7L, 12L, 425L}) EXPECT_EQ(singlink::lambda(n) * singlink::lambda(1), singlink::lambda(n));
    LambdaDivisor x{{3, 1}, {1, -1}};
    EXPECT_EQ(x * x, LambdaDivisor({{3, 1}, {1, 1}}));
}

TEST(LambdaDivisor, ProductMultipliesRootsPairwise) {
    // roots of (t^3-1)/(t-1) are w, w^2; pairwise products are 1, 1, w, w^2
    LambdaDivisor x{{3, 1}, {1, -1}};
    EXPECT_EQ(oracle::roots_of(x * x), oracle::convolve(oracle::roots_of(x), oracle::roots_of(x)));
    // so the product divides out as (t^3 - 1)(t - 1) = t^4 - t^3 - t + 1
    oracle::Poly expected{1, -1, 0, -1, 1};
    EXPECT_EQ(oracle::expand_divisor(x * x), expected);
}

TEST(LambdaDivisor, Integrality) {
    LambdaDivisor row{{425, 11}, {17, 1}, {25, -11}, {1, -1}};
    EXPECT_EQ(singlink::assert_integral(row), row);
    EXPECT_TRUE(singlink::assert_integral(LambdaDivisor()).empty());
    LambdaDivisor half{{2, make_rational(1, 2)}};
    EXPECT_FALSE(half.is_integral());
    try {
        singlink::assert_integral(half);
        FAIL() << "expected IntegralityError";
    } catch (const singlink::IntegralityError& e) {
        EXPECT_EQ(e.period(), 2);
        EXPECT_EQ(e.coefficient(), make_rational(1, 2));
    }
}

TEST(LambdaDivisor, ZeroCoefficientsArePruned) {
    LambdaDivisor d{{5, 2}, {5, -2}, {3, 0}};
    EXPECT_TRUE(d.empty());
    LambdaDivisor e = LambdaDivisor({{6, 1}}) - LambdaDivisor({{6, 1}});
    EXPECT_EQ(e.size(), 0u);
}

TEST(LambdaDivisor, Rendering) {
    EXPECT_EQ(LambdaDivisor({{425, 11}, {17, 1}, {25, -11}, {1, -1}}).to_string(), "11*L425 - 11*L25 + L17 - L1");
    EXPECT_EQ(LambdaDivisor().to_string(), "0");
}

TEST(LambdaDivisor, DegreeIsMultiplicative) {
    std::mt19937_64 rng(7);
    for (int i = 0; i < 300; ++i) {
        auto a = random_divisor(rng, 40, 4, false);
        auto b = random_divisor(rng, 40, 4, false);
        EXPECT_EQ((a * b).weighted_degree(), a.weighted_degree() * b.weighted_degree());
    }
}

TEST(LambdaDivisorProperty, RingLaws) {
    std::mt19937_64 rng(20240601);
    const LambdaDivisor one = LambdaDivisor::constant(1);
    const LambdaDivisor zero;
    for (int i = 0; i < 1000; ++i) {
        auto a = random_divisor(rng, 60, 5, false);
        auto b = random_divisor(rng, 60, 5, false);
        auto c = random_divisor(rng, 60, 5, false);
        ASSERT_EQ(a * one, a) << a.to_string();
        ASSERT_EQ(a + zero, a);
        ASSERT_TRUE((a * zero).empty());
        ASSERT_EQ(a + b, b + a);
        ASSERT_EQ(a * b, b * a) << a.to_string() << " * " << b.to_string();
        ASSERT_EQ((a + b) + c, a + (b + c));
        ASSERT_EQ((a * b) * c, a * (b * c)) << a.to_string() << " | " << b.to_string() << " | " << c.to_string();
        ASSERT_EQ(a * (b + c), a * b + a * c);
        ASSERT_TRUE((a - a).empty());
    }
}

TEST(LambdaDivisorProperty, ProductAgreesWithRootMultisets) {
    std::mt19937_64 rng(99);
    for (int i = 0; i < 200; ++i) {
        auto a = random_divisor(rng, 24, 3, false);
        auto b = random_divisor(rng, 24, 3, false);
        ASSERT_EQ(oracle::roots_of(a * b), oracle::convolve(oracle::roots_of(a), oracle::roots_of(b)))
            << a.to_string() << " * " << b.to_string();
    }
}

TEST(LambdaDivisorProperty, IntegralProductsExpandToPolynomialProducts) {
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<int> period(1, 12), mult(1, 3);
    for (int i = 0; i < 100; ++i) {
        // products of genuine polynomials (t^j - 1)^k
        LambdaDivisor a = LambdaDivisor::lambda(period(rng)) * mult(rng);
        LambdaDivisor b = LambdaDivisor::lambda(period(rng)) * mult(rng) + LambdaDivisor::lambda(period(rng));
        // div of a product of polynomials is the sum of divisors
        auto pa = oracle::expand_divisor(a);
        auto pb = oracle::expand_divisor(b);
        EXPECT_EQ(oracle::mul(pa, pb), oracle::expand_divisor(a + b));
        // and the sum of divisors is the union of root multisets
        auto ra = oracle::roots_of(a), rb = oracle::roots_of(b), rs = oracle::roots_of(a + b);
        for (const auto& [x, c] : rb) ra[x] += c;
        std::erase_if(ra, [](const auto& kv) { return kv.second == 0; });
        EXPECT_EQ(ra, rs);
    }
}
