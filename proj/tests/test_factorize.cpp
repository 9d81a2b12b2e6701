#include <fstream>
#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include "singlink/catalog.hpp"
#include "singlink/factorize.hpp"

using singlink::factorize;
using singlink::Integer;

namespace {

void expect_sound(const Integer& n) {
    auto f = factorize(n);
    ASSERT_EQ(f.value(), n) << n.get_str();
    Integer last = 1;
    for (const auto& pp : f.factors()) {
        ASSERT_GT(pp.prime, last) << "primes must increase for " << n.get_str();
        ASSERT_GE(pp.exponent, 1u);
        ASSERT_NE(mpz_probab_prime_p(pp.prime.get_mpz_t(), 40), 0) << pp.prime.get_str() << " in " << n.get_str();
        last = pp.prime;
    }
}

}  // namespace

TEST(Factorize, Examples) {
    auto f = factorize(Integer("582622237229761"));
    ASSERT_EQ(f.factors().size(), 1u);
    EXPECT_EQ(f.factors()[0].prime, 17);
    EXPECT_EQ(f.factors()[0].exponent, 12u);

    auto g = factorize(2296);
    ASSERT_EQ(g.factors().size(), 3u);
    EXPECT_EQ(g.to_string(), "2^3*7*41");

    EXPECT_TRUE(factorize(1).empty());
    EXPECT_EQ(factorize(1).to_string(), "1");
    EXPECT_EQ(factorize(1).value(), 1);
}

TEST(Factorize, Primes) {
    EXPECT_EQ(factorize(2).to_string(), "2");
    EXPECT_EQ(factorize(Integer("1000000000000037")).to_string(), "1000000000000037");
    // semiprime of two primes just above the trial-division range
    Integer p = 100003, q = 1000003;
    EXPECT_EQ(factorize(p * q).to_string(), "100003*1000003");
    EXPECT_EQ(factorize(Integer("18446744073709551557")).to_string(), "18446744073709551557");  // largest 64-bit prime
}

TEST(Factorize, BeyondSixtyFourBits) {
    Integer n = singlink::integer_pow(17, 30) * 2 * 3;
    EXPECT_EQ(factorize(n).to_string(), "2*3*17^30");
    // two ~40-bit primes leave an 80-bit cofactor: documented cap
    Integer big = Integer("1099511627791") * Integer("1099511627831");
    EXPECT_THROW(factorize(big), singlink::FactorizationCapError);
}

TEST(Factorize, RejectsNonPositive) {
    EXPECT_THROW(factorize(0), std::invalid_argument);
    EXPECT_THROW(factorize(-4), std::invalid_argument);
}

TEST(FactorizeProperty, RandomBelowTenToFifteen) {
    std::mt19937_64 rng(1234567);
    std::uniform_int_distribution<std::uint64_t> dist(1, 999'999'999'999'999ULL);
    for (int i = 0; i < 10000; ++i) {
        Integer n(static_cast<unsigned long>(dist(rng)));
        expect_sound(n);
        if (HasFatalFailure()) return;
    }
}

TEST(FactorizeProperty, TableTorsionOrders) {
    std::ifstream in(SINGLINK_DATA_DIR "/rhs_table.csv");
    std::stringstream ss;
    ss << in.rdbuf();
    auto rows = singlink::parse_table(ss.str(), singlink::IndexPolicy::keep);
    ASSERT_EQ(rows.size(), 184u);
    for (const auto& r : rows) expect_sound(r.h3_order);
}

TEST(Factorize, FromExponents) {
    std::map<Integer, long> e{{2, 3}, {7, 1}, {41, 1}, {5, 0}};
    EXPECT_EQ(singlink::Factorization::from_exponents(e).value(), 2296);
    EXPECT_THROW(singlink::Factorization::from_exponents({{3, -1}}), std::domain_error);
}
