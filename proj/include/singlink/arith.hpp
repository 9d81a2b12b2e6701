#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace singlink {

using Integer = mpz_class;
using Rational = mpq_class;

// Weights and degrees stay well inside 64 bits for every use here; anything
// that can grow (coefficients, orders, periods of products) is an Integer.
using Weight = std::int64_t;

inline Integer to_integer(Weight w) { return Integer(static_cast<long>(w)); }

inline Rational make_rational(Weight num, Weight den) {
    if (den == 0) throw std::invalid_argument("zero denominator");
    Rational r(to_integer(num), to_integer(den));
    r.canonicalize();
    return r;
}

inline Rational to_rational(const Integer& n) { return Rational(n); }

inline bool is_integral(const Rational& q) { return q.get_den() == 1; }

inline std::string to_string(const Integer& n) { return n.get_str(); }

/// Decimal for integers, "num/den" otherwise.
inline std::string to_string(const Rational& q) {
    if (is_integral(q)) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

/// Strict decimal parse: optional leading '-', digits only.
inline Integer parse_integer(std::string_view text) {
    std::size_t start = (!text.empty() && text.front() == '-') ? 1 : 0;
    if (text.size() == start) throw std::invalid_argument("empty integer");
    for (std::size_t i = start; i < text.size(); ++i) {
        if (text[i] < '0' || text[i] > '9')
            throw std::invalid_argument("not an integer: '" + std::string(text) + "'");
    }
    return Integer(std::string(text), 10);
}

inline bool fits_int64(const Integer& n) {
    static const Integer lo("-9223372036854775808");
    static const Integer hi("9223372036854775807");
    return n >= lo && n <= hi;
}

inline std::int64_t to_int64(const Integer& n) {
    if (!fits_int64(n)) throw std::overflow_error("integer exceeds 64 bits: " + n.get_str());
    // mpz_get_si is exact for values that fit a signed long (64-bit on LP64).
    return static_cast<std::int64_t>(mpz_get_si(n.get_mpz_t()));
}

inline Integer integer_gcd(const Integer& a, const Integer& b) {
    Integer r;
    mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

inline Integer integer_lcm(const Integer& a, const Integer& b) {
    Integer r;
    mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

inline Integer integer_pow(const Integer& base, unsigned long exp) {
    Integer r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exp);
    return r;
}

}  // namespace singlink
