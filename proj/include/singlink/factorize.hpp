#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "singlink/arith.hpp"

namespace singlink {

struct PrimePower {
    Integer prime;
    unsigned long exponent = 0;

    friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

/// Prime factorization with primes strictly increasing and exponents >= 1.
/// The empty factorization represents 1.
class Factorization {
public:
    Factorization() = default;

    /// Builds from prime -> exponent pairs; zero exponents are dropped.
    static Factorization from_exponents(const std::map<Integer, long>& exponents) {
        Factorization f;
        for (const auto& [p, e] : exponents) {
            if (e < 0) throw std::domain_error("negative exponent for prime " + p.get_str());
            if (e > 0) f.factors_.push_back({p, static_cast<unsigned long>(e)});
        }
        return f;
    }

    const std::vector<PrimePower>& factors() const { return factors_; }
    bool empty() const { return factors_.empty(); }

    Integer value() const {
        Integer v = 1;
        for (const auto& pp : factors_) v *= integer_pow(pp.prime, pp.exponent);
        return v;
    }

    /// "2^3*7*41"; "1" for the empty factorization.
    std::string to_string() const {
        if (factors_.empty()) return "1";
        std::string out;
        for (const auto& pp : factors_) {
            if (!out.empty()) out += '*';
            out += pp.prime.get_str();
            if (pp.exponent > 1) out += "^" + std::to_string(pp.exponent);
        }
        return out;
    }

    friend bool operator==(const Factorization&, const Factorization&) = default;

private:
    std::vector<PrimePower> factors_;
};

class FactorizationCapError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

namespace detail {

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

inline std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
    std::uint64_t result = 1 % m;
    base %= m;
    while (exp) {
        if (exp & 1) result = mulmod(result, base, m);
        base = mulmod(base, base, m);
        exp >>= 1;
    }
    return result;
}

// Deterministic for all 64-bit n with these bases.
inline bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        if (n % p == 0) return n == p;
    }
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        std::uint64_t x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int r = 1; r < s; ++r) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

// Brent's variant with fixed seeds; n must be odd, composite, and not a prime power of 2.
inline std::uint64_t pollard_brent(std::uint64_t n) {
    for (std::uint64_t c = 1;; ++c) {
        std::uint64_t y = 2, x = 2, g = 1, q = 1, ys = 2;
        const std::uint64_t m = 128;
        std::uint64_t r = 1;
        auto f = [&](std::uint64_t v) { return (mulmod(v, v, n) + c) % n; };
        do {
            x = y;
            for (std::uint64_t i = 0; i < r; ++i) y = f(y);
            std::uint64_t k = 0;
            do {
                ys = y;
                for (std::uint64_t i = 0; i < std::min(m, r - k); ++i) {
                    y = f(y);
                    q = mulmod(q, x > y ? x - y : y - x, n);
                }
                g = std::gcd(q, n);
                k += m;
            } while (k < r && g == 1);
            r <<= 1;
        } while (g == 1);
        if (g == n) {
            do {
                ys = f(ys);
                g = std::gcd(x > ys ? x - ys : ys - x, n);
            } while (g == 1);
        }
        if (g != n) return g;
    }
}

inline void factor_u64(std::uint64_t n, std::map<Integer, long>& out) {
    if (n == 1) return;
    if (is_prime_u64(n)) {
        out[Integer(static_cast<unsigned long>(n))] += 1;
        return;
    }
    std::uint64_t d = pollard_brent(n);
    factor_u64(d, out);
    factor_u64(n / d, out);
}

}  // namespace detail

/// Complete prime factorization of n >= 1. Small primes are removed by trial
/// division; the remaining cofactor must fit in 64 bits.
inline Factorization factorize(const Integer& n) {
    if (n < 1) throw std::invalid_argument("factorize requires n >= 1, got " + n.get_str());
    constexpr unsigned long kTrialLimit = 100000;
    std::map<Integer, long> exps;
    Integer rest = n;
    static constexpr unsigned long kWheel[8] = {4, 2, 4, 2, 4, 6, 2, 6};
    // Trial divisors 2, 3, 5, then the mod-30 wheel starting at 7.
    auto next_divisor = [](unsigned long p, int& i) {
        if (p < 7) return p == 2 ? 3UL : (p == 3 ? 5UL : 7UL);
        unsigned long q = p + kWheel[i];
        i = (i + 1) % 8;
        return q;
    };
    unsigned long p = 2;
    int wheel = 0;
    while (p <= kTrialLimit && mpz_sizeinbase(rest.get_mpz_t(), 2) > 64) {
        while (mpz_divisible_ui_p(rest.get_mpz_t(), p)) {
            mpz_divexact_ui(rest.get_mpz_t(), rest.get_mpz_t(), p);
            exps[Integer(p)] += 1;
        }
        p = next_divisor(p, wheel);
    }
    if (mpz_sizeinbase(rest.get_mpz_t(), 2) > 64) {
        throw FactorizationCapError("cofactor " + rest.get_str() + " of " + n.get_str() +
                                    " exceeds the 64-bit factorization cap");
    }
    std::uint64_t small = mpz_get_ui(rest.get_mpz_t());
    for (; p <= kTrialLimit && static_cast<unsigned __int128>(p) * p <= small; p = next_divisor(p, wheel)) {
        while (small % p == 0) {
            small /= p;
            exps[Integer(p)] += 1;
        }
    }
    detail::factor_u64(small, exps);
    return Factorization::from_exponents(exps);
}

/// Factorization of a machine integer by plain trial division (periods are small).
inline std::map<std::uint64_t, long> small_factorize(std::uint64_t n) {
    std::map<std::uint64_t, long> out;
    for (std::uint64_t p = 2; p * p <= n; ++p) {
        while (n % p == 0) {
            out[p] += 1;
            n /= p;
        }
    }
    if (n > 1) out[n] += 1;
    return out;
}

}  // namespace singlink
