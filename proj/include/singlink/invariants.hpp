#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "singlink/arith.hpp"
#include "singlink/candidate.hpp"
#include "singlink/divisor_ring.hpp"
#include "singlink/factorize.hpp"

namespace singlink {

/// A divisor that cannot come from a link: negative (t-1)-multiplicity or a
/// negative prime exponent in Delta(1).
class InconsistentDivisor : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Two routes to the same invariant disagreed. Always a bug.
class ConsistencyError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// d / w_i in lowest terms.
struct RationalWeight {
    Weight u = 1;
    Weight v = 1;

    friend bool operator==(const RationalWeight&, const RationalWeight&) = default;
};

inline std::vector<RationalWeight> rational_weights(std::span<const Weight> weights, Weight degree) {
    std::vector<RationalWeight> out;
    out.reserve(weights.size());
    for (Weight w : weights) {
        Weight g = std::gcd(degree, w);
        out.push_back({degree / g, w / g});
    }
    return out;
}

inline std::vector<RationalWeight> rational_weights(const Candidate& c) {
    return rational_weights(c.weights(), c.degree());
}

/// prod_i (d / w_i - 1). Integral for quasi-smooth weight systems; callers
/// decide whether a fractional value is an error.
inline Rational milnor_number(std::span<const Weight> weights, Weight degree) {
    Rational mu = 1;
    for (Weight w : weights) mu *= make_rational(degree - w, w);
    return mu;
}

inline Rational milnor_number(const Candidate& c) { return milnor_number(c.weights(), c.degree()); }

/// Expands prod_i (Lambda_{u_i} / v_i - 1) without asserting integrality.
inline LambdaDivisor monodromy_divisor_expansion(std::span<const Weight> weights, Weight degree) {
    LambdaDivisor product = LambdaDivisor::constant(1);
    for (const auto& rw : rational_weights(weights, degree)) {
        LambdaDivisor factor = LambdaDivisor::lambda(to_integer(rw.u)) * make_rational(1, rw.v);
        factor -= LambdaDivisor::constant(1);
        product *= factor;
    }
    return product;
}

/// Divisor of the characteristic polynomial of the monodromy.
/// Throws IntegralityError if the expansion leaves Z (not an isolated singularity).
inline LambdaDivisor monodromy_divisor(std::span<const Weight> weights, Weight degree) {
    LambdaDivisor div = monodromy_divisor_expansion(weights, degree);
    assert_integral(div);
    return div;
}

inline LambdaDivisor monodromy_divisor(const Candidate& c) { return monodromy_divisor(c.weights(), c.degree()); }

/// Multiplicity of (t - 1) in Delta(t), i.e. the sum of all coefficients
/// (the period-1 coefficient included).
inline Integer betti3(const LambdaDivisor& div) {
    assert_integral(div);
    Rational sum = div.coefficient_sum();
    if (sum < 0) throw InconsistentDivisor("negative (t-1) multiplicity " + to_string(sum) + " in " + div.to_string());
    return sum.get_num();
}

/// Delta(1) = prod_{j>=2} j^{a_j} as a factorization. Requires b3 == 0.
inline Factorization torsion_factorization(const LambdaDivisor& div) {
    if (betti3(div) != 0) throw std::invalid_argument("torsion order needs b3 == 0, divisor " + div.to_string());
    std::map<Integer, long> exps;
    for (const auto& [period, coeff] : div.terms()) {
        if (period == 1) continue;
        long a = to_int64(coeff.get_num());
        const Factorization f = factorize(period);
        for (const auto& pp : f.factors())
            exps[pp.prime] += static_cast<long>(pp.exponent) * a;
    }
    for (const auto& [p, e] : exps) {
        if (e < 0) throw InconsistentDivisor("negative exponent of " + p.get_str() + " in Delta(1) for " + div.to_string());
    }
    return Factorization::from_exponents(exps);
}

inline Integer torsion_order(const LambdaDivisor& div) { return torsion_factorization(div).value(); }

// ---------------------------------------------------------------------------
// Dense Alexander polynomial (verification oracle)

struct IntegerPolynomial {
    std::vector<Integer> coefficients;  // ascending powers of t

    std::size_t degree() const { return coefficients.empty() ? 0 : coefficients.size() - 1; }

    Integer value_at(const Integer& t) const {
        Integer v = 0;
        for (auto it = coefficients.rbegin(); it != coefficients.rend(); ++it) v = v * t + *it;
        return v;
    }

    friend bool operator==(const IntegerPolynomial&, const IntegerPolynomial&) = default;
};

inline constexpr std::size_t kDefaultExpansionCap = 10000;

/// Delta(t) = prod_j (t^j - 1)^{a_j}, expanded densely. The numerator (all
/// positive a_j) is built first, so the cap bounds sum_{a_j > 0} j * a_j.
/// Returns nullopt when the cap would be exceeded.
inline std::optional<IntegerPolynomial> alexander_polynomial(const LambdaDivisor& div,
                                                             std::size_t cap = kDefaultExpansionCap) {
    assert_integral(div);
    Integer numerator_degree = 0;
    for (const auto& [period, coeff] : div.terms()) {
        if (coeff > 0) numerator_degree += period * coeff.get_num();
    }
    if (numerator_degree > Integer(static_cast<unsigned long>(cap))) return std::nullopt;

    std::vector<Integer> p{Integer(1)};
    for (const auto& [period, coeff] : div.terms()) {
        if (coeff <= 0) continue;
        const std::size_t j = mpz_get_ui(period.get_mpz_t());
        for (long k = to_int64(coeff.get_num()); k > 0; --k) {
            // p *= (t^j - 1)
            p.resize(p.size() + j);
            for (std::size_t e = p.size(); e-- > 0;) {
                p[e] = (e >= j ? p[e - j] : Integer(0)) - p[e];
            }
        }
    }
    for (const auto& [period, coeff] : div.terms()) {
        if (coeff >= 0) continue;
        const std::size_t j = mpz_get_ui(period.get_mpz_t());
        for (long k = -to_int64(coeff.get_num()); k > 0; --k) {
            // p /= (t^j - 1): p[e] = q[e-j] - q[e]  =>  q[e] = q[e-j] - p[e]
            if (p.size() <= j)
                throw std::logic_error("Alexander polynomial: inexact division by t^" + std::to_string(j) + "-1");
            std::vector<Integer> q(p.size() - j);
            for (std::size_t e = 0; e < q.size(); ++e) q[e] = (e >= j ? q[e - j] : Integer(0)) - p[e];
            for (std::size_t e = q.size(); e < p.size(); ++e) {
                if ((e >= j ? q[e - j] : Integer(0)) != p[e])
                    throw std::logic_error("Alexander polynomial: nonzero remainder dividing by t^" + std::to_string(j) + "-1");
            }
            p = std::move(q);
        }
    }
    return IntegerPolynomial{std::move(p)};
}

// ---------------------------------------------------------------------------
// Closed forms

/// Every weight coprime to the degree: the divisor collapses to
/// multiplicity * Lambda_d - 1.
struct CoprimeShortcut {
    Rational multiplicity;           // coefficient of Lambda_d
    std::optional<Rational> r01;     // d/(w0 w1) - 1/w0 - 1/w1
    std::optional<Rational> r23;     // d/(w2 w3) - 1/w2 - 1/w3

    friend bool operator==(const CoprimeShortcut&, const CoprimeShortcut&) = default;
};

inline Rational pair_term(Weight degree, Weight wi, Weight wj) {
    return make_rational(degree, wi * wj) - make_rational(1, wi) - make_rational(1, wj);
}

/// Present iff gcd(w_i, d) == 1 for every i.
inline std::optional<CoprimeShortcut> coprime_shortcut(std::span<const Weight> weights, Weight degree) {
    for (Weight w : weights) {
        if (std::gcd(w, degree) != 1) return std::nullopt;
    }
    CoprimeShortcut out;
    if (weights.size() >= 4) {
        out.r01 = pair_term(degree, weights[0], weights[1]);
        out.r23 = pair_term(degree, weights[2], weights[3]);
    }
    if (weights.size() == 5 && weight_sum(weights) - degree == 1) {
        const Rational& r01 = *out.r01;
        const Rational& r23 = *out.r23;
        const Weight w4 = weights[4];
        Rational inner = Rational(to_integer(degree)) * r01 * r23 + r01 + r23;
        out.multiplicity = Rational(to_integer(degree)) * inner / to_integer(w4) + make_rational(1, w4) - inner;
        return out;
    }
    // General index / weight count: inclusion-exclusion over nonempty subsets S,
    // sum (-1)^{n-|S|} d^{|S|-1} / prod_S w_i.
    const std::size_t n = weights.size();
    Rational total = 0;
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
        Rational term = 1;
        std::size_t bits = 0;
        for (std::size_t i = 0; i < n; ++i) {
            if (mask >> i & 1) {
                term *= make_rational(degree, weights[i]);
                ++bits;
            }
        }
        term /= to_integer(degree);
        if ((n - bits) % 2) term = -term;
        total += term;
    }
    out.multiplicity = total;
    return out;
}

inline std::optional<CoprimeShortcut> coprime_shortcut(const Candidate& c) {
    return coprime_shortcut(c.weights(), c.degree());
}

/// d = triple_numerator * pair_numerator with coprime factors, three rational
/// weights of the form triple_numerator / v and two of the form pair_numerator / v.
/// The divisor is then l*n*Lambda_d + l*Lambda_m3 - n*Lambda_m2 - 1.
struct DegreeSplit {
    Weight triple_numerator = 0;          // m3
    Weight pair_numerator = 0;            // m2
    std::vector<Weight> triple_denominators;
    std::vector<Weight> pair_denominators;
    std::vector<std::size_t> triple_indices;
    std::vector<std::size_t> pair_indices;
    Rational triple_multiplicity;         // l
    Rational pair_multiplicity;           // n

    friend bool operator==(const DegreeSplit&, const DegreeSplit&) = default;
};

inline std::optional<DegreeSplit> degree_split(std::span<const Weight> weights, Weight degree) {
    if (weights.size() != 5 || degree < 1) return std::nullopt;
    const auto rw = rational_weights(weights, degree);
    std::vector<Weight> prime_powers;
    for (const auto& [p, e] : small_factorize(static_cast<std::uint64_t>(degree))) {
        Weight pe = 1;
        for (long k = 0; k < e; ++k) pe *= static_cast<Weight>(p);
        prime_powers.push_back(pe);
    }
    const std::size_t k = prime_powers.size();
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << k); ++mask) {
        Weight m3 = 1;
        for (std::size_t i = 0; i < k; ++i) {
            if (mask >> i & 1) m3 *= prime_powers[i];
        }
        const Weight m2 = degree / m3;
        DegreeSplit split;
        split.triple_numerator = m3;
        split.pair_numerator = m2;
        for (std::size_t i = 0; i < rw.size(); ++i) {
            if (rw[i].u == m3) {
                split.triple_indices.push_back(i);
                split.triple_denominators.push_back(rw[i].v);
            } else if (rw[i].u == m2) {
                split.pair_indices.push_back(i);
                split.pair_denominators.push_back(rw[i].v);
            }
        }
        if (split.triple_indices.size() != 3 || split.pair_indices.size() != 2) continue;

        const auto& tv = split.triple_denominators;
        const auto& pv = split.pair_denominators;
        const Integer m3z = to_integer(m3);
        Rational l = Rational(m3z * m3z) / to_integer(tv[0] * tv[1] * tv[2]);
        l -= Rational(m3z) * (make_rational(1, tv[0] * tv[1]) + make_rational(1, tv[0] * tv[2]) +
                              make_rational(1, tv[1] * tv[2]));
        l += make_rational(1, tv[0]) + make_rational(1, tv[1]) + make_rational(1, tv[2]);
        Rational n = make_rational(m2, pv[0] * pv[1]) - make_rational(1, pv[0]) - make_rational(1, pv[1]);
        split.triple_multiplicity = l;
        split.pair_multiplicity = n;
        return split;
    }
    return std::nullopt;
}

inline std::optional<DegreeSplit> degree_split(const Candidate& c) { return degree_split(c.weights(), c.degree()); }

/// The divisor predicted by a degree split.
inline LambdaDivisor split_divisor(const DegreeSplit& s) {
    const Integer d = to_integer(s.triple_numerator) * to_integer(s.pair_numerator);
    LambdaDivisor div = LambdaDivisor::lambda(d) * (s.triple_multiplicity * s.pair_multiplicity);
    div += LambdaDivisor::lambda(to_integer(s.triple_numerator)) * s.triple_multiplicity;
    div -= LambdaDivisor::lambda(to_integer(s.pair_numerator)) * s.pair_multiplicity;
    div -= LambdaDivisor::constant(1);
    return div;
}

/// The divisor predicted by the coprime shortcut.
inline LambdaDivisor coprime_divisor(const CoprimeShortcut& s, Weight degree) {
    return LambdaDivisor::lambda(to_integer(degree)) * s.multiplicity - LambdaDivisor::constant(1);
}

struct SplitInvariants {
    Integer b3;
    std::optional<Integer> milnor_number;  // only when b3 == 0
    std::optional<Integer> torsion_order;  // only when b3 == 0
};

/// b3 = (n + 1)(l - 1); for l == 1 also mu = (m3 - 1)(n m2 + 1) and |H3| = m3^{n+1}.
inline SplitInvariants split_invariants(const DegreeSplit& s) {
    const Rational& l = s.triple_multiplicity;
    const Rational& n = s.pair_multiplicity;
    if (!is_integral(l) || !is_integral(n) || l <= 0 || n <= 0)
        throw std::invalid_argument("split multiplicities must be positive integers, got l=" + to_string(l) +
                                    " n=" + to_string(n));
    const Integer li = l.get_num();
    const Integer ni = n.get_num();
    SplitInvariants out{(ni + 1) * (li - 1), std::nullopt, std::nullopt};
    if (li == 1) {
        out.milnor_number = Integer(to_integer(s.triple_numerator) - 1) * (ni * to_integer(s.pair_numerator) + 1);
        out.torsion_order = integer_pow(to_integer(s.triple_numerator), mpz_get_ui(ni.get_mpz_t()) + 1);
    }
    return out;
}

}  // namespace singlink
