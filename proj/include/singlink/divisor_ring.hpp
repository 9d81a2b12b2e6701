#pragma once

#include <initializer_list>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>

#include "singlink/arith.hpp"

namespace singlink {

class IntegralityError : public std::logic_error {
public:
    IntegralityError(Integer period, Rational coefficient)
        : std::logic_error("non-integral coefficient " + to_string(coefficient) + " at period " +
                           period.get_str()),
          period_(std::move(period)),
          coefficient_(std::move(coefficient)) {}

    const Integer& period() const { return period_; }
    const Rational& coefficient() const { return coefficient_; }

private:
    Integer period_;
    Rational coefficient_;
};

/// Element of the integral group ring Z[C*] spanned by the divisors
/// Lambda_n = div(t^n - 1).
///
/// Stored as a sparse map period -> coefficient with zero coefficients pruned.
/// Period 1 carries the constant term, since Lambda_1 = <1>. Coefficients are
/// exact rationals so that intermediate scalings by 1/v stay exact; call
/// assert_integral() once a computation is expected to have landed in Z.
///
/// Multiplication follows Lambda_a * Lambda_b = gcd(a, b) * Lambda_lcm(a, b).
class LambdaDivisor {
public:
    using Terms = std::map<Integer, Rational>;

    LambdaDivisor() = default;

    LambdaDivisor(std::initializer_list<std::pair<long, Rational>> terms) {
        for (const auto& [period, coeff] : terms) accumulate(checked_period(Integer(period)), coeff);
    }

    /// Lambda_n.
    static LambdaDivisor lambda(const Integer& n) {
        LambdaDivisor d;
        d.terms_.emplace(checked_period(n), Rational(1));
        return d;
    }

    /// c * Lambda_1.
    static LambdaDivisor constant(const Rational& c) {
        LambdaDivisor d;
        d.accumulate(Integer(1), c);
        return d;
    }

    const Terms& terms() const { return terms_; }
    bool empty() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }

    Rational coefficient(const Integer& period) const {
        auto it = terms_.find(period);
        return it == terms_.end() ? Rational(0) : it->second;
    }

    bool is_integral() const {
        for (const auto& [period, coeff] : terms_) {
            if (!singlink::is_integral(coeff)) return false;
        }
        return true;
    }

    /// Sum of all coefficients: the multiplicity of (t - 1) in prod (t^j - 1)^{a_j}.
    Rational coefficient_sum() const {
        Rational s = 0;
        for (const auto& [period, coeff] : terms_) s += coeff;
        return s;
    }

    /// sum_j j * a_j: the degree of prod (t^j - 1)^{a_j}.
    Rational weighted_degree() const {
        Rational s = 0;
        for (const auto& [period, coeff] : terms_) s += coeff * period;
        return s;
    }

    LambdaDivisor& operator+=(const LambdaDivisor& other) {
        for (const auto& [period, coeff] : other.terms_) accumulate(period, coeff);
        return *this;
    }

    LambdaDivisor& operator-=(const LambdaDivisor& other) {
        for (const auto& [period, coeff] : other.terms_) accumulate(period, -coeff);
        return *this;
    }

    LambdaDivisor& operator*=(const Rational& c) {
        if (c == 0) {
            terms_.clear();
            return *this;
        }
        for (auto& [period, coeff] : terms_) coeff *= c;
        return *this;
    }

    friend LambdaDivisor operator+(LambdaDivisor a, const LambdaDivisor& b) { return a += b; }
    friend LambdaDivisor operator-(LambdaDivisor a, const LambdaDivisor& b) { return a -= b; }
    friend LambdaDivisor operator-(LambdaDivisor a) { return a *= Rational(-1); }
    friend LambdaDivisor operator*(LambdaDivisor a, const Rational& c) { return a *= c; }
    friend LambdaDivisor operator*(const Rational& c, LambdaDivisor a) { return a *= c; }

    friend LambdaDivisor operator*(const LambdaDivisor& a, const LambdaDivisor& b) {
        LambdaDivisor out;
        Integer g;
        Integer l;
        for (const auto& [pa, ca] : a.terms_) {
            for (const auto& [pb, cb] : b.terms_) {
                mpz_gcd(g.get_mpz_t(), pa.get_mpz_t(), pb.get_mpz_t());
                mpz_lcm(l.get_mpz_t(), pa.get_mpz_t(), pb.get_mpz_t());
                out.accumulate(l, ca * cb * g);
            }
        }
        return out;
    }

    LambdaDivisor& operator*=(const LambdaDivisor& other) { return *this = *this * other; }

    friend bool operator==(const LambdaDivisor&, const LambdaDivisor&) = default;

    /// "11*L425 + L17 - 11*L25 - L1"; "0" when empty. Highest period first.
    std::string to_string() const {
        if (terms_.empty()) return "0";
        std::string out;
        for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
            const auto& [period, coeff] = *it;
            bool negative = coeff < 0;
            Rational magnitude = negative ? Rational(-coeff) : coeff;
            if (out.empty()) {
                if (negative) out += "-";
            } else {
                out += negative ? " - " : " + ";
            }
            if (magnitude != 1) out += singlink::to_string(magnitude) + "*";
            out += "L" + period.get_str();
        }
        return out;
    }

private:
    static Integer checked_period(const Integer& n) {
        if (n < 1) throw std::invalid_argument("invalid period " + n.get_str() + ": periods start at 1");
        return n;
    }

    void accumulate(const Integer& period, Rational coeff) {
        coeff.canonicalize();
        if (coeff == 0) return;
        auto [it, inserted] = terms_.try_emplace(period, std::move(coeff));
        if (!inserted) {
            it->second += coeff;
            if (it->second == 0) terms_.erase(it);
        }
    }

    Terms terms_;
};

inline LambdaDivisor lambda(const Integer& n) { return LambdaDivisor::lambda(n); }
inline LambdaDivisor lambda(long n) { return LambdaDivisor::lambda(Integer(n)); }

inline LambdaDivisor add(const LambdaDivisor& a, const LambdaDivisor& b) { return a + b; }
inline LambdaDivisor scale(const LambdaDivisor& a, const Rational& c) { return a * c; }
inline LambdaDivisor multiply(const LambdaDivisor& a, const LambdaDivisor& b) { return a * b; }

/// Returns `a` unchanged when every coefficient is an integer; throws
/// IntegralityError naming the first offending period otherwise.
inline const LambdaDivisor& assert_integral(const LambdaDivisor& a) {
    for (const auto& [period, coeff] : a.terms()) {
        if (!is_integral(coeff)) throw IntegralityError(period, coeff);
    }
    return a;
}

}  // namespace singlink
