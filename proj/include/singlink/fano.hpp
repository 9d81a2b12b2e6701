#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string_view>
#include <utility>
#include <vector>

#include "singlink/arith.hpp"
#include "singlink/candidate.hpp"

namespace singlink {

/// I = sum(w) - d.
inline Weight fano_index(std::span<const Weight> weights, Weight degree) { return weight_sum(weights) - degree; }
inline Weight fano_index(const Candidate& c) { return c.index(); }

/// Every sub-multiset obtained by dropping one weight has gcd 1.
inline bool well_formed(std::span<const Weight> weights) {
    for (std::size_t skip = 0; skip < weights.size(); ++skip) {
        Weight g = 0;
        for (std::size_t i = 0; i < weights.size(); ++i) {
            if (i != skip) g = std::gcd(g, weights[i]);
        }
        if (g != 1) return false;
    }
    return true;
}

/// reachable[t] == 1 iff t is a nonnegative integer combination of `weights`, 0 <= t <= limit.
inline std::vector<char> representable_table(Weight limit, std::span<const Weight> weights) {
    std::vector<char> reachable(static_cast<std::size_t>(limit < 0 ? 0 : limit) + 1, 0);
    reachable[0] = 1;
    for (Weight w : weights) {
        if (w <= 0) throw std::invalid_argument("representable: weights must be positive");
        for (Weight t = w; t <= limit; ++t) {
            if (reachable[static_cast<std::size_t>(t - w)]) reachable[static_cast<std::size_t>(t)] = 1;
        }
    }
    return reachable;
}

/// target == sum b_k * weights[k] for some b_k >= 0.
inline bool representable(Weight target, std::span<const Weight> weights) {
    if (target < 0) return false;
    if (target == 0) return true;
    return representable_table(target, weights)[static_cast<std::size_t>(target)] != 0;
}

inline bool representable(Weight target, std::initializer_list<Weight> weights) {
    return representable(target, std::span<const Weight>(weights.begin(), weights.size()));
}

/// Outcome of the three monomial-existence conditions for a degree-d
/// hypersurface in weighted P^4, with the first witness that fails each.
struct QuasiSmoothDiagnostics {
    struct Check {
        bool ok = true;
        std::optional<std::size_t> i;
        std::optional<std::size_t> j;
    };

    Check condition_i;    // each z_i^m z_j (m >= 1) of degree d
    Check condition_ii;   // per pair: z_i^a z_j^b, or z_i^a z_j^b z_k and z_i^c z_j^e z_l
    Check condition_iii;  // per pair: a degree-d monomial avoiding both variables

    // Condition II draws k != l from the complement of {i, j}. The looser
    // reading that lets k or l hit {i, j} is equivalent: such a monomial is
    // already a two-variable monomial satisfying the first alternative.
    static constexpr std::string_view condition_ii_reading = "strict-complement";

    bool all() const { return condition_i.ok && condition_ii.ok && condition_iii.ok; }
};

/// Condition I only: for each i some j (j == i allowed) and m >= 1 with m*w_i + w_j == d.
inline std::optional<std::size_t> condition_i_failure(std::span<const Weight> weights, Weight degree) {
    for (std::size_t i = 0; i < weights.size(); ++i) {
        bool found = false;
        for (std::size_t j = 0; j < weights.size() && !found; ++j) {
            Weight rest = degree - weights[j];
            found = rest >= weights[i] && rest % weights[i] == 0;
        }
        if (!found) return i;
    }
    return std::nullopt;
}

inline QuasiSmoothDiagnostics quasi_smooth(std::span<const Weight> weights, Weight degree) {
    if (weights.size() != 5) throw std::invalid_argument("quasi-smoothness conditions are stated for five weights");
    if (degree < 1) throw std::invalid_argument("degree must be positive");
    constexpr std::size_t n = 5;
    QuasiSmoothDiagnostics diag;

    if (auto bad = condition_i_failure(weights, degree)) {
        diag.condition_i = {false, bad, std::nullopt};
    }

    // Representability tables up to d, memoized by weight-subset bitmask.
    std::vector<std::vector<char>> memo(std::size_t{1} << n);
    auto table = [&](unsigned mask) -> const std::vector<char>& {
        auto& slot = memo[mask];
        if (slot.empty()) {
            std::vector<Weight> sub;
            for (std::size_t k = 0; k < n; ++k) {
                if (mask >> k & 1) sub.push_back(weights[k]);
            }
            slot = representable_table(degree, sub);
        }
        return slot;
    };
    auto hits = [&](unsigned mask, Weight target) {
        return target >= 0 && table(mask)[static_cast<std::size_t>(target)] != 0;
    };

    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const unsigned pair = (1u << i) | (1u << j);
            if (diag.condition_ii.ok) {
                bool ok = hits(pair, degree);
                if (!ok) {
                    int witnesses = 0;
                    for (std::size_t k = 0; k < n; ++k) {
                        if (k == i || k == j) continue;
                        if (hits(pair, degree - weights[k])) ++witnesses;
                    }
                    ok = witnesses >= 2;
                }
                if (!ok) diag.condition_ii = {false, i, j};
            }
            if (diag.condition_iii.ok) {
                const unsigned rest = ((1u << n) - 1) & ~pair;
                if (!hits(rest, degree)) diag.condition_iii = {false, i, j};
            }
        }
    }
    return diag;
}

inline QuasiSmoothDiagnostics quasi_smooth(const Candidate& c) { return quasi_smooth(c.weights(), c.degree()); }

/// Sufficient Kaehler-Einstein test for a Fano hypersurface of index I >= 1 in
/// P(w_0..w_n): d (n - 1) I < n w_0 w_1 with w_0, w_1 the two smallest weights.
inline bool ke_sufficient(std::span<const Weight> weights, Weight degree, int n = 4) {
    if (weights.size() < 2) throw std::invalid_argument("ke_sufficient needs at least two weights");
    const Weight index = fano_index(weights, degree);
    if (index < 1) throw std::invalid_argument("ke_sufficient requires positive index, got " + std::to_string(index));
    Weight w0 = weights[0];
    Weight w1 = weights[1];
    if (w1 < w0) std::swap(w0, w1);
    for (std::size_t k = 2; k < weights.size(); ++k) {
        if (weights[k] < w0) {
            w1 = w0;
            w0 = weights[k];
        } else if (weights[k] < w1) {
            w1 = weights[k];
        }
    }
    const Integer lhs = to_integer(degree) * (n - 1) * to_integer(index);
    const Integer rhs = to_integer(w0) * to_integer(w1) * n;
    return lhs < rhs;
}

inline bool ke_sufficient(const Candidate& c, int n = 4) { return ke_sufficient(c.weights(), c.degree(), n); }

}  // namespace singlink
