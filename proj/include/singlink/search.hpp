#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <thread>
#include <utility>
#include <vector>

#include "singlink/candidate.hpp"
#include "singlink/fano.hpp"
#include "singlink/invariants.hpp"
#include "singlink/report.hpp"

namespace singlink {

struct SearchConfig {
    Weight index = 1;
    Weight max_degree = 1;
    bool require_quasi_smooth = true;
    bool require_well_formed = true;
    bool require_ke = false;
    bool rhs_only = false;
    unsigned partitions = 1;

    void validate() const {
        if (index < 1) throw std::invalid_argument("search index must be positive");
        if (max_degree < 1) throw std::invalid_argument("max_degree must be at least 1");
        if (partitions < 1) throw std::invalid_argument("partitions must be at least 1");
    }
};

// ---------------------------------------------------------------------------
// classify

/// Full invariant bundle for a five-weight candidate. Closed forms are checked
/// against the general expansion in exact arithmetic; any disagreement throws
/// ConsistencyError.
inline LinkReport classify(const Candidate& c) {
    if (c.size() != 5) throw InvalidCandidate("classify expects five weights: " + c.to_string());
    const auto w = c.weights();
    const Weight d = c.degree();

    LinkReport r(c);
    r.index = c.index();
    r.well_formed = well_formed(w);
    r.quasi_smooth = quasi_smooth(w, d);
    r.milnor_number = milnor_number(w, d);
    r.ke_sufficient = r.index >= 1 && ke_sufficient(w, d);

    const LambdaDivisor expansion = monodromy_divisor_expansion(w, d);
    if (expansion.weighted_degree() != r.milnor_number)
        throw ConsistencyError("divisor degree " + to_string(expansion.weighted_degree()) + " != Milnor number " +
                               to_string(r.milnor_number) + " for " + c.to_string());

    if (auto coprime = coprime_shortcut(w, d)) {
        if (coprime_divisor(*coprime, d) != expansion)
            throw ConsistencyError("coprime closed form " + coprime_divisor(*coprime, d).to_string() +
                                   " != expansion " + expansion.to_string() + " for " + c.to_string());
        r.shortcut = *coprime;
    } else if (auto split = degree_split(w, d)) {
        if (split_divisor(*split) != expansion)
            throw ConsistencyError("degree-split closed form " + split_divisor(*split).to_string() +
                                   " != expansion " + expansion.to_string() + " for " + c.to_string());
        r.shortcut = *split;
    }

    const bool isolated = r.quasi_smooth.all();
    if (!expansion.is_integral()) {
        if (isolated) assert_integral(expansion);  // throws: a quasi-smooth link must give integers
        return r;
    }
    r.divisor = expansion;
    if (expansion.coefficient_sum() < 0) {
        if (isolated) betti3(expansion);  // throws InconsistentDivisor
        return r;
    }
    r.b3 = betti3(expansion);
    if (*r.b3 == 0) {
        try {
            r.torsion_factored = torsion_factorization(expansion);
            r.torsion_order = r.torsion_factored->value();
        } catch (const InconsistentDivisor&) {
            if (isolated) throw;
        }
    }

    if (r.torsion_order) {
        if (const auto* cs = std::get_if<CoprimeShortcut>(&r.shortcut); cs && r.index == 1) {
            if (r.milnor_number != d - 1 || *r.torsion_order != d)
                throw ConsistencyError("coprime closed form predicts mu=d-1, |H3|=d for " + c.to_string());
        }
        if (const auto* s = std::get_if<DegreeSplit>(&r.shortcut)) {
            if (is_integral(s->triple_multiplicity) && is_integral(s->pair_multiplicity) &&
                s->triple_multiplicity > 0 && s->pair_multiplicity > 0) {
                auto inv = split_invariants(*s);
                if (!inv.milnor_number || Rational(*inv.milnor_number) != r.milnor_number ||
                    *inv.torsion_order != *r.torsion_order)
                    throw ConsistencyError("degree-split closed form disagrees on mu or |H3| for " + c.to_string());
            }
        }
    }
    is_rational_homology_sphere(r);  // cross-checks the closed-form criterion
    return r;
}

// ---------------------------------------------------------------------------
// enumeration

namespace detail {

// a*x + b*y == c in the two largest weights x = w3, y = w4.
struct Line {
    Weight a;
    Weight b;
    Weight c;
};

class PrefixSolver {
public:
    PrefixSolver(Weight w0, Weight w1, Weight w2, Weight index, Weight max_degree)
        : w_{w0, w1, w2}, total_(w0 + w1 + w2), index_(index), max_degree_(max_degree) {}

    // Every (w3, w4) with w2 <= w3 <= w4, degree <= max_degree, gcd 1 and
    // Condition I, sorted.
    const std::vector<std::pair<Weight, Weight>>& solve() {
        points_.clear();
        const Weight base = total_ - index_;  // d = base + x + y
        const Weight bounded_m3 =
            std::min({Weight{7}, (max_degree_ - 1) / w_[2], 2 + (total_ + base - 1) / w_[2]});
        for (int p4 = 0; p4 < 5; ++p4) {
            for (Weight m4 = 1; m4 <= 4; ++m4) {
                Line l4{};
                if (p4 < 3) l4 = {-1, m4 - 1, base - w_[p4]};
                else if (p4 == 3) l4 = {0, m4 - 1, base};
                else l4 = {-1, m4, base};

                if (l4.a == 0 && l4.b == 0) {
                    if (l4.c == 0) sweep_rule3(l4, unbounded_m3());
                    continue;
                }
                if (l4.b == 0) {
                    // w3 pinned by the w4 rule
                    if (l4.c % l4.a != 0) continue;
                    const Weight x = l4.c / l4.a;
                    if (x < w_[2] || x > x_max()) continue;
                    sweep_rule3(l4, unbounded_m3());
                    continue;
                }
                // A genuine w4 rule forces w4 <= w3 + w0 + w1 + w2, so
                // d - 1 < 2 w3 + sum + base and m3 <= 7.
                sweep_rule3(l4, bounded_m3);
            }
        }
        std::sort(points_.begin(), points_.end());
        points_.erase(std::unique(points_.begin(), points_.end()), points_.end());
        std::erase_if(points_, [&](const std::pair<Weight, Weight>& p) {
            const Weight ws[5] = {w_[0], w_[1], w_[2], p.first, p.second};
            return weight_gcd(ws) != 1 || condition_i_failure(ws, base + p.first + p.second).has_value();
        });
        return points_;
    }

private:
    Weight x_max() const { return (max_degree_ - (total_ - index_)) / 2; }
    Weight unbounded_m3() const { return std::max<Weight>(1, max_degree_ / w_[2]); }

    void sweep_rule3(const Line& l4, Weight m3max) {
        const Weight base = total_ - index_;
        for (int p3 = 0; p3 < 5; ++p3) {
            for (Weight m3 = 1; m3 <= m3max; ++m3) {
                Line l3{};
                if (p3 < 3) l3 = {m3 - 1, -1, base - w_[p3]};
                else if (p3 == 3) l3 = {m3, -1, base};
                else l3 = {m3 - 1, 0, base};
                intersect(l4, l3);
            }
        }
    }

    void consider(Weight x, Weight y) {
        if (x < w_[2] || y < x) return;
        const Weight d = total_ - index_ + x + y;
        if (d < 1 || d > max_degree_) return;
        points_.emplace_back(x, y);
    }

    void walk_line(const Line& l) {
        if (l.a == 0 && l.b == 0) {
            if (l.c != 0) return;
            for (Weight x = w_[2]; x <= x_max(); ++x)
                for (Weight y = x; total_ - index_ + x + y <= max_degree_; ++y) consider(x, y);
            return;
        }
        if (l.b != 0) {
            for (Weight x = w_[2]; x <= x_max(); ++x) {
                Weight num = l.c - l.a * x;
                if (num % l.b == 0) consider(x, num / l.b);
            }
            return;
        }
        if (l.c % l.a != 0) return;
        const Weight x = l.c / l.a;
        for (Weight y = x; total_ - index_ + x + y <= max_degree_; ++y) consider(x, y);
    }

    void intersect(const Line& p, const Line& q) {
        const bool p_trivial = p.a == 0 && p.b == 0;
        const bool q_trivial = q.a == 0 && q.b == 0;
        if (p_trivial || q_trivial) {
            if ((p_trivial && p.c != 0) || (q_trivial && q.c != 0)) return;
            walk_line(p_trivial ? q : p);
            return;
        }
        Weight det = p.a * q.b - q.a * p.b;
        if (det != 0) {
            Weight xn = p.c * q.b - q.c * p.b;
            if (det < 0) {
                det = -det;
                xn = -xn;
            }
            // range check before dividing
            if (xn < w_[2] * det || xn > x_max() * det || xn % det != 0) return;
            const Weight x = xn / det;
            Weight y;
            if (p.b != 0) {
                const Weight yn = p.c - p.a * x;
                if (yn % p.b != 0) return;
                y = yn / p.b;
            } else {
                const Weight yn = q.c - q.a * x;
                if (yn % q.b != 0) return;
                y = yn / q.b;
            }
            consider(x, y);
            return;
        }
        // Parallel: coincident iff (a, b, c) are proportional.
        if (p.a * q.c != q.a * p.c || p.b * q.c != q.b * p.c) return;
        walk_line(p);
    }

    Weight w_[3];
    Weight total_;
    Weight index_;
    Weight max_degree_;
    std::vector<std::pair<Weight, Weight>> points_;
};

}  // namespace detail

/// Visits, in lexicographic order, the candidates of one partition: sorted
/// 5-tuples with gcd 1 satisfying Condition I and sum(w) = d + index for some
/// d <= max_degree. Work is split by (w0, w1) prefix, assigned round-robin.
inline void enumerate_partition(const SearchConfig& cfg, unsigned part, unsigned parts,
                                const std::function<void(const Candidate&)>& visit) {
    cfg.validate();
    const Weight budget = cfg.max_degree + cfg.index;  // sum of weights is at most this
    std::size_t block = 0;
    for (Weight w0 = 1; 5 * w0 <= budget; ++w0) {
        for (Weight w1 = w0; w0 + 4 * w1 <= budget; ++w1, ++block) {
            if (block % parts != part) continue;
            for (Weight w2 = w1; w0 + w1 + 3 * w2 <= budget; ++w2) {
                detail::PrefixSolver solver(w0, w1, w2, cfg.index, cfg.max_degree);
                for (const auto& [x, y] : solver.solve()) {
                    const Weight d = w0 + w1 + w2 + x + y - cfg.index;
                    visit(Candidate({w0, w1, w2, x, y}, d));
                }
            }
        }
    }
}

inline void enumerate_candidates(const SearchConfig& cfg, const std::function<void(const Candidate&)>& visit) {
    enumerate_partition(cfg, 0, 1, visit);
}

inline std::vector<Candidate> enumerate_candidates(const SearchConfig& cfg) {
    std::vector<Candidate> out;
    enumerate_candidates(cfg, [&](const Candidate& c) { out.push_back(c); });
    return out;
}

/// Applies the configured filters to one candidate; returns the report when it survives.
inline std::optional<LinkReport> search_filter(const SearchConfig& cfg, const Candidate& c) {
    if (cfg.require_well_formed && !well_formed(c.weights())) return std::nullopt;
    if (cfg.require_quasi_smooth && !quasi_smooth(c).all()) return std::nullopt;
    if (cfg.require_ke && !ke_sufficient(c)) return std::nullopt;
    LinkReport r = classify(c);
    if (cfg.rhs_only && !(r.b3 && *r.b3 == 0)) return std::nullopt;
    return r;
}

/// Classified candidates passing every enabled filter, ordered by weights
/// regardless of the partition count.
inline std::vector<LinkReport> search(const SearchConfig& cfg) {
    cfg.validate();
    const unsigned parts = cfg.partitions;
    std::vector<std::vector<LinkReport>> buckets(parts);
    auto work = [&](unsigned part) {
        enumerate_partition(cfg, part, parts, [&](const Candidate& c) {
            if (auto r = search_filter(cfg, c)) buckets[part].push_back(std::move(*r));
        });
    };
    if (parts == 1) {
        work(0);
    } else {
        std::vector<std::exception_ptr> errors(parts);
        std::vector<std::thread> workers;
        for (unsigned p = 0; p < parts; ++p) {
            workers.emplace_back([&, p] {
                try {
                    work(p);
                } catch (...) {
                    errors[p] = std::current_exception();
                }
            });
        }
        for (auto& t : workers) t.join();
        for (auto& e : errors) {
            if (e) std::rethrow_exception(e);
        }
    }
    std::vector<LinkReport> merged;
    for (auto& b : buckets) std::move(b.begin(), b.end(), std::back_inserter(merged));
    std::sort(merged.begin(), merged.end(),
              [](const LinkReport& a, const LinkReport& b) { return a.candidate < b.candidate; });
    return merged;
}

/// search() restricted to rational homology spheres.
inline std::vector<LinkReport> search_rhs(SearchConfig cfg) {
    cfg.rhs_only = true;
    return search(cfg);
}

}  // namespace singlink
