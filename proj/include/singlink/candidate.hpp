#pragma once

#include <algorithm>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "singlink/arith.hpp"

namespace singlink {

class InvalidCandidate : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

inline Weight weight_sum(std::span<const Weight> weights) {
    return std::accumulate(weights.begin(), weights.end(), Weight{0});
}

inline Weight weight_gcd(std::span<const Weight> weights) {
    Weight g = 0;
    for (Weight w : weights) g = std::gcd(g, w);
    return g;
}

inline std::string format_weights(std::span<const Weight> weights) {
    std::string out = "(";
    for (std::size_t i = 0; i < weights.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(weights[i]);
    }
    return out + ")";
}

/// A weight vector (sorted nondecreasing, gcd 1, at least three entries)
/// together with a degree d >= 1.
class Candidate {
public:
    /// Validates; weights must already be sorted.
    Candidate(std::vector<Weight> weights, Weight degree)
        : weights_(std::move(weights)), degree_(degree) {
        if (weights_.size() < 3) throw InvalidCandidate("need at least three weights");
        for (Weight w : weights_) {
            if (w < 1) throw InvalidCandidate("weights must be positive: " + format_weights(weights_));
        }
        if (!std::is_sorted(weights_.begin(), weights_.end()))
            throw InvalidCandidate("weights must be sorted nondecreasing: " + format_weights(weights_));
        if (weight_gcd(weights_) != 1)
            throw InvalidCandidate("weights must have gcd 1: " + format_weights(weights_));
        if (degree_ < 1) throw InvalidCandidate("degree must be positive, got " + std::to_string(degree_));
    }

    static Candidate from_unsorted(std::vector<Weight> weights, Weight degree) {
        std::sort(weights.begin(), weights.end());
        return Candidate(std::move(weights), degree);
    }

    /// Degree chosen so that sum(weights) - degree == index.
    static Candidate with_index(std::vector<Weight> weights, Weight index) {
        Weight d = weight_sum(weights) - index;
        return Candidate(std::move(weights), d);
    }

    std::span<const Weight> weights() const { return weights_; }
    Weight weight(std::size_t i) const { return weights_.at(i); }
    std::size_t size() const { return weights_.size(); }
    Weight degree() const { return degree_; }
    Weight index() const { return weight_sum(weights_) - degree_; }

    std::string to_string() const { return format_weights(weights_) + " d=" + std::to_string(degree_); }

    friend bool operator==(const Candidate&, const Candidate&) = default;
    friend auto operator<=>(const Candidate& a, const Candidate& b) {
        if (auto c = a.weights_ <=> b.weights_; c != 0) return c;
        return a.degree_ <=> b.degree_;
    }

private:
    std::vector<Weight> weights_;
    Weight degree_;
};

}  // namespace singlink
