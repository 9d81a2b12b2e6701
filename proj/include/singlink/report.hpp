#pragma once

#include <optional>
#include <variant>

#include "singlink/arith.hpp"
#include "singlink/candidate.hpp"
#include "singlink/divisor_ring.hpp"
#include "singlink/factorize.hpp"
#include "singlink/fano.hpp"
#include "singlink/invariants.hpp"

namespace singlink {

struct GeneralShortcut {
    friend bool operator==(const GeneralShortcut&, const GeneralShortcut&) = default;
};

using Shortcut = std::variant<CoprimeShortcut, DegreeSplit, GeneralShortcut>;

/// Everything computed about one candidate.
///
/// `divisor` and `b3` are absent only when the Milnor-Orlik expansion is not
/// integral, which happens exactly for weight systems that do not define an
/// isolated singularity.
struct LinkReport {
    explicit LinkReport(Candidate c) : candidate(std::move(c)) {}

    Candidate candidate;
    Weight index = 0;
    bool well_formed = false;
    QuasiSmoothDiagnostics quasi_smooth;
    Rational milnor_number;
    std::optional<LambdaDivisor> divisor;
    std::optional<Integer> b3;
    std::optional<Integer> torsion_order;          // present iff b3 == 0
    std::optional<Factorization> torsion_factored;  // present iff b3 == 0
    Shortcut shortcut = GeneralShortcut{};
    bool ke_sufficient = false;
};

/// b3 == 0, cross-checked against whichever closed form applies.
inline bool is_rational_homology_sphere(const LinkReport& report) {
    if (!report.b3) return false;
    const bool general = *report.b3 == 0;
    if (const auto* c = std::get_if<CoprimeShortcut>(&report.shortcut)) {
        if ((c->multiplicity == 1) != general)
            throw ConsistencyError("coprime closed form disagrees on b3 for " + report.candidate.to_string());
    } else if (const auto* s = std::get_if<DegreeSplit>(&report.shortcut)) {
        if ((s->triple_multiplicity == 1) != general)
            throw ConsistencyError("degree-split closed form disagrees on b3 for " + report.candidate.to_string());
    }
    return general;
}

}  // namespace singlink
