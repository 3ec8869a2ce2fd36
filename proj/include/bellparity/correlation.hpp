// Measurement-outcome correlations P = P_lc + P_nlc assembled from the
// density elements, plus the modified Bell inequality and the CHSH sum.
#pragma once

#include <cmath>
#include <cstdlib>

#include "bellparity/bellcat.hpp"
#include "bellparity/spin.hpp"

namespace bellparity {

// Absolute tolerance for calling an inequality violated; all quantities are O(1).
inline constexpr double kViolationTol = 1e-12;

enum class Mode { closed_form, oracle };
enum class Part { local_only, total };

struct CorrelationBreakdown {
    double p_lc = 0.0;
    double p_nlc = 0.0;
    double p_total = 0.0;  // p_lc + p_nlc by construction
    double weight = 0.0;   // W = sum of the four local elements; 1 only at s = 1/2

    double part(Part which) const noexcept {
        return which == Part::local_only ? p_lc : p_total;
    }
};

inline CorrelationBreakdown from_elements(const DensityElements& e) noexcept {
    CorrelationBreakdown c;
    for (std::size_t i = 0; i < 4; ++i) {
        const int sign = correlation_sign(kOutcomes[i]);
        c.p_lc += sign * e.local[i];
        c.p_nlc += sign * e.nonlocal[i];
    }
    c.p_total = c.p_lc + c.p_nlc;
    c.weight = e.local_weight();
    return c;
}

// Correlation of the two +-1 outcomes, split local/non-local. Both modes
// must agree to 1e-12; closed_form is the production path, oracle the check.
inline CorrelationBreakdown correlate(const StateParams& p, const Direction& a,
                                      const Direction& b, Mode mode = Mode::closed_form) {
    return from_elements(mode == Mode::closed_form ? closed_form_elements(p, a, b)
                                                   : oracle_elements(p, a, b));
}

struct BellTriple {
    StateParams state;
    Direction a, b, c;
};

struct ChshQuad {
    StateParams state;
    Direction a, b, c, d;
};

struct BellResult {
    double lhs = 0.0;  // |P(ab) - P(ac)|
    double rhs = 0.0;  // 1 - P(bc)
    bool violated = false;

    double margin() const noexcept { return lhs - rhs; }
};

// Modified Bell inequality for parallel polarization:
//   |P(ab) - P(ac)| <= 1 - P(bc).
// With which = local_only this is a theorem and can never be violated.
inline BellResult bell_lhs_rhs(const BellTriple& t, Part which,
                               Mode mode = Mode::closed_form) {
    const double pab = correlate(t.state, t.a, t.b, mode).part(which);
    const double pac = correlate(t.state, t.a, t.c, mode).part(which);
    const double pbc = correlate(t.state, t.b, t.c, mode).part(which);
    BellResult r;
    r.lhs = std::abs(pab - pac);
    r.rhs = 1.0 - pbc;
    r.violated = r.lhs > r.rhs + kViolationTol;
    return r;
}

// CHSH combination |P(ab) + P(ac) + P(db) - P(dc)|; classically bounded by 2,
// quantum-mechanically by 2*sqrt(2). The local_only value is <= 2 for every
// spin and every input.
inline double chsh(const ChshQuad& q, Part which, Mode mode = Mode::closed_form) {
    const double pab = correlate(q.state, q.a, q.b, mode).part(which);
    const double pac = correlate(q.state, q.a, q.c, mode).part(which);
    const double pdb = correlate(q.state, q.d, q.b, mode).part(which);
    const double pdc = correlate(q.state, q.d, q.c, mode).part(which);
    return std::abs(pab + pac + pdb - pdc);
}

}  // namespace bellparity
