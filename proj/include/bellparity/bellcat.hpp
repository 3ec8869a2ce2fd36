// The bipartite "Bell cat" state c+|+s,+s> + c-|-s,-s> with parallel
// polarization, and the diagonal density-matrix elements in the four-outcome
// coherent basis, split into local (mixed) and non-local (interference) parts.
//
// Two independent routes are provided:
//   - local_elements / nonlocal_elements: closed forms in the half-angle
//     variables K, Gamma;
//   - oracle_elements: numeric projections of the explicit rank-structured
//     density operators onto |+-a>_s (x) |+-b>_s, built from Dicke amplitude
//     vectors. The oracle is the ground truth the closed forms are tested
//     against.
#pragma once

#include <array>
#include <cmath>
#include <complex>

#include "bellparity/coherent.hpp"
#include "bellparity/spin.hpp"

namespace bellparity {

// State coefficients c+ = e^{i eta} cos(xi), c- = e^{-i eta} sin(xi);
// |c+|^2 + |c-|^2 = 1 holds identically for any real xi, eta.
struct StateParams {
    SpinQuantum spin;
    double xi = kPi / 4.0;
    double eta = 0.0;

    Complex c_plus() const noexcept { return std::polar(1.0, eta) * std::cos(xi); }
    Complex c_minus() const noexcept { return std::polar(1.0, -eta) * std::sin(xi); }
};

// Labels of the four outcome base vectors |1>=|+a,+b>, |2>=|+a,-b>,
// |3>=|-a,+b>, |4>=|-a,-b>.
enum class OutcomeBasis : int {
    plus_plus = 1,
    plus_minus = 2,
    minus_plus = 3,
    minus_minus = 4,
};

constexpr std::array<OutcomeBasis, 4> kOutcomes = {
    OutcomeBasis::plus_plus, OutcomeBasis::plus_minus, OutcomeBasis::minus_plus,
    OutcomeBasis::minus_minus};

constexpr Pole pole_a(OutcomeBasis o) noexcept {
    return (o == OutcomeBasis::plus_plus || o == OutcomeBasis::plus_minus) ? Pole::plus
                                                                           : Pole::minus;
}
constexpr Pole pole_b(OutcomeBasis o) noexcept {
    return (o == OutcomeBasis::plus_plus || o == OutcomeBasis::minus_plus) ? Pole::plus
                                                                           : Pole::minus;
}

// Matrix element of the correlation operator in the outcome basis:
// +1 for |1>,|4> (same poles), -1 for |2>,|3> (opposite poles).
constexpr int correlation_sign(OutcomeBasis o) noexcept {
    return pole_a(o) == pole_b(o) ? +1 : -1;
}

// Berry-phase parity factor e^{i 2 s pi} = (-1)^{2s}: +1 for integer s,
// -1 for half-integer s. This single sign decides whether the non-local
// interference survives the outcome sum.
constexpr int parity_factor(SpinQuantum s) noexcept { return s.is_integer() ? +1 : -1; }

// Diagonal elements rho_11..rho_44 in outcome order, split local/non-local.
struct DensityElements {
    std::array<double, 4> local{};
    std::array<double, 4> nonlocal{};

    double total(int i) const noexcept { return local[static_cast<std::size_t>(i)] +
                                                nonlocal[static_cast<std::size_t>(i)]; }
    double local_weight() const noexcept {
        return local[0] + local[1] + local[2] + local[3];
    }
    double total_weight() const noexcept {
        return total(0) + total(1) + total(2) + total(3);
    }
};

// Local (interference-free) elements:
//   rho_11 = cos^2(xi) Ka^{4s} Kb^{4s} + sin^2(xi) Ga^{4s} Gb^{4s}, etc.
inline std::array<double, 4> local_elements(const StateParams& p, const Direction& a,
                                            const Direction& b) {
    const int four_s = 2 * p.spin.twice();
    const auto ha = half_angle_powers(a, four_s);
    const auto hb = half_angle_powers(b, four_s);
    const double c2 = std::cos(p.xi) * std::cos(p.xi);
    const double s2 = std::sin(p.xi) * std::sin(p.xi);
    return {
        c2 * ha.k * hb.k + s2 * ha.gamma * hb.gamma,
        c2 * ha.k * hb.gamma + s2 * ha.gamma * hb.k,
        c2 * ha.gamma * hb.k + s2 * ha.k * hb.gamma,
        c2 * ha.gamma * hb.gamma + s2 * ha.k * hb.k,
    };
}

// Non-local (interference) elements:
//   rho_11 = rho_44 = 2 sin(xi) cos(xi) (Ka Ga)^{2s} (Kb Gb)^{2s}
//                      * cos[2s (phi_a + phi_b) + 2 eta],
//   rho_22 = rho_33 = (-1)^{2s} rho_11.
// The phase-argument convention is the one that matches oracle_elements.
inline std::array<double, 4> nonlocal_elements(const StateParams& p, const Direction& a,
                                               const Direction& b) {
    const int n = p.spin.twice();  // 2s
    const auto ha = half_angle_powers(a, n);
    const auto hb = half_angle_powers(b, n);
    const double amp = 2.0 * std::sin(p.xi) * std::cos(p.xi) * (ha.k * ha.gamma) *
                       (hb.k * hb.gamma);
    const double r11 = amp * std::cos(n * (a.phi + b.phi) + 2.0 * p.eta);
    const double r22 = parity_factor(p.spin) * r11;
    return {r11, r22, r22, r11};
}

inline DensityElements closed_form_elements(const StateParams& p, const Direction& a,
                                            const Direction& b) {
    return {local_elements(p, a, b), nonlocal_elements(p, a, b)};
}

// Ground-truth oracle: projects the explicit density operators onto the four
// outcome vectors using numeric Dicke-basis overlaps. The local part of
// rho is cos^2 |++><++| + sin^2 |--><--|; the non-local part holds the two
// cross terms. Because both parts are rank-structured sums over the extreme
// product kets, each projection factorizes into single-spin overlaps and the
// whole evaluation is O(s) per element.
inline DensityElements oracle_elements(const StateParams& p, const Direction& a,
                                       const Direction& b) {
    const SpinQuantum s = p.spin;
    const CoherentState up = dicke_extreme(s, Pole::plus);
    const CoherentState down = dicke_extreme(s, Pole::minus);

    // f[r][pole][extreme]: <pole r | extreme>, extreme in {+s, -s}.
    struct SingleSpin {
        Complex to_up, to_down;
    };
    const auto project = [&](const Direction& dir, Pole pole) -> SingleSpin {
        const CoherentState st = coherent_state(s, dir, pole);
        return {overlap(st, up), overlap(st, down)};
    };
    const SingleSpin pa = project(a, Pole::plus), ma = project(a, Pole::minus);
    const SingleSpin pb = project(b, Pole::plus), mb = project(b, Pole::minus);

    const double c2 = std::norm(p.c_plus());
    const double s2 = std::norm(p.c_minus());
    const Complex cross = p.c_plus() * std::conj(p.c_minus());

    DensityElements out;
    for (std::size_t i = 0; i < 4; ++i) {
        const OutcomeBasis o = kOutcomes[i];
        const SingleSpin& fa = pole_a(o) == Pole::plus ? pa : ma;
        const SingleSpin& fb = pole_b(o) == Pole::plus ? pb : mb;
        const Complex to_pp = fa.to_up * fb.to_up;      // <i|+s,+s>
        const Complex to_mm = fa.to_down * fb.to_down;  // <i|-s,-s>
        out.local[i] = c2 * std::norm(to_pp) + s2 * std::norm(to_mm);
        // <i|rho_nlc|i> = c+ c-* <i|++><--|i> + c.c.
        const Complex z = cross * to_pp * std::conj(to_mm);
        out.nonlocal[i] = (z + std::conj(z)).real();
    }
    return out;
}

}  // namespace bellparity
