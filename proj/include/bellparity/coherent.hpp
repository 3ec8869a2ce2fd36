// Spin coherent states |+-a>_s in the Dicke basis, closed form.
//
// Amplitude layout: index i holds m = s - i, i.e. descending m. With
// K = cos(theta/2), G = sin(theta/2):
//   |+a>_s : amp[i] = sqrt(binom(2s, i)) * K^(2s-i) * G^i     * e^{ i*i*phi }
//   |-a>_s : amp[i] = sqrt(binom(2s, i)) * K^i     * G^(2s-i) * e^{ i*i*(phi+pi) }
// (i = s - m, so s+m = 2s-i and s-m = i).
#pragma once

#include <complex>
#include <vector>

#include "bellparity/spin.hpp"

namespace bellparity {

using Complex = std::complex<double>;

// Which extreme eigenstate of s-hat . a the state is: eigenvalue +s or -s.
enum class Pole : int { plus = +1, minus = -1 };

struct CoherentState {
    SpinQuantum spin;
    std::vector<Complex> amp;  // descending m

    double norm_sq() const noexcept {
        double n = 0.0;
        for (const auto& a : amp) n += std::norm(a);
        return n;
    }
};

inline CoherentState coherent_state(SpinQuantum s, const Direction& dir, Pole pole) {
    const int n = s.twice();
    const double k = std::cos(0.5 * dir.theta);
    const double g = std::sin(0.5 * dir.theta);
    const double ph = pole == Pole::plus ? dir.phi : dir.phi + kPi;

    CoherentState st{s, std::vector<Complex>(static_cast<std::size_t>(s.dimension()))};
    for (int i = 0; i <= n; ++i) {
        const double w = std::sqrt(static_cast<double>(binomial(n, i)));
        const double mag = pole == Pole::plus ? w * ipow(k, n - i) * ipow(g, i)
                                              : w * ipow(k, i) * ipow(g, n - i);
        st.amp[static_cast<std::size_t>(i)] = mag * std::polar(1.0, i * ph);
    }
    return st;
}

// The Dicke extreme |+s> or |-s> as a CoherentState (theta = 0 poles).
inline CoherentState dicke_extreme(SpinQuantum s, Pole pole) {
    CoherentState st{s, std::vector<Complex>(static_cast<std::size_t>(s.dimension()))};
    st.amp[pole == Pole::plus ? 0 : static_cast<std::size_t>(s.twice())] = 1.0;
    return st;
}

// <x|y>, conjugating x.
inline Complex overlap(const CoherentState& x, const CoherentState& y) {
    if (x.spin != y.spin || x.amp.size() != y.amp.size())
        throw std::invalid_argument("overlap: states live in different spin spaces");
    Complex acc = 0.0;
    for (std::size_t i = 0; i < x.amp.size(); ++i) acc += std::conj(x.amp[i]) * y.amp[i];
    return acc;
}

// Canonical global-phase representative: the highest-m nonzero amplitude is
// made real non-negative. Coherent states are physically defined only up to
// a global phase; use this where a unique vector is needed.
inline CoherentState canonical(CoherentState st) {
    constexpr double kNegligible = 1e-14;
    for (const auto& a : st.amp) {
        const double mag = std::abs(a);
        if (mag > kNegligible) {
            const Complex rot = std::conj(a) / mag;
            for (auto& b : st.amp) b *= rot;
            break;
        }
    }
    return st;
}

}  // namespace bellparity
