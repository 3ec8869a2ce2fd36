// Shared deterministic generators for the test suites.
#pragma once

#include <array>
#include <cmath>

#include "bellparity/bellcat.hpp"
#include "bellparity/rng.hpp"
#include "bellparity/spin.hpp"

namespace bptest {

using namespace bellparity;

class Gen {
public:
    explicit Gen(std::uint64_t seed) : g_(seed) {}

    double uniform(double lo, double hi) { return g_.uniform(lo, hi); }

    // Uniform on the sphere: inverse-CDF on cos(theta), uniform phi.
    Direction direction() {
        const double c = uniform(-1.0, 1.0);
        return Direction(std::acos(c), uniform(0.0, 2.0 * kPi));
    }

    int twice_spin(int lo, int hi) {
        return lo + static_cast<int>(g_.next() % static_cast<std::uint64_t>(hi - lo + 1));
    }

    StateParams state(int twice_lo, int twice_hi) {
        return StateParams{SpinQuantum(twice_spin(twice_lo, twice_hi)),
                           uniform(-kPi, kPi), uniform(-kPi, kPi)};
    }

    rng::Xoshiro256pp& raw() { return g_; }

private:
    rng::Xoshiro256pp g_;
};

inline double max_abs_diff(const std::array<double, 4>& x, const std::array<double, 4>& y) {
    double m = 0.0;
    for (std::size_t i = 0; i < 4; ++i) m = std::max(m, std::abs(x[i] - y[i]));
    return m;
}

}  // namespace bptest
