// Single spin-s quantum numbers, measurement directions on the sphere, and
// the half-angle algebra the closed-form correlators are built from.
//
// Conventions used throughout the library:
//   - s is stored as the integer 2s, so half-integer spins stay exact.
//   - Dicke amplitude vectors are indexed by m = s, s-1, ..., -s (descending).
//   - All angles are radians. theta is the polar angle in [0, pi], phi the
//     azimuth in [0, 2*pi).
#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <string>

namespace bellparity {

inline constexpr double kPi = std::numbers::pi;

// Cap 2s at 50 (dimension 51): binomial(50, 25) still fits in 64-bit integers.
inline constexpr int kMaxTwiceSpin = 50;

// Spin quantum number s with 2s a positive integer.
class SpinQuantum {
public:
    explicit constexpr SpinQuantum(int twice_s) : twice_s_(twice_s) {
        if (twice_s < 1 || twice_s > kMaxTwiceSpin)
            throw std::invalid_argument("SpinQuantum: 2s must be an integer in [1, " +
                                        std::to_string(kMaxTwiceSpin) + "], got " +
                                        std::to_string(twice_s));
    }

    constexpr int twice() const noexcept { return twice_s_; }
    constexpr double value() const noexcept { return 0.5 * twice_s_; }
    constexpr int dimension() const noexcept { return twice_s_ + 1; }
    constexpr bool is_integer() const noexcept { return twice_s_ % 2 == 0; }

    friend constexpr bool operator==(SpinQuantum, SpinQuantum) noexcept = default;

private:
    int twice_s_;
};

// Exact n choose k in integer arithmetic; valid for n <= 62 or so, we only
// ever need n <= kMaxTwiceSpin. The running product is divisible at every
// step, so there is no rounding anywhere.
constexpr std::int64_t binomial(int n, int k) noexcept {
    if (k < 0 || k > n) return 0;
    if (k > n - k) k = n - k;
    std::int64_t c = 1;
    for (int i = 1; i <= k; ++i) c = c * (n - k + i) / i;
    return c;
}

// x^n for integer n >= 0 by squaring. ipow(0,0) == 1 and ipow(1,n) == 1
// exactly, which the pole cases (theta = 0, pi) rely on.
constexpr double ipow(double x, int n) noexcept {
    double r = 1.0;
    while (n > 0) {
        if (n & 1) r *= x;
        x *= x;
        n >>= 1;
    }
    return r;
}

// A unit measurement direction parameterized by polar/azimuthal angles.
struct Direction {
    double theta;  // [0, pi]
    double phi;    // [0, 2*pi)

    Direction(double theta_, double phi_ = 0.0) : theta(theta_), phi(normalize_phi(phi_)) {
        if (!(theta >= 0.0 && theta <= kPi))
            throw std::invalid_argument("Direction: theta must lie in [0, pi], got " +
                                        std::to_string(theta_));
    }

    // Folds arbitrary real angles onto the canonical chart. Used by the
    // optimizer, which wanders freely outside [0, pi] x [0, 2*pi).
    static Direction wrapped(double theta_, double phi_ = 0.0) noexcept {
        double t = std::fmod(theta_, 2.0 * kPi);
        if (t < 0.0) t += 2.0 * kPi;
        if (t > kPi) {
            t = 2.0 * kPi - t;
            phi_ += kPi;
        }
        if (t > kPi) t = kPi;  // fmod round-off
        return Direction(t, phi_);
    }

    // Signed angle in the x-z plane: t >= 0 maps to (theta=t, phi=0),
    // t < 0 to (theta=-t, phi=pi). This is the coordinate the coplanar
    // CLI flag and the grid pre-scan use.
    static Direction coplanar(double t) noexcept { return wrapped(t, 0.0); }

    std::array<double, 3> unit() const noexcept {
        return {std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi),
                std::cos(theta)};
    }

private:
    static double normalize_phi(double p) noexcept {
        double r = std::fmod(p, 2.0 * kPi);
        if (r < 0.0) r += 2.0 * kPi;
        if (r >= 2.0 * kPi) r = 0.0;
        return r;
    }
};

inline double dot(const Direction& x, const Direction& y) noexcept {
    const auto u = x.unit(), v = y.unit();
    return u[0] * v[0] + u[1] * v[1] + u[2] * v[2];
}

// Angle between two directions, in [0, pi].
inline double angle_between(const Direction& x, const Direction& y) noexcept {
    const double c = dot(x, y);
    return std::acos(c < -1.0 ? -1.0 : (c > 1.0 ? 1.0 : c));
}

// K_r^m = cos^m(theta_r/2), Gamma_r^m = sin^m(theta_r/2).
struct HalfAnglePowers {
    double k;
    double gamma;
};

inline HalfAnglePowers half_angle_powers(const Direction& dir, int m) {
    if (m < 0) throw std::invalid_argument("half_angle_powers: m must be >= 0");
    return {ipow(std::cos(0.5 * dir.theta), m), ipow(std::sin(0.5 * dir.theta), m)};
}

}  // namespace bellparity
