// Generator-operator oracle for spin coherent states.
//
// Builds |+-a>_s as e^{i theta m.s} |+-s> with m = (sin(phi), -cos(phi), 0),
// the in-plane unit vector perpendicular to span(z, a) whose sign reproduces
// the closed-form Dicke expansions. The matrix exponential goes through a
// Hermitian eigendecomposition, so the result is unitary by construction.
// This route is kept independent of coherent_state() and arbitrates its gauge.
#pragma once

#include <Eigen/Dense>
#include <complex>

#include "bellparity/bellcat.hpp"
#include "bellparity/coherent.hpp"
#include "bellparity/spin.hpp"

namespace bellparity {

// Spin matrices in the Dicke basis with descending m (row i <-> m = s - i),
// from the ladder elements <m+1|s+|m> = sqrt(s(s+1) - m(m+1)).
inline Eigen::MatrixXcd spin_matrix_x(SpinQuantum s) {
    const int d = s.dimension();
    const double sv = s.value();
    Eigen::MatrixXcd sx = Eigen::MatrixXcd::Zero(d, d);
    for (int i = 1; i < d; ++i) {
        const double m = sv - i;  // s+ maps |m> (row i) up to |m+1> (row i-1)
        const double c = 0.5 * std::sqrt(sv * (sv + 1.0) - m * (m + 1.0));
        sx(i - 1, i) = c;
        sx(i, i - 1) = c;
    }
    return sx;
}

inline Eigen::MatrixXcd spin_matrix_y(SpinQuantum s) {
    const int d = s.dimension();
    const double sv = s.value();
    Eigen::MatrixXcd sy = Eigen::MatrixXcd::Zero(d, d);
    const Complex im{0.0, 1.0};
    for (int i = 1; i < d; ++i) {
        const double m = sv - i;
        const double c = 0.5 * std::sqrt(sv * (sv + 1.0) - m * (m + 1.0));
        sy(i - 1, i) = -im * c;
        sy(i, i - 1) = im * c;
    }
    return sy;
}

inline Eigen::MatrixXcd spin_matrix_z(SpinQuantum s) {
    const int d = s.dimension();
    const double sv = s.value();
    Eigen::MatrixXcd sz = Eigen::MatrixXcd::Zero(d, d);
    for (int i = 0; i < d; ++i) sz(i, i) = sv - i;
    return sz;
}

// s-hat . u for a Cartesian vector u.
inline Eigen::MatrixXcd spin_matrix_along(SpinQuantum s, const std::array<double, 3>& u) {
    return u[0] * spin_matrix_x(s) + u[1] * spin_matrix_y(s) + u[2] * spin_matrix_z(s);
}

// e^{i theta m.s} |+-s>, evaluated via eigendecomposition of the Hermitian
// generator. Matches coherent_state() up to a global phase (exactly for the
// plus pole; the minus pole picks up (-1)^{2s} e^{-i 2s phi}).
inline CoherentState rotation_oracle(SpinQuantum s, const Direction& dir, Pole pole) {
    const int d = s.dimension();
    const Eigen::MatrixXcd h = std::sin(dir.phi) * spin_matrix_x(s) -
                               std::cos(dir.phi) * spin_matrix_y(s);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
    const Eigen::VectorXd& lam = es.eigenvalues();
    const Eigen::MatrixXcd& v = es.eigenvectors();

    Eigen::VectorXcd seed = Eigen::VectorXcd::Zero(d);
    seed(pole == Pole::plus ? 0 : d - 1) = 1.0;

    Eigen::VectorXcd coeff = v.adjoint() * seed;
    for (int j = 0; j < d; ++j) coeff(j) *= std::polar(1.0, dir.theta * lam(j));
    const Eigen::VectorXcd out = v * coeff;

    CoherentState st{s, std::vector<Complex>(static_cast<std::size_t>(d))};
    for (int i = 0; i < d; ++i) st.amp[static_cast<std::size_t>(i)] = out(i);
    return st;
}

// Full-operator correlation <(s.a)(s.b)> / s^2 in the Bell cat state.
// Exposed for comparison only; the inequality machinery uses the four-outcome
// signed sum, which is a different quantity for s > 1/2.
inline double operator_correlation(const StateParams& p, const Direction& a,
                                   const Direction& b) {
    const SpinQuantum s = p.spin;
    const int d = s.dimension();
    const Eigen::MatrixXcd sa = spin_matrix_along(s, a.unit());
    const Eigen::MatrixXcd sb = spin_matrix_along(s, b.unit());

    // <psi|(A x B)|psi> for |psi> = c+|+s,+s> + c-|-s,-s> reduces to the four
    // extreme matrix elements of A and B.
    const Complex app = sa(0, 0), apm = sa(0, d - 1), amm = sa(d - 1, d - 1);
    const Complex bpp = sb(0, 0), bpm = sb(0, d - 1), bmm = sb(d - 1, d - 1);
    const Complex cp = p.c_plus(), cm = p.c_minus();

    const Complex val = std::norm(cp) * app * bpp + std::norm(cm) * amm * bmm +
                        std::conj(cp) * cm * apm * bpm +
                        std::conj(cm) * cp * std::conj(apm) * std::conj(bpm);
    return val.real() / (s.value() * s.value());
}

}  // namespace bellparity
