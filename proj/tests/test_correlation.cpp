#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "bellparity/correlation.hpp"

#include "helpers.hpp"

using namespace bellparity;
using bptest::Gen;

TEST_CASE("p_lc is the product of single-direction factors") {
    Gen gen(3);
    for (int i = 0; i < 300; ++i) {
        const StateParams p = gen.state(1, 50);
        const Direction a = gen.direction(), b = gen.direction();
        const CorrelationBreakdown c = correlate(p, a, b);
        const int four_s = 2 * p.spin.twice();
        const auto ha = half_angle_powers(a, four_s), hb = half_angle_powers(b, four_s);
        CHECK(std::abs(c.p_lc - (ha.k - ha.gamma) * (hb.k - hb.gamma)) < 1e-12);
    }
}

TEST_CASE("p_lc reduces to cos(theta_a) cos(theta_b) at s=1/2") {
    Gen gen(5);
    for (int i = 0; i < 200; ++i) {
        const StateParams p{SpinQuantum(1), gen.uniform(-3.0, 3.0), gen.uniform(-3.0, 3.0)};
        const Direction a = gen.direction(), b = gen.direction();
        CHECK(std::abs(correlate(p, a, b).p_lc - std::cos(a.theta) * std::cos(b.theta)) <
              1e-12);
    }
    // the worked example: theta_a = pi/3, theta_b = pi/4
    const CorrelationBreakdown c = correlate({SpinQuantum(1), 0.9, 0.3},
                                             Direction(kPi / 3.0), Direction(kPi / 4.0));
    CHECK(c.p_lc == Catch::Approx(0.3535533906).margin(1e-9));
}

TEST_CASE("integer spin: p_nlc vanishes and p_total is purely local") {
    Gen gen(7);
    for (int twice : {2, 4, 6, 8}) {
        for (int i = 0; i < 100; ++i) {
            const StateParams p{SpinQuantum(twice), gen.uniform(-3.0, 3.0),
                                gen.uniform(-3.0, 3.0)};
            const CorrelationBreakdown c = correlate(p, gen.direction(), gen.direction());
            CHECK(c.p_nlc == 0.0);  // exact cancellation, (1 - (+1)) == 0
            CHECK(c.p_total == c.p_lc);
        }
    }
}

TEST_CASE("coplanar total correlation is cos(theta_a - theta_b) at s=1/2, xi=pi/4") {
    const StateParams p{SpinQuantum(1), kPi / 4.0, 0.0};
    // example: theta_a = 0, theta_b = pi/2 gives zero
    CHECK(std::abs(correlate(p, Direction(0.0, 0.0), Direction(kPi / 2.0, 0.0)).p_total) <
          1e-12);
    Gen gen(9);
    for (int i = 0; i < 200; ++i) {
        const Direction a(gen.uniform(0.0, kPi), 0.0), b(gen.uniform(0.0, kPi), 0.0);
        CHECK(std::abs(correlate(p, a, b).p_total - std::cos(a.theta - b.theta)) < 1e-12);
    }
}

TEST_CASE("half-integer maximum of the nonlocal part on the equator") {
    // |p_nlc| at xi=pi/4, theta=pi/2, phi=0 equals 4^(1-2s)
    for (int twice : {1, 3, 5}) {
        const StateParams p{SpinQuantum(twice), kPi / 4.0, 0.0};
        const Direction eq(kPi / 2.0, 0.0);
        const double expected = std::pow(4.0, 1.0 - twice);
        CHECK(std::abs(correlate(p, eq, eq).p_nlc - expected) < 1e-12);
    }
}

TEST_CASE("closed form and oracle modes agree") {
    Gen gen(11);
    double worst = 0.0;
    for (int i = 0; i < 300; ++i) {
        const StateParams p = gen.state(1, 10);
        const Direction a = gen.direction(), b = gen.direction();
        const CorrelationBreakdown cf = correlate(p, a, b, Mode::closed_form);
        const CorrelationBreakdown oc = correlate(p, a, b, Mode::oracle);
        worst = std::max(worst, std::abs(cf.p_lc - oc.p_lc));
        worst = std::max(worst, std::abs(cf.p_nlc - oc.p_nlc));
        worst = std::max(worst, std::abs(cf.p_total - oc.p_total));
        worst = std::max(worst, std::abs(cf.weight - oc.weight));
    }
    CHECK(worst < 1e-12);
}

TEST_CASE("breakdown invariants") {
    Gen gen(13);
    for (int i = 0; i < 300; ++i) {
        const StateParams p = gen.state(1, 20);
        const CorrelationBreakdown c = correlate(p, gen.direction(), gen.direction());
        CHECK(c.p_total == c.p_lc + c.p_nlc);  // exact, by construction
        CHECK(std::abs(c.p_lc) <= 1.0 + 1e-12);
        if (p.spin.twice() == 1) CHECK(std::abs(c.p_total) <= 1.0 + 1e-12);
    }
}

TEST_CASE("exchange symmetry P(ab) = P(ba)") {
    Gen gen(17);
    for (int i = 0; i < 300; ++i) {
        const StateParams p = gen.state(1, 12);
        const Direction a = gen.direction(), b = gen.direction();
        const CorrelationBreakdown ab = correlate(p, a, b);
        const CorrelationBreakdown ba = correlate(p, b, a);
        CHECK(std::abs(ab.p_lc - ba.p_lc) < 1e-12);
        CHECK(std::abs(ab.p_nlc - ba.p_nlc) < 1e-12);
    }
}

TEST_CASE("local-only Bell inequality is a theorem") {
    Gen gen(19);
    for (int twice : {1, 2, 3, 4}) {
        for (int i = 0; i < 2500; ++i) {
            const StateParams p{SpinQuantum(twice), gen.uniform(-3.0, 3.0),
                                gen.uniform(-3.0, 3.0)};
            const BellResult r =
                bell_lhs_rhs({p, gen.direction(), gen.direction(), gen.direction()},
                             Part::local_only);
            CHECK_FALSE(r.violated);
        }
    }
}

TEST_CASE("Bell violation at the canonical coplanar triple, s=1/2") {
    const StateParams p{SpinQuantum(1), kPi / 4.0, 0.0};
    const BellTriple t{p, Direction::coplanar(0.0), Direction::coplanar(kPi / 3.0),
                       Direction::coplanar(2.0 * kPi / 3.0)};
    const BellResult total = bell_lhs_rhs(t, Part::total);
    CHECK(total.lhs == Catch::Approx(1.0).margin(1e-9));
    CHECK(total.rhs == Catch::Approx(0.5).margin(1e-9));
    CHECK(total.violated);

    const BellResult local = bell_lhs_rhs(t, Part::local_only);
    CHECK_FALSE(local.violated);
}

TEST_CASE("no Bell violation at s=1 for the same triple") {
    const StateParams p{SpinQuantum(2), kPi / 4.0, 0.0};
    const BellTriple t{p, Direction::coplanar(0.0), Direction::coplanar(kPi / 3.0),
                       Direction::coplanar(2.0 * kPi / 3.0)};
    CHECK_FALSE(bell_lhs_rhs(t, Part::total).violated);
}

TEST_CASE("CHSH reaches 2*sqrt(2) at the optimal coplanar quad, s=1/2") {
    const StateParams p{SpinQuantum(1), kPi / 4.0, 0.0};
    const ChshQuad q{p, Direction::coplanar(0.0), Direction::coplanar(kPi / 4.0),
                     Direction::coplanar(-kPi / 4.0), Direction::coplanar(kPi / 2.0)};
    CHECK(chsh(q, Part::total) == Catch::Approx(2.0 * std::sqrt(2.0)).margin(1e-12));
    CHECK(chsh(q, Part::total, Mode::oracle) ==
          Catch::Approx(2.0 * std::sqrt(2.0)).margin(1e-12));
}

TEST_CASE("local-only CHSH never exceeds 2") {
    Gen gen(23);
    for (int twice : {1, 2, 3, 4, 5}) {
        for (int i = 0; i < 2000; ++i) {
            const StateParams p{SpinQuantum(twice), gen.uniform(-3.0, 3.0),
                                gen.uniform(-3.0, 3.0)};
            const ChshQuad q{p, gen.direction(), gen.direction(), gen.direction(),
                             gen.direction()};
            CHECK(chsh(q, Part::local_only) <= 2.0 + 1e-12);
        }
    }
}

TEST_CASE("integer-spin CHSH total equals its local part exactly") {
    Gen gen(29);
    for (int i = 0; i < 200; ++i) {
        const StateParams p{SpinQuantum(4), kPi / 4.0, gen.uniform(-3.0, 3.0)};
        const ChshQuad q{p, gen.direction(), gen.direction(), gen.direction(),
                         gen.direction()};
        CHECK(chsh(q, Part::total) == chsh(q, Part::local_only));
    }
}
