// Stochastic verification layer: seeded projective-measurement sampling of
// the Bell cat state, and local-hidden-variable models for the classical
// side of the modified Bell inequality.
#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <vector>

#include "bellparity/bellcat.hpp"
#include "bellparity/correlation.hpp"
#include "bellparity/rng.hpp"
#include "bellparity/spin.hpp"

namespace bellparity {

// Shots are drawn in fixed-size batches, each from its own derived sub-stream
// (see rng.hpp); merging in batch order keeps results reproducible however
// the batches are scheduled.
inline constexpr std::uint64_t kShotBatch = 1u << 16;

struct SampleStats {
    std::array<std::uint64_t, 4> counts{};  // outcomes |1>..|4|
    std::uint64_t n_other = 0;              // projections outside the four extremes
    std::uint64_t shots = 0;

    double p_raw = 0.0;   // signed mean with "other" counted as 0
    double p_post = 0.0;  // signed mean over kept (non-other) shots
    double se_raw = 0.0;
    double se_post = 0.0;

    std::uint64_t kept() const noexcept { return shots - n_other; }
    double kept_fraction() const noexcept {
        return shots == 0 ? 0.0 : static_cast<double>(kept()) / static_cast<double>(shots);
    }
};

namespace detail {

// Cumulative distribution over the five categories (four outcomes + other).
// Probabilities may carry tiny negative rounding residue; anything below
// -1e-12 means an upstream bug, not noise.
struct Categorical {
    std::array<double, 4> cumulative{};

    explicit Categorical(const DensityElements& e) {
        double acc = 0.0;
        for (int i = 0; i < 4; ++i) {
            double p = e.total(i);
            if (p < -1e-12)
                throw std::runtime_error(
                    "sample_quantum: negative outcome probability (internal error)");
            if (p < 0.0) p = 0.0;
            acc += p;
            cumulative[static_cast<std::size_t>(i)] = acc;
        }
        if (acc > 1.0 + 1e-12)
            throw std::runtime_error(
                "sample_quantum: outcome probabilities exceed 1 (internal error)");
    }

    // 0..3 for the four outcomes, 4 for "other".
    int draw(rng::Xoshiro256pp& gen) const noexcept {
        const double u = gen.uniform01();
        for (int i = 0; i < 4; ++i)
            if (u < cumulative[static_cast<std::size_t>(i)]) return i;
        return 4;
    }
};

inline void finalize_stats(SampleStats& st) noexcept {
    std::int64_t signed_sum = 0;
    for (std::size_t i = 0; i < 4; ++i)
        signed_sum += correlation_sign(kOutcomes[i]) * static_cast<std::int64_t>(st.counts[i]);
    const double n = static_cast<double>(st.shots);
    st.p_raw = n == 0.0 ? 0.0 : static_cast<double>(signed_sum) / n;
    st.se_raw = n == 0.0 ? 0.0 : std::sqrt(std::max(0.0, 1.0 - st.p_raw * st.p_raw) / n);
    const double k = static_cast<double>(st.kept());
    st.p_post = k == 0.0 ? 0.0 : static_cast<double>(signed_sum) / k;
    st.se_post = k == 0.0 ? 0.0 : std::sqrt(std::max(0.0, 1.0 - st.p_post * st.p_post) / k);
}

}  // namespace detail

// Samples the five-way outcome distribution (rho_11..rho_44, 1 - W) of a
// joint measurement along a and b. The raw estimate converges to p_total;
// the post-selected one to p_total / W with W the four-outcome weight.
inline SampleStats sample_quantum(const StateParams& p, const Direction& a,
                                  const Direction& b, std::uint64_t shots,
                                  std::uint64_t seed) {
    if (shots < 1) throw std::invalid_argument("sample_quantum: shots must be >= 1");
    const detail::Categorical cat(closed_form_elements(p, a, b));

    SampleStats st;
    st.shots = shots;
    const std::uint64_t batches = (shots + kShotBatch - 1) / kShotBatch;
    for (std::uint64_t bi = 0; bi < batches; ++bi) {
        rng::Xoshiro256pp gen(rng::derive_stream(seed, bi));
        const std::uint64_t n =
            bi + 1 == batches ? shots - bi * kShotBatch : kShotBatch;
        for (std::uint64_t k = 0; k < n; ++k) {
            const int o = cat.draw(gen);
            if (o == 4)
                ++st.n_other;
            else
                ++st.counts[static_cast<std::size_t>(o)];
        }
    }
    detail::finalize_stats(st);
    return st;
}

// A local-hidden-variable model: deterministic +-1 outcomes A(dir, lambda)
// with lambda drawn from a normalized density. Parallel polarization means
// the second particle responds with the same outcome function (B == A).
struct LhvModel {
    using Lambda = std::array<double, 3>;

    std::function<Lambda(rng::Xoshiro256pp&)> sample_lambda;
    std::function<int(const Direction&, const Lambda&)> outcome;
    bool b_equals_a = true;
    // Only consulted when b_equals_a is false.
    std::function<int(const Direction&, const Lambda&)> outcome_b;

    int second_outcome(const Direction& dir, const Lambda& lam) const {
        return b_equals_a ? outcome(dir, lam) : outcome_b(dir, lam);
    }
};

// Reference model: lambda uniform on the unit sphere (inverse-CDF on
// cos(theta), uniform phi — no rejection step), A = sign(lambda . a).
// Its correlation is P(a,b) = 1 - 2*angle(a,b)/pi.
inline LhvModel sign_model() {
    LhvModel m;
    m.sample_lambda = [](rng::Xoshiro256pp& gen) -> LhvModel::Lambda {
        const double c = gen.uniform(-1.0, 1.0);
        const double s = std::sqrt(std::max(0.0, 1.0 - c * c));
        const double ph = gen.uniform(0.0, 2.0 * kPi);
        return {s * std::cos(ph), s * std::sin(ph), c};
    };
    m.outcome = [](const Direction& dir, const LhvModel::Lambda& lam) -> int {
        const auto u = dir.unit();
        return lam[0] * u[0] + lam[1] * u[1] + lam[2] * u[2] >= 0.0 ? +1 : -1;
    };
    return m;
}

// Monte Carlo estimate of P(a,b) = integral rho(lambda) A(a,lambda) B(b,lambda).
inline SampleStats sample_lhv(const LhvModel& model, const Direction& a,
                              const Direction& b, std::uint64_t shots,
                              std::uint64_t seed) {
    if (shots < 1) throw std::invalid_argument("sample_lhv: shots must be >= 1");
    SampleStats st;
    st.shots = shots;
    const std::uint64_t batches = (shots + kShotBatch - 1) / kShotBatch;
    for (std::uint64_t bi = 0; bi < batches; ++bi) {
        rng::Xoshiro256pp gen(rng::derive_stream(seed, bi));
        const std::uint64_t n =
            bi + 1 == batches ? shots - bi * kShotBatch : kShotBatch;
        for (std::uint64_t k = 0; k < n; ++k) {
            const LhvModel::Lambda lam = model.sample_lambda(gen);
            const int oa = model.outcome(a, lam);
            const int ob = model.second_outcome(b, lam);
            if ((oa != 1 && oa != -1) || (ob != 1 && ob != -1))
                throw std::runtime_error("sample_lhv: outcome function must return +-1");
            const std::size_t idx = (oa == 1 ? 0u : 2u) + (ob == 1 ? 0u : 1u);
            ++st.counts[idx];
        }
    }
    detail::finalize_stats(st);
    return st;
}

struct LhvBellRow {
    double lhs = 0.0;
    double rhs = 0.0;
    double se_combined = 0.0;
    bool flagged = false;  // statistically significant violation => invalid model
};

struct LhvBellReport {
    std::vector<LhvBellRow> rows;
    bool any_flagged = false;
};

// Checks |P(a,b) - P(a,c)| <= 1 - P(b,c) on every triple, flagging any
// violation beyond four combined standard errors. A valid deterministic
// +-1 model can never be flagged; a flag means the model (not the state)
// breaks the inequality's assumptions.
inline LhvBellReport verify_lhv_bell(const LhvModel& model,
                                     const std::vector<std::array<Direction, 3>>& triples,
                                     std::uint64_t shots, std::uint64_t seed) {
    if (triples.empty())
        throw std::invalid_argument("verify_lhv_bell: need at least one triple");
    LhvBellReport rep;
    rep.rows.reserve(triples.size());
    std::uint64_t pair_index = 0;
    for (const auto& t : triples) {
        const SampleStats ab =
            sample_lhv(model, t[0], t[1], shots, rng::derive_stream(seed, pair_index++));
        const SampleStats ac =
            sample_lhv(model, t[0], t[2], shots, rng::derive_stream(seed, pair_index++));
        const SampleStats bc =
            sample_lhv(model, t[1], t[2], shots, rng::derive_stream(seed, pair_index++));
        LhvBellRow row;
        row.lhs = std::abs(ab.p_raw - ac.p_raw);
        row.rhs = 1.0 - bc.p_raw;
        row.se_combined = std::sqrt(ab.se_raw * ab.se_raw + ac.se_raw * ac.se_raw +
                                    bc.se_raw * bc.se_raw);
        row.flagged = row.lhs > row.rhs + 4.0 * row.se_combined;
        rep.any_flagged = rep.any_flagged || row.flagged;
        rep.rows.push_back(row);
    }
    return rep;
}

}  // namespace bellparity
