// Maximization of inequality objectives over measurement directions (and
// optionally the state parameters), and the spin-parity sweep.
//
// Strategy: deterministic coarse scan over coplanar configurations (all
// phi = 0, polar angles on a uniform [0, pi] grid including both endpoints),
// then derivative-free Nelder-Mead refinement in the full angle space. The
// extremal configurations of every objective here are coplanar, so the seed
// scan costs n^D instead of n^(2D). Everything is deterministic: fixed
// enumeration order, ties resolved to the lexicographically smallest tuple,
// no randomness anywhere.
#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <utility>
#include <vector>

#include "bellparity/correlation.hpp"

namespace bellparity {

enum class Objective {
    chsh_total,
    chsh_local,
    bell_margin_total,
    bell_margin_local,
    nlc_magnitude,
};

constexpr int direction_count(Objective o) noexcept {
    switch (o) {
        case Objective::chsh_total:
        case Objective::chsh_local: return 4;
        case Objective::bell_margin_total:
        case Objective::bell_margin_local: return 3;
        case Objective::nlc_magnitude: return 2;
    }
    return 0;
}

constexpr bool is_local_objective(Objective o) noexcept {
    return o == Objective::chsh_local || o == Objective::bell_margin_local;
}

struct SearchSpec {
    SpinQuantum spin;
    Objective objective = Objective::chsh_total;
    bool optimize_state = false;  // when false, xi/eta below are held fixed
    double xi = kPi / 4.0;
    double eta = 0.0;
    int grid_points_per_angle = 16;  // >= 4
    int refine_iterations = 2000;    // Nelder-Mead iteration cap, >= 0
};

struct ViolationReport {
    explicit ViolationReport(SpinQuantum s) : spin(s) {}

    SpinQuantum spin;
    Objective objective = Objective::chsh_total;
    double best_value = 0.0;
    double grid_value = 0.0;  // best coarse-grid value; refinement never regresses it
    double bound = 0.0;       // 2 for CHSH, rhs at the optimum for BI margin, 0 for nlc
    bool violated = false;
    std::vector<Direction> best_angles;
    double xi = 0.0;
    double eta = 0.0;
};

namespace detail {

// Standard Nelder-Mead (reflection 1, expansion 2, contraction 1/2,
// shrink 1/2), maximizing f. The best vertex is monotone non-decreasing;
// terminates when the simplex inf-diameter drops below diam_tol or after
// max_iter iterations.
inline std::pair<std::vector<double>, double> nelder_mead_max(
    const std::function<double(const std::vector<double>&)>& f, std::vector<double> x0,
    double step, int max_iter, double diam_tol = 1e-10) {
    const std::size_t n = x0.size();
    std::vector<std::vector<double>> pts(n + 1, x0);
    std::vector<double> val(n + 1);
    for (std::size_t i = 0; i < n; ++i) pts[i + 1][i] += step;
    for (std::size_t i = 0; i <= n; ++i) val[i] = f(pts[i]);

    std::vector<std::size_t> order(n + 1);
    const auto sort_order = [&] {
        for (std::size_t i = 0; i <= n; ++i) order[i] = i;
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t p, std::size_t q) { return val[p] > val[q]; });
    };

    for (int iter = 0; iter < max_iter; ++iter) {
        sort_order();
        const std::size_t best = order[0], worst = order[n], second_worst = order[n - 1];

        double diam = 0.0;
        for (std::size_t i = 1; i <= n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                diam = std::max(diam, std::abs(pts[order[i]][j] - pts[best][j]));
        if (diam < diam_tol) break;

        std::vector<double> centroid(n, 0.0);
        for (std::size_t i = 0; i <= n; ++i) {
            if (i == worst) continue;
            for (std::size_t j = 0; j < n; ++j) centroid[j] += pts[i][j];
        }
        for (double& c : centroid) c /= static_cast<double>(n);

        const auto blend = [&](double t) {
            std::vector<double> p(n);
            for (std::size_t j = 0; j < n; ++j)
                p[j] = centroid[j] + t * (centroid[j] - pts[worst][j]);
            return p;
        };

        const std::vector<double> refl = blend(1.0);
        const double f_refl = f(refl);
        if (f_refl > val[best]) {
            const std::vector<double> exp_pt = blend(2.0);
            const double f_exp = f(exp_pt);
            if (f_exp > f_refl) {
                pts[worst] = exp_pt;
                val[worst] = f_exp;
            } else {
                pts[worst] = refl;
                val[worst] = f_refl;
            }
            continue;
        }
        if (f_refl > val[second_worst]) {
            pts[worst] = refl;
            val[worst] = f_refl;
            continue;
        }
        const bool outside = f_refl > val[worst];
        const std::vector<double> con = blend(outside ? 0.5 : -0.5);
        const double f_con = f(con);
        if (f_con > (outside ? f_refl : val[worst])) {
            pts[worst] = con;
            val[worst] = f_con;
            continue;
        }
        // shrink toward the best vertex (which is kept, so the best value
        // cannot regress)
        for (std::size_t i = 0; i <= n; ++i) {
            if (i == best) continue;
            for (std::size_t j = 0; j < n; ++j)
                pts[i][j] = pts[best][j] + 0.5 * (pts[i][j] - pts[best][j]);
            val[i] = f(pts[i]);
        }
    }
    sort_order();
    return {pts[order[0]], val[order[0]]};
}

}  // namespace detail

// Evaluates a search objective on the flat parameter vector
// [theta_1, phi_1, ..., theta_D, phi_D (, xi, eta)]; angles are folded onto
// the sphere, so the optimizer is unconstrained.
inline double evaluate_objective(const SearchSpec& spec, const std::vector<double>& x) {
    const int nd = direction_count(spec.objective);
    std::vector<Direction> dirs;
    dirs.reserve(static_cast<std::size_t>(nd));
    for (int i = 0; i < nd; ++i)
        dirs.push_back(Direction::wrapped(x[static_cast<std::size_t>(2 * i)],
                                          x[static_cast<std::size_t>(2 * i + 1)]));
    const std::size_t base = static_cast<std::size_t>(2 * nd);
    const double xi = spec.optimize_state ? x[base] : spec.xi;
    const double eta = spec.optimize_state ? x[base + 1] : spec.eta;
    const StateParams st{spec.spin, xi, eta};

    switch (spec.objective) {
        case Objective::chsh_total:
            return chsh({st, dirs[0], dirs[1], dirs[2], dirs[3]}, Part::total);
        case Objective::chsh_local:
            return chsh({st, dirs[0], dirs[1], dirs[2], dirs[3]}, Part::local_only);
        case Objective::bell_margin_total:
            return bell_lhs_rhs({st, dirs[0], dirs[1], dirs[2]}, Part::total).margin();
        case Objective::bell_margin_local:
            return bell_lhs_rhs({st, dirs[0], dirs[1], dirs[2]}, Part::local_only).margin();
        case Objective::nlc_magnitude:
            return std::abs(correlate(st, dirs[0], dirs[1]).p_nlc);
    }
    return 0.0;
}

inline ViolationReport maximize(const SearchSpec& spec) {
    if (spec.grid_points_per_angle < 4)
        throw std::invalid_argument("SearchSpec: grid_points_per_angle must be >= 4");
    if (spec.refine_iterations < 0)
        throw std::invalid_argument("SearchSpec: refine_iterations must be >= 0");

    const int nd = direction_count(spec.objective);
    const int g = spec.grid_points_per_angle;
    const std::size_t dim = static_cast<std::size_t>(2 * nd) + (spec.optimize_state ? 2 : 0);

    // theta grid over [0, pi] including both endpoints; xi over [0, pi/2]
    // including endpoints; eta over [0, pi) excluding the far end (period pi).
    std::vector<double> theta_grid(static_cast<std::size_t>(g));
    std::vector<double> xi_grid(static_cast<std::size_t>(g));
    std::vector<double> eta_grid(static_cast<std::size_t>(g));
    for (int i = 0; i < g; ++i) {
        // endpoints 0 and pi are hit exactly; eta excludes its far end (period pi)
        theta_grid[static_cast<std::size_t>(i)] = i == g - 1 ? kPi : kPi * i / (g - 1);
        xi_grid[static_cast<std::size_t>(i)] = i == g - 1 ? 0.5 * kPi : 0.5 * kPi * i / (g - 1);
        eta_grid[static_cast<std::size_t>(i)] = kPi * i / g;
    }

    const auto f = [&spec](const std::vector<double>& x) {
        return evaluate_objective(spec, x);
    };

    // Coplanar seed scan, lexicographic enumeration; strict > keeps the
    // lexicographically smallest tie.
    const int state_levels = spec.optimize_state ? g : 1;
    std::vector<int> idx(static_cast<std::size_t>(nd), 0);
    std::vector<double> best_x(dim, 0.0);
    double best_val = -std::numeric_limits<double>::infinity();

    std::vector<double> x(dim, 0.0);
    bool done = false;
    while (!done) {
        for (int i = 0; i < nd; ++i) {
            x[static_cast<std::size_t>(2 * i)] = theta_grid[static_cast<std::size_t>(idx[static_cast<std::size_t>(i)])];
            x[static_cast<std::size_t>(2 * i + 1)] = 0.0;
        }
        for (int sx = 0; sx < state_levels; ++sx) {
            for (int se = 0; se < state_levels; ++se) {
                if (spec.optimize_state) {
                    x[dim - 2] = xi_grid[static_cast<std::size_t>(sx)];
                    x[dim - 1] = eta_grid[static_cast<std::size_t>(se)];
                }
                const double v = f(x);
                if (v > best_val) {
                    best_val = v;
                    best_x = x;
                }
            }
        }
        // advance the mixed-radix direction index
        done = true;
        for (int i = nd - 1; i >= 0; --i) {
            if (++idx[static_cast<std::size_t>(i)] < g) {
                done = false;
                break;
            }
            idx[static_cast<std::size_t>(i)] = 0;
        }
    }

    const double grid_val = best_val;

    // Two refinement rounds: a wide simplex at half the grid spacing, then a
    // tight polish around the incumbent. Both keep the best vertex, so the
    // final value can only improve on the grid value.
    if (spec.refine_iterations > 0) {
        const double h = 0.5 * kPi / (g - 1);
        auto [x1, v1] = detail::nelder_mead_max(f, best_x, h, spec.refine_iterations);
        if (v1 > best_val) {
            best_val = v1;
            best_x = x1;
        }
        auto [x2, v2] = detail::nelder_mead_max(f, best_x, 1e-4, spec.refine_iterations);
        if (v2 > best_val) {
            best_val = v2;
            best_x = x2;
        }
    }

    ViolationReport rep(spec.spin);
    rep.objective = spec.objective;
    rep.best_value = best_val;
    rep.grid_value = grid_val;
    for (int i = 0; i < nd; ++i)
        rep.best_angles.push_back(Direction::wrapped(best_x[static_cast<std::size_t>(2 * i)],
                                                     best_x[static_cast<std::size_t>(2 * i + 1)]));
    rep.xi = spec.optimize_state ? best_x[dim - 2] : spec.xi;
    rep.eta = spec.optimize_state ? best_x[dim - 1] : spec.eta;

    switch (spec.objective) {
        case Objective::chsh_total:
        case Objective::chsh_local:
            rep.bound = 2.0;
            rep.violated = rep.best_value > rep.bound + kViolationTol;
            break;
        case Objective::bell_margin_total:
        case Objective::bell_margin_local: {
            const StateParams st{spec.spin, rep.xi, rep.eta};
            const Part part = spec.objective == Objective::bell_margin_total
                                  ? Part::total
                                  : Part::local_only;
            const BellResult r = bell_lhs_rhs(
                {st, rep.best_angles[0], rep.best_angles[1], rep.best_angles[2]}, part);
            rep.bound = r.rhs;
            rep.violated = rep.best_value > kViolationTol;
            break;
        }
        case Objective::nlc_magnitude:
            rep.bound = 0.0;
            rep.violated = rep.best_value > kViolationTol;
            break;
    }
    return rep;
}

// One report per s in {1/2, 1, 3/2, ..., s_max}, all other knobs taken from
// the template spec. Integer rows must come out non-violated for every
// objective; that is the spin-parity effect.
inline std::vector<ViolationReport> parity_sweep(SpinQuantum s_max, SearchSpec tmpl) {
    std::vector<ViolationReport> out;
    out.reserve(static_cast<std::size_t>(s_max.twice()));
    for (int twice = 1; twice <= s_max.twice(); ++twice) {
        tmpl.spin = SpinQuantum(twice);
        out.push_back(maximize(tmpl));
    }
    return out;
}

}  // namespace bellparity
