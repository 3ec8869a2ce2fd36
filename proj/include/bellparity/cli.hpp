// Command-line front end. Every subcommand is a thin wrapper over library
// calls; no numerics live here.
//
// Exit codes: 0 success, 2 invalid flags (diagnostic names the flag),
// 1 internal numerical failure.
#pragma once

#include <algorithm>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "bellparity/io.hpp"
#include "bellparity/montecarlo.hpp"
#include "bellparity/rotation.hpp"
#include "bellparity/search.hpp"

namespace bellparity::cli {

namespace detail {

struct FlagError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct AngleFlags {
    double theta = 0.0, phi = 0.0;
    bool theta_set = false;
};

struct Options {
    int spin2 = 1;
    double xi = kPi / 4.0;
    double eta = 0.0;
    std::array<AngleFlags, 4> dirs{};  // a, b, c, d
    std::vector<double> coplanar;
    bool degrees = false;
    std::string mode = "closed_form";
    std::string which = "total";
    std::string objective = "chsh_total";
    int grid = 16;
    int refine = 2000;
    bool optimize_state = false;
    int spin2_max = 5;
    std::string model = "sign";
    std::uint64_t shots = 100000;
    std::uint64_t seed = 1;
    std::string format = "json";
    std::string out_path;
};

inline double to_radians(double v, bool degrees) { return degrees ? v * kPi / 180.0 : v; }

// Builds the measurement directions for a subcommand needing `n` of them,
// from either --coplanar or the --theta-*/--phi-* flags.
inline std::vector<Direction> make_directions(const Options& o, int n) {
    static constexpr std::array<char, 4> kLetters = {'a', 'b', 'c', 'd'};
    std::vector<Direction> dirs;
    if (!o.coplanar.empty()) {
        if (static_cast<int>(o.coplanar.size()) != n)
            throw FlagError("--coplanar expects exactly " + std::to_string(n) +
                            " comma-separated angles for this subcommand");
        for (double t : o.coplanar) dirs.push_back(Direction::coplanar(to_radians(t, o.degrees)));
        return dirs;
    }
    for (int i = 0; i < n; ++i) {
        const std::string th = std::string("--theta-") + kLetters[static_cast<std::size_t>(i)];
        if (!o.dirs[static_cast<std::size_t>(i)].theta_set)
            throw FlagError("missing " + th + " (or use --coplanar)");
        try {
            dirs.emplace_back(to_radians(o.dirs[static_cast<std::size_t>(i)].theta, o.degrees),
                              to_radians(o.dirs[static_cast<std::size_t>(i)].phi, o.degrees));
        } catch (const std::invalid_argument& e) {
            throw FlagError(th + ": " + e.what());
        }
    }
    return dirs;
}

inline StateParams make_state(const Options& o) {
    try {
        return StateParams{SpinQuantum(o.spin2), o.xi, o.eta};
    } catch (const std::invalid_argument& e) {
        throw FlagError(std::string("--spin2: ") + e.what());
    }
}

inline Part parse_which(const std::string& w) {
    return w == "local_only" ? Part::local_only : Part::total;
}

// Adds the state flags shared by the state-dependent subcommands.
inline void add_state_flags(CLI::App* sub, Options& o) {
    sub->add_option("--spin2", o.spin2, "Spin as the integer 2s (1..50)")
        ->check(CLI::Range(1, kMaxTwiceSpin));
    sub->add_option("--xi", o.xi, "State parameter xi (radians)");
    sub->add_option("--eta", o.eta, "State parameter eta (radians)");
}

inline void add_direction_flags(CLI::App* sub, Options& o, int n) {
    static constexpr std::array<const char*, 4> kTheta = {"--theta-a", "--theta-b",
                                                          "--theta-c", "--theta-d"};
    static constexpr std::array<const char*, 4> kPhi = {"--phi-a", "--phi-b", "--phi-c",
                                                        "--phi-d"};
    for (int i = 0; i < n; ++i) {
        auto& d = o.dirs[static_cast<std::size_t>(i)];
        sub->add_option(kTheta[static_cast<std::size_t>(i)], d.theta, "Polar angle in [0, pi]")
            ->each([&d](const std::string&) { d.theta_set = true; });
        sub->add_option(kPhi[static_cast<std::size_t>(i)], d.phi, "Azimuth");
    }
    sub->add_option("--coplanar", o.coplanar,
                    "Signed x-z plane angles (comma separated), one per direction")
        ->delimiter(',');
    sub->add_flag("--degrees", o.degrees, "Interpret measurement angles as degrees");
}

inline void add_output_flags(CLI::App* sub, Options& o) {
    sub->add_option("--format", o.format, "Output format")
        ->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--out", o.out_path, "Write output to this file instead of stdout");
}

struct OutputTarget {
    std::ofstream file;
    std::ostream* stream = nullptr;

    OutputTarget(const Options& o, std::ostream& fallback) {
        if (o.out_path.empty()) {
            stream = &fallback;
            return;
        }
        file.open(o.out_path);
        if (!file) throw FlagError("--out: cannot open '" + o.out_path + "' for writing");
        stream = &file;
    }
    std::ostream& os() { return *stream; }
};

}  // namespace detail

inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    using detail::Options;
    Options o;

    CLI::App app{"Bell cat correlations, inequality tests and spin-parity sweeps"};
    app.require_subcommand(1);

    auto* correlate_cmd =
        app.add_subcommand("correlate", "Correlation P = P_lc + P_nlc for one direction pair");
    detail::add_state_flags(correlate_cmd, o);
    detail::add_direction_flags(correlate_cmd, o, 2);
    detail::add_output_flags(correlate_cmd, o);
    correlate_cmd->add_option("--mode", o.mode, "Evaluation route")
        ->check(CLI::IsMember({"closed_form", "oracle"}));

    auto* bell_cmd =
        app.add_subcommand("bell", "Modified Bell inequality |P(ab)-P(ac)| <= 1-P(bc)");
    detail::add_state_flags(bell_cmd, o);
    detail::add_direction_flags(bell_cmd, o, 3);
    detail::add_output_flags(bell_cmd, o);
    bell_cmd->add_option("--which", o.which, "Correlation part to test")
        ->check(CLI::IsMember({"local_only", "total"}));

    auto* chsh_cmd = app.add_subcommand("chsh", "CHSH combination |P(ab)+P(ac)+P(db)-P(dc)|");
    detail::add_state_flags(chsh_cmd, o);
    detail::add_direction_flags(chsh_cmd, o, 4);
    detail::add_output_flags(chsh_cmd, o);
    chsh_cmd->add_option("--which", o.which, "Correlation part to test")
        ->check(CLI::IsMember({"local_only", "total"}));

    const auto add_search_flags = [&o](CLI::App* sub) {
        sub->add_option("--objective", o.objective, "Quantity to maximize")
            ->check(CLI::IsMember({"chsh_total", "chsh_local", "bell_margin_total",
                                   "bell_margin_local", "nlc_magnitude"}));
        sub->add_option("--grid", o.grid, "Grid points per angle (>= 4)")
            ->check(CLI::Range(4, 4096));
        sub->add_option("--refine", o.refine, "Refinement iteration cap")
            ->check(CLI::NonNegativeNumber);
        sub->add_flag("--optimize-state", o.optimize_state,
                      "Also optimize xi and eta (otherwise fixed at --xi/--eta)");
    };

    auto* maximize_cmd =
        app.add_subcommand("maximize", "Maximize an objective over measurement directions");
    detail::add_state_flags(maximize_cmd, o);
    add_search_flags(maximize_cmd);
    detail::add_output_flags(maximize_cmd, o);

    auto* sweep_cmd =
        app.add_subcommand("parity-sweep", "Run the maximization for every s up to --spin2-max");
    sweep_cmd->add_option("--spin2-max", o.spin2_max, "Largest 2s in the sweep (1..50)")
        ->check(CLI::Range(1, kMaxTwiceSpin));
    sweep_cmd->add_option("--xi", o.xi, "State parameter xi (radians)");
    sweep_cmd->add_option("--eta", o.eta, "State parameter eta (radians)");
    add_search_flags(sweep_cmd);
    detail::add_output_flags(sweep_cmd, o);

    auto* sq_cmd = app.add_subcommand("sample-quantum",
                                      "Sample projective-measurement outcomes of the state");
    detail::add_state_flags(sq_cmd, o);
    detail::add_direction_flags(sq_cmd, o, 2);
    detail::add_output_flags(sq_cmd, o);
    sq_cmd->add_option("--shots", o.shots, "Number of shots")->check(CLI::PositiveNumber);
    sq_cmd->add_option("--seed", o.seed, "RNG seed");

    auto* sl_cmd = app.add_subcommand("sample-lhv",
                                      "Sample a local-hidden-variable model correlation");
    sl_cmd->add_option("--model", o.model, "LHV model")->check(CLI::IsMember({"sign"}));
    detail::add_direction_flags(sl_cmd, o, 2);
    detail::add_output_flags(sl_cmd, o);
    sl_cmd->add_option("--shots", o.shots, "Number of shots")->check(CLI::PositiveNumber);
    sl_cmd->add_option("--seed", o.seed, "RNG seed");

    try {
        std::reverse(args.begin(), args.end());  // CLI11 consumes reversed vectors
        app.parse(args);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    try {
        detail::OutputTarget target(o, out);
        std::ostream& os = target.os();
        const bool as_csv = o.format == "csv";

        if (correlate_cmd->parsed()) {
            const StateParams st = detail::make_state(o);
            const auto dirs = detail::make_directions(o, 2);
            const Mode mode = o.mode == "oracle" ? Mode::oracle : Mode::closed_form;
            const CorrelationBreakdown c = correlate(st, dirs[0], dirs[1], mode);
            if (as_csv) {
                csv::correlate_header(os);
                csv::correlate_row(os, st, dirs[0], dirs[1], c);
            } else {
                nlohmann::json j = c;
                j["schema_version"] = kSchemaVersion;
                j["s2"] = st.spin.twice();
                j["xi"] = st.xi;
                j["eta"] = st.eta;
                j["mode"] = o.mode;
                j["a"] = dirs[0];
                j["b"] = dirs[1];
                os << j.dump() << "\n";
            }
        } else if (bell_cmd->parsed()) {
            const StateParams st = detail::make_state(o);
            const auto dirs = detail::make_directions(o, 3);
            const Part which = detail::parse_which(o.which);
            const BellResult r = bell_lhs_rhs({st, dirs[0], dirs[1], dirs[2]}, which);
            if (as_csv) {
                csv::inequality_header(os);
                os << st.spin.twice() << ',' << csv::num(st.xi) << ',' << csv::num(st.eta)
                   << ',' << o.which << ",bell," << csv::num(r.margin()) << ','
                   << csv::num(r.lhs) << ',' << csv::num(r.rhs) << ',' << csv::num(r.rhs)
                   << ',' << (r.violated ? "true" : "false") << "\n";
            } else {
                nlohmann::json j{{"schema_version", kSchemaVersion},
                                 {"kind", "bell"},
                                 {"s2", st.spin.twice()},
                                 {"xi", st.xi},
                                 {"eta", st.eta},
                                 {"which", o.which},
                                 {"lhs", r.lhs},
                                 {"rhs", r.rhs},
                                 {"margin", r.margin()},
                                 {"violated", r.violated},
                                 {"angles", dirs}};
                os << j.dump() << "\n";
            }
        } else if (chsh_cmd->parsed()) {
            const StateParams st = detail::make_state(o);
            const auto dirs = detail::make_directions(o, 4);
            const Part which = detail::parse_which(o.which);
            const double value = chsh({st, dirs[0], dirs[1], dirs[2], dirs[3]}, which);
            const bool violated = value > 2.0 + kViolationTol;
            if (as_csv) {
                csv::inequality_header(os);
                os << st.spin.twice() << ',' << csv::num(st.xi) << ',' << csv::num(st.eta)
                   << ',' << o.which << ",chsh," << csv::num(value) << ",,," << csv::num(2.0)
                   << ',' << (violated ? "true" : "false") << "\n";
            } else {
                nlohmann::json j{{"schema_version", kSchemaVersion},
                                 {"kind", "chsh"},
                                 {"s2", st.spin.twice()},
                                 {"xi", st.xi},
                                 {"eta", st.eta},
                                 {"which", o.which},
                                 {"value", value},
                                 {"bound", 2.0},
                                 {"violated", violated},
                                 {"angles", dirs}};
                os << j.dump() << "\n";
            }
        } else if (maximize_cmd->parsed() || sweep_cmd->parsed()) {
            SearchSpec spec{SpinQuantum(1)};
            spec.objective = parse_objective(o.objective);
            spec.optimize_state = o.optimize_state;
            spec.xi = o.xi;
            spec.eta = o.eta;
            spec.grid_points_per_angle = o.grid;
            spec.refine_iterations = o.refine;

            std::vector<ViolationReport> reports;
            if (maximize_cmd->parsed()) {
                spec.spin = SpinQuantum(o.spin2);
                reports.push_back(maximize(spec));
            } else {
                reports = parity_sweep(SpinQuantum(o.spin2_max), spec);
            }
            if (as_csv) {
                csv::sweep_header(os);
                for (const auto& r : reports) csv::sweep_row(os, r);
            } else {
                for (const auto& r : reports) os << nlohmann::json(r).dump() << "\n";
            }
        } else if (sq_cmd->parsed()) {
            const StateParams st = detail::make_state(o);
            const auto dirs = detail::make_directions(o, 2);
            const SampleStats stats = sample_quantum(st, dirs[0], dirs[1], o.shots, o.seed);
            if (as_csv) {
                csv::sample_header(os);
                csv::sample_row(os, stats);
            } else {
                nlohmann::json j = stats;
                j["s2"] = st.spin.twice();
                j["xi"] = st.xi;
                j["eta"] = st.eta;
                j["seed"] = o.seed;
                j["a"] = dirs[0];
                j["b"] = dirs[1];
                os << j.dump() << "\n";
            }
        } else if (sl_cmd->parsed()) {
            const auto dirs = detail::make_directions(o, 2);
            const SampleStats stats = sample_lhv(sign_model(), dirs[0], dirs[1], o.shots, o.seed);
            if (as_csv) {
                csv::sample_header(os);
                csv::sample_row(os, stats);
            } else {
                nlohmann::json j = stats;
                j["model"] = o.model;
                j["seed"] = o.seed;
                j["a"] = dirs[0];
                j["b"] = dirs[1];
                os << j.dump() << "\n";
            }
        }
    } catch (const detail::FlagError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

}  // namespace bellparity::cli
