// JSON and CSV serialization for the library's result types.
//
// JSON objects carry a schema_version field; CSV output starts with a
// "schema,<name>" line followed by the column header. Amplitude vectors
// serialize as [re, im] pairs in descending-m order.
#pragma once

#include <iomanip>
#include <ostream>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

#include "bellparity/bellcat.hpp"
#include "bellparity/coherent.hpp"
#include "bellparity/correlation.hpp"
#include "bellparity/montecarlo.hpp"
#include "bellparity/search.hpp"

namespace bellparity {

inline constexpr int kSchemaVersion = 1;

inline std::string objective_name(Objective o) {
    switch (o) {
        case Objective::chsh_total: return "chsh_total";
        case Objective::chsh_local: return "chsh_local";
        case Objective::bell_margin_total: return "bell_margin_total";
        case Objective::bell_margin_local: return "bell_margin_local";
        case Objective::nlc_magnitude: return "nlc_magnitude";
    }
    return "unknown";
}

inline Objective parse_objective(const std::string& name) {
    if (name == "chsh_total") return Objective::chsh_total;
    if (name == "chsh_local") return Objective::chsh_local;
    if (name == "bell_margin_total") return Objective::bell_margin_total;
    if (name == "bell_margin_local") return Objective::bell_margin_local;
    if (name == "nlc_magnitude") return Objective::nlc_magnitude;
    throw std::invalid_argument("unknown objective: " + name);
}

inline void to_json(nlohmann::json& j, const Direction& d) {
    j = nlohmann::json{{"theta", d.theta}, {"phi", d.phi}};
}

inline void to_json(nlohmann::json& j, const CoherentState& st) {
    nlohmann::json amps = nlohmann::json::array();
    for (const auto& a : st.amp) amps.push_back({a.real(), a.imag()});
    j = nlohmann::json{{"spin2", st.spin.twice()}, {"amplitudes", amps}};
}

inline void to_json(nlohmann::json& j, const DensityElements& e) {
    j = nlohmann::json{
        {"rho11_lc", e.local[0]},    {"rho22_lc", e.local[1]},
        {"rho33_lc", e.local[2]},    {"rho44_lc", e.local[3]},
        {"rho11_nlc", e.nonlocal[0]}, {"rho22_nlc", e.nonlocal[1]},
        {"rho33_nlc", e.nonlocal[2]}, {"rho44_nlc", e.nonlocal[3]},
    };
}

inline void to_json(nlohmann::json& j, const CorrelationBreakdown& c) {
    j = nlohmann::json{
        {"p_lc", c.p_lc}, {"p_nlc", c.p_nlc}, {"p_total", c.p_total}, {"w", c.weight}};
}

inline void to_json(nlohmann::json& j, const ViolationReport& r) {
    j = nlohmann::json{{"schema_version", kSchemaVersion},
                       {"spin2", r.spin.twice()},
                       {"objective", objective_name(r.objective)},
                       {"best_value", r.best_value},
                       {"grid_value", r.grid_value},
                       {"bound", r.bound},
                       {"violated", r.violated},
                       {"xi", r.xi},
                       {"eta", r.eta},
                       {"best_angles", r.best_angles}};
}

inline void to_json(nlohmann::json& j, const SampleStats& st) {
    j = nlohmann::json{{"schema_version", kSchemaVersion},
                       {"counts", st.counts},
                       {"n_other", st.n_other},
                       {"shots", st.shots},
                       {"kept", st.kept()},
                       {"p_raw", st.p_raw},
                       {"p_post", st.p_post},
                       {"se_raw", st.se_raw},
                       {"se_post", st.se_post}};
}

// --- CSV ------------------------------------------------------------------

namespace csv {

inline constexpr const char* kCorrelateSchema = "bellparity.correlate.v1";
inline constexpr const char* kSweepSchema = "bellparity.sweep.v1";
inline constexpr const char* kInequalitySchema = "bellparity.inequality.v1";
inline constexpr const char* kSampleSchema = "bellparity.sample.v1";

inline std::string num(double v) {
    std::ostringstream os;
    os << std::setprecision(17) << v;
    return os.str();
}

inline void correlate_header(std::ostream& os) {
    os << "schema," << kCorrelateSchema << "\n"
       << "s2,xi,eta,theta_a,phi_a,theta_b,phi_b,p_lc,p_nlc,p_total,w\n";
}

inline void correlate_row(std::ostream& os, const StateParams& p, const Direction& a,
                          const Direction& b, const CorrelationBreakdown& c) {
    os << p.spin.twice() << ',' << num(p.xi) << ',' << num(p.eta) << ',' << num(a.theta)
       << ',' << num(a.phi) << ',' << num(b.theta) << ',' << num(b.phi) << ','
       << num(c.p_lc) << ',' << num(c.p_nlc) << ',' << num(c.p_total) << ','
       << num(c.weight) << "\n";
}

inline void sweep_header(std::ostream& os) {
    os << "schema," << kSweepSchema << "\n"
       << "s2,objective,xi,eta,best_value,grid_value,bound,violated,"
          "theta_a,phi_a,theta_b,phi_b,theta_c,phi_c,theta_d,phi_d\n";
}

inline void sweep_row(std::ostream& os, const ViolationReport& r) {
    os << r.spin.twice() << ',' << objective_name(r.objective) << ',' << num(r.xi) << ','
       << num(r.eta) << ',' << num(r.best_value) << ',' << num(r.grid_value) << ','
       << num(r.bound) << ',' << (r.violated ? "true" : "false");
    for (std::size_t i = 0; i < 4; ++i) {
        if (i < r.best_angles.size())
            os << ',' << num(r.best_angles[i].theta) << ',' << num(r.best_angles[i].phi);
        else
            os << ",,";
    }
    os << "\n";
}

inline void inequality_header(std::ostream& os) {
    os << "schema," << kInequalitySchema << "\n"
       << "s2,xi,eta,which,kind,value,lhs,rhs,bound,violated\n";
}

inline void sample_header(std::ostream& os) {
    os << "schema," << kSampleSchema << "\n"
       << "shots,n1,n2,n3,n4,n_other,p_raw,p_post,se_raw,se_post\n";
}

inline void sample_row(std::ostream& os, const SampleStats& st) {
    os << st.shots << ',' << st.counts[0] << ',' << st.counts[1] << ',' << st.counts[2]
       << ',' << st.counts[3] << ',' << st.n_other << ',' << num(st.p_raw) << ','
       << num(st.p_post) << ',' << num(st.se_raw) << ',' << num(st.se_post) << "\n";
}

}  // namespace csv

}  // namespace bellparity
