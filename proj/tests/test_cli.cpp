#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "bellparity/cli.hpp"

using namespace bellparity;
using nlohmann::json;

namespace {

struct RunResult {
    int code;
    std::string out;
    std::string err;
};

RunResult run_cli(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = cli::run(std::move(args), out, err);
    return {code, out.str(), err.str()};
}

json parse_single(const std::string& text) { return json::parse(text); }

void require_keys(const json& j, const std::vector<std::string>& keys) {
    for (const auto& k : keys) {
        INFO("missing key: " << k);
        REQUIRE(j.contains(k));
    }
}

}  // namespace

TEST_CASE("chsh subcommand reproduces 2*sqrt(2) as JSON") {
    const RunResult r = run_cli({"chsh", "--spin2", "1", "--xi", "0.7853981634", "--eta",
                                 "0", "--coplanar",
                                 "0,0.7853981634,-0.7853981634,1.5707963268"});
    REQUIRE(r.code == 0);
    const json j = parse_single(r.out);
    require_keys(j, {"schema_version", "kind", "s2", "xi", "eta", "which", "value",
                     "bound", "violated", "angles"});
    CHECK(j["schema_version"] == 1);
    CHECK(j["kind"] == "chsh");
    CHECK(j["value"].get<double>() == Catch::Approx(2.828427).margin(1e-6));
    CHECK(j["violated"].get<bool>());
    CHECK(j["angles"].size() == 4);
}

TEST_CASE("correlate at integer spin reports zero nonlocal part") {
    const RunResult r = run_cli({"correlate", "--spin2", "2", "--xi", "0.785", "--theta-a",
                                 "1.5708", "--theta-b", "1.5708"});
    REQUIRE(r.code == 0);
    const json j = parse_single(r.out);
    require_keys(j, {"schema_version", "s2", "xi", "eta", "mode", "p_lc", "p_nlc",
                     "p_total", "w", "a", "b"});
    CHECK(j["p_nlc"].get<double>() == 0.0);
    CHECK(j["p_total"].get<double>() == j["p_lc"].get<double>());
}

TEST_CASE("correlate oracle mode matches the closed form") {
    const RunResult closed =
        run_cli({"correlate", "--spin2", "3", "--xi", "0.5", "--eta", "0.2", "--theta-a",
                 "1.1", "--phi-a", "0.7", "--theta-b", "2.0", "--phi-b", "4.0"});
    const RunResult oracle =
        run_cli({"correlate", "--spin2", "3", "--xi", "0.5", "--eta", "0.2", "--theta-a",
                 "1.1", "--phi-a", "0.7", "--theta-b", "2.0", "--phi-b", "4.0", "--mode",
                 "oracle"});
    REQUIRE(closed.code == 0);
    REQUIRE(oracle.code == 0);
    const json jc = parse_single(closed.out), jo = parse_single(oracle.out);
    CHECK(std::abs(jc["p_total"].get<double>() - jo["p_total"].get<double>()) < 1e-12);
}

TEST_CASE("bell subcommand flags the canonical violation") {
    const RunResult r = run_cli({"bell", "--spin2", "1", "--coplanar",
                                 "0,1.0471975512,2.0943951024"});
    REQUIRE(r.code == 0);
    const json j = parse_single(r.out);
    CHECK(j["lhs"].get<double>() == Catch::Approx(1.0).margin(1e-9));
    CHECK(j["rhs"].get<double>() == Catch::Approx(0.5).margin(1e-9));
    CHECK(j["violated"].get<bool>());

    const RunResult local = run_cli({"bell", "--spin2", "1", "--coplanar",
                                     "0,1.0471975512,2.0943951024", "--which",
                                     "local_only"});
    CHECK_FALSE(parse_single(local.out)["violated"].get<bool>());
}

TEST_CASE("degrees flag converts measurement angles") {
    const RunResult deg = run_cli({"correlate", "--spin2", "1", "--theta-a", "90",
                                   "--theta-b", "45", "--degrees"});
    const RunResult rad = run_cli({"correlate", "--spin2", "1", "--theta-a",
                                   "1.5707963267948966", "--theta-b",
                                   "0.7853981633974483"});
    REQUIRE(deg.code == 0);
    REQUIRE(rad.code == 0);
    CHECK(std::abs(parse_single(deg.out)["p_total"].get<double>() -
                   parse_single(rad.out)["p_total"].get<double>()) < 1e-12);
}

TEST_CASE("maximize emits a violation report") {
    const RunResult r = run_cli({"maximize", "--spin2", "1", "--objective", "chsh_total",
                                 "--grid", "8"});
    REQUIRE(r.code == 0);
    const json j = parse_single(r.out);
    require_keys(j, {"schema_version", "spin2", "objective", "best_value", "grid_value",
                     "bound", "violated", "xi", "eta", "best_angles"});
    CHECK(j["best_value"].get<double>() == Catch::Approx(2.828427).margin(1e-5));
    CHECK(j["best_angles"].size() == 4);
}

TEST_CASE("parity-sweep emits JSON lines and a CSV table") {
    const RunResult jl = run_cli({"parity-sweep", "--spin2-max", "4", "--objective",
                                  "nlc_magnitude", "--grid", "8"});
    REQUIRE(jl.code == 0);
    std::istringstream lines(jl.out);
    std::string line;
    int rows = 0;
    while (std::getline(lines, line)) {
        const json j = json::parse(line);
        require_keys(j, {"spin2", "best_value", "violated"});
        const int s2 = j["spin2"].get<int>();
        if (s2 % 2 == 0) CHECK_FALSE(j["violated"].get<bool>());
        ++rows;
    }
    CHECK(rows == 4);

    const std::string path = "cli_sweep_test.csv";
    const RunResult csv = run_cli({"parity-sweep", "--spin2-max", "4", "--objective",
                                   "nlc_magnitude", "--grid", "8", "--format", "csv",
                                   "--out", path});
    REQUIRE(csv.code == 0);
    std::ifstream in(path);
    REQUIRE(in.good());
    std::string schema_line, header, row;
    std::getline(in, schema_line);
    std::getline(in, header);
    CHECK(schema_line == std::string("schema,") + csv::kSweepSchema);
    CHECK(header.rfind("s2,objective,", 0) == 0);
    int data_rows = 0;
    while (std::getline(in, row))
        if (!row.empty()) ++data_rows;
    CHECK(data_rows == 4);
    in.close();
    std::remove(path.c_str());
}

TEST_CASE("sample-quantum and sample-lhv emit stats") {
    const RunResult q = run_cli({"sample-quantum", "--spin2", "1", "--theta-a", "0",
                                 "--theta-b", "0", "--shots", "5000", "--seed", "7"});
    REQUIRE(q.code == 0);
    const json jq = parse_single(q.out);
    require_keys(jq, {"schema_version", "counts", "n_other", "shots", "p_raw", "p_post",
                      "se_raw", "se_post", "seed"});
    CHECK(jq["shots"] == 5000);
    CHECK(jq["p_post"].get<double>() == 1.0);

    const RunResult l = run_cli({"sample-lhv", "--model", "sign", "--theta-a", "1.0",
                                 "--theta-b", "1.0", "--shots", "5000", "--seed", "7"});
    REQUIRE(l.code == 0);
    const json jl2 = parse_single(l.out);
    CHECK(jl2["p_raw"].get<double>() == 1.0);
    CHECK(jl2["model"] == "sign");
}

TEST_CASE("seeded CLI runs are reproducible") {
    const std::vector<std::string> args = {"sample-quantum", "--spin2", "3", "--theta-a",
                                           "1.2", "--theta-b", "0.4", "--shots", "20000",
                                           "--seed", "11"};
    CHECK(run_cli(args).out == run_cli(args).out);
}

TEST_CASE("correlate CSV follows the documented schema") {
    const RunResult r = run_cli({"correlate", "--spin2", "1", "--theta-a", "1.0",
                                 "--theta-b", "2.0", "--format", "csv"});
    REQUIRE(r.code == 0);
    std::istringstream lines(r.out);
    std::string schema_line, header;
    std::getline(lines, schema_line);
    std::getline(lines, header);
    CHECK(schema_line == std::string("schema,") + csv::kCorrelateSchema);
    CHECK(header == "s2,xi,eta,theta_a,phi_a,theta_b,phi_b,p_lc,p_nlc,p_total,w");
}

TEST_CASE("flag errors exit with code 2 and name the flag") {
    CHECK(run_cli({"frobnicate"}).code == 2);
    CHECK(run_cli({}).code == 2);

    const RunResult spin = run_cli({"correlate", "--spin2", "60", "--theta-a", "0",
                                    "--theta-b", "0"});
    CHECK(spin.code == 2);
    CHECK(spin.err.find("--spin2") != std::string::npos);

    const RunResult zero = run_cli({"correlate", "--spin2", "0", "--theta-a", "0",
                                    "--theta-b", "0"});
    CHECK(zero.code == 2);

    const RunResult theta = run_cli({"correlate", "--spin2", "1", "--theta-a", "4.0",
                                     "--theta-b", "0"});
    CHECK(theta.code == 2);
    CHECK(theta.err.find("--theta-a") != std::string::npos);

    const RunResult missing = run_cli({"correlate", "--spin2", "1", "--theta-a", "1.0"});
    CHECK(missing.code == 2);
    CHECK(missing.err.find("--theta-b") != std::string::npos);

    const RunResult coplanar = run_cli({"chsh", "--spin2", "1", "--coplanar", "0,1.0"});
    CHECK(coplanar.code == 2);
    CHECK(coplanar.err.find("--coplanar") != std::string::npos);

    const RunResult shots = run_cli({"sample-quantum", "--spin2", "1", "--theta-a", "0",
                                     "--theta-b", "0", "--shots", "0"});
    CHECK(shots.code == 2);

    const RunResult fmt = run_cli({"correlate", "--spin2", "1", "--theta-a", "0",
                                   "--theta-b", "0", "--format", "xml"});
    CHECK(fmt.code == 2);
}

TEST_CASE("unwritable --out path exits with code 2") {
    const RunResult r = run_cli({"correlate", "--spin2", "1", "--theta-a", "0",
                                 "--theta-b", "0", "--out", "/nonexistent-dir/x.json"});
    CHECK(r.code == 2);
    CHECK(r.err.find("--out") != std::string::npos);
}

TEST_CASE("help exits cleanly") {
    CHECK(run_cli({"--help"}).code == 0);
    CHECK(run_cli({"chsh", "--help"}).code == 0);
}

TEST_CASE("amplitude vectors serialize as [re, im] pairs in descending m") {
    const CoherentState st =
        coherent_state(SpinQuantum(2), Direction(kPi / 2.0, 0.0), Pole::plus);
    const json j = st;
    REQUIRE(j["amplitudes"].size() == 3);
    CHECK(j["spin2"] == 2);
    CHECK(j["amplitudes"][0][0].get<double>() == Catch::Approx(0.5));   // m = +1
    CHECK(j["amplitudes"][0][1].get<double>() == Catch::Approx(0.0).margin(1e-15));
    CHECK(j["amplitudes"][1][0].get<double>() == Catch::Approx(std::sqrt(0.5)));
    CHECK(j["amplitudes"][2][0].get<double>() == Catch::Approx(0.5));   // m = -1
}

TEST_CASE("density elements serialize under the documented keys") {
    const StateParams p{SpinQuantum(1), kPi / 4.0, 0.0};
    const json j = closed_form_elements(p, Direction(kPi / 2.0), Direction(kPi / 2.0));
    for (const char* key : {"rho11_lc", "rho22_lc", "rho33_lc", "rho44_lc", "rho11_nlc",
                            "rho22_nlc", "rho33_nlc", "rho44_nlc"})
        REQUIRE(j.contains(key));
    CHECK(j["rho11_nlc"].get<double>() == Catch::Approx(0.25));
    CHECK(j["rho22_nlc"].get<double>() == Catch::Approx(-0.25));
}
