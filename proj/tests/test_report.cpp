#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "checks.hpp"
#include "hv/elliptic.hpp"
#include "hv/report.hpp"

using namespace hv;
using namespace hv::testing;

namespace {

constexpr mpfr_prec_t P = 128;

RunConfig quick(std::vector<std::string> suites, long samples = 2) {
    RunConfig cfg;
    cfg.suites = std::move(suites);
    cfg.sample_count = samples;
    return validate(cfg);
}

std::vector<std::string> record_names(const Report& rep) {
    std::vector<std::string> names;
    for (const CheckRecord& c : rep.checks) names.push_back(c.name);
    return names;
}

bool has_record(const Report& rep, const std::string& name) {
    for (const CheckRecord& c : rep.checks)
        if (c.name == name) return true;
    return false;
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string f;
    while (std::getline(ss, f, ',')) out.push_back(f);
    return out;
}

// Exit code of the CLI binary under /bin/sh, with args appended verbatim.
int cli(const std::string& args) {
    std::string cmd = std::string(HUBVERIFY_CLI_PATH) + " " + args;
    int rc = std::system(cmd.c_str());
    if (rc == -1) return -1;
    return WEXITSTATUS(rc);
}

}  // namespace

TEST_CASE("coupling text round-trips through its canonical form") {
    // Canonical spellings come back unchanged.
    for (const char* text : {"1", "-2", "5/2", "-7/3", "1+i", "1-i", "2i",
                             "-i", "3/2-5/4i", "-7/3+2i"}) {
        CAPTURE(text);
        CHECK(parse_coupling(text).str() == text);
    }

    SUBCASE("loose spellings canonicalize") {
        CHECK(parse_coupling("i").str() == "i");
        CHECK(parse_coupling(" 2 + 1i ").str() == "2+i");
        CHECK(parse_coupling("+3").str() == "3");
        CHECK(parse_coupling("0-1i").str() == "-i");
        CHECK(parse_coupling("4/8").str() == "1/2");
    }

    SUBCASE("garbage is a usage error") {
        for (const char* text : {"", "abc", "++i", "1+", "2..5", "1/0", "i7"}) {
            CAPTURE(text);
            CHECK_THROWS_AS(parse_coupling(text), std::invalid_argument);
        }
    }
}

TEST_CASE("config validation fills defaults and rejects bad input") {
    SUBCASE("defaults") {
        RunConfig cfg = validate(RunConfig{});
        CHECK(cfg.precision_bits == 128);
        CHECK(cfg.tolerance_exponent == 52);  // precision/2 - 12
        REQUIRE(cfg.u_list.size() == 4);
        CHECK(cfg.u_list[0].str() == "1");
        CHECK(cfg.u_list[3].str() == "1+i");
        REQUIRE(cfg.suites.size() == 1);
        CHECK(cfg.suites[0] == "all");
    }

    SUBCASE("derived tolerance follows precision") {
        RunConfig cfg;
        cfg.precision_bits = 256;
        CHECK(validate(cfg).tolerance_exponent == 116);
    }

    SUBCASE("rejections") {
        RunConfig cfg;
        cfg.precision_bits = 32;
        CHECK_THROWS_AS(validate(cfg), std::invalid_argument);

        cfg = RunConfig{};
        cfg.sample_count = 0;
        CHECK_THROWS_AS(validate(cfg), std::invalid_argument);

        cfg = RunConfig{};
        cfg.tolerance_exponent = 4;
        CHECK_THROWS_AS(validate(cfg), std::invalid_argument);

        cfg = RunConfig{};
        cfg.tolerance_exponent = 200;  // beyond 128-bit precision
        CHECK_THROWS_AS(validate(cfg), std::invalid_argument);

        cfg = RunConfig{};
        cfg.suites = {"curves", "bogus"};
        CHECK_THROWS_AS(validate(cfg), std::invalid_argument);

        cfg = RunConfig{};
        cfg.u_list = {{Rat(0), Rat(0)}};
        CHECK_THROWS_AS(validate(cfg), std::invalid_argument);
    }

    SUBCASE("suite list deduplicates in first-seen order") {
        RunConfig cfg;
        cfg.suites = {"curves", "lax", "curves"};
        cfg = validate(cfg);
        REQUIRE(cfg.suites.size() == 2);
        CHECK(cfg.suites[0] == "curves");
        CHECK(cfg.suites[1] == "lax");
    }
}

TEST_CASE("a curves run passes and its records are well formed") {
    Report rep = run(quick({"curves"}));
    CHECK(rep.overall_pass);
    REQUIRE(!rep.checks.empty());
    std::set<std::string> seen;
    for (const CheckRecord& c : rep.checks) {
        CAPTURE(c.name);
        CHECK(seen.insert(c.name).second);  // names unique
        CHECK(c.name.rfind("curves.", 0) == 0);
        CHECK(c.method == "exact");
        CHECK(c.status == "pass");
        CHECK(!c.anchor.empty());
        CHECK(!c.detail.empty());
    }
    // sorted by name
    std::vector<std::string> names = record_names(rep);
    CHECK(std::is_sorted(names.begin(), names.end()));
}

TEST_CASE("mutation controls appear only when asked for") {
    RunConfig cfg = quick({"curves"});
    Report plain = run(cfg);
    CHECK(!has_record(plain, "curves.isogeny_pushforward_control"));

    cfg.mutations = true;
    Report mutated = run(cfg);
    CHECK(mutated.overall_pass);
    CHECK(has_record(mutated, "curves.isogeny_pushforward_control"));
    CHECK(has_record(mutated, "curves.modular_coefficient_control"));
}

TEST_CASE("a coupling whose context cannot be built is reported, not fatal") {
    // U = 4i puts the modulus at 1, on the branch cut of the period integral.
    RunConfig cfg = quick({"elliptic"}, 1);
    cfg.u_list = {parse_coupling("2"), parse_coupling("4i")};
    cfg = validate(cfg);
    Report rep = run(cfg);
    CHECK(!rep.overall_pass);
    CHECK(has_record(rep, "config.coupling[4i]"));
    CHECK(has_record(rep, "elliptic.uniformized_on_curve"));  // 2 still ran
    CHECK(!has_record(rep, "config.no_usable_coupling"));

    SUBCASE("all couplings dead skips the numeric suites entirely") {
        cfg.u_list = {parse_coupling("4i")};
        Report dead = run(cfg);
        CHECK(!dead.overall_pass);
        CHECK(has_record(dead, "config.no_usable_coupling"));
        for (const CheckRecord& c : dead.checks)
            CHECK(c.name.rfind("elliptic.", 0) == std::string::npos);
    }
}

TEST_CASE("rendered JSON is byte-deterministic unless timings are on") {
    RunConfig cfg = quick({"elliptic"});
    std::string a = render_json(run(cfg));
    std::string b = render_json(run(cfg));
    CHECK(a == b);

    SUBCASE("timings add a seconds field") {
        cfg.timings = true;
        auto j = nlohmann::json::parse(render_json(run(cfg)));
        REQUIRE(!j["checks"].empty());
        CHECK(j["checks"][0].contains("seconds"));
        auto plain = nlohmann::json::parse(a);
        CHECK(!plain["checks"][0].contains("seconds"));
    }
}

TEST_CASE("rendered JSON carries the schema the CLI promises") {
    RunConfig cfg = quick({"curves"});
    cfg.seed = 7;
    auto j = nlohmann::json::parse(render_json(run(cfg)));
    CHECK(j["schema_version"] == 1);
    CHECK(j["config"]["precision_bits"] == 128);
    CHECK(j["config"]["tolerance_exponent"] == 52);
    CHECK(j["config"]["seed"] == 7);
    REQUIRE(j["config"]["u_list"].is_array());
    CHECK(j["config"]["u_list"][3] == "1+i");
    CHECK(j["overall"] == "pass");
    for (const auto& c : j["checks"]) {
        for (const char* key : {"name", "anchor", "method", "status", "detail"})
            CHECK(c.contains(key));
        CHECK((c["status"] == "pass" || c["status"] == "fail" ||
               c["status"] == "error"));
    }
}

TEST_CASE("an unreachable tolerance turns the run into a fail, not an error") {
    RunConfig cfg = quick({"elliptic"});
    cfg.tolerance_exponent = 128;  // at the working precision, unreachable
    cfg = validate(cfg);
    Report rep = run(cfg);
    CHECK(!rep.overall_pass);
    bool some_fail = false;
    for (const CheckRecord& c : rep.checks) {
        CHECK(c.status != "error");
        if (c.status == "fail") some_fail = true;
    }
    CHECK(some_fail);
}

TEST_CASE("weight grid is pinned at zero and deterministic") {
    Complex U = Complex::of(2L, P);
    std::vector<Complex> g1 = weight_grid(U, 3, 9, P);
    std::vector<Complex> g2 = weight_grid(U, 3, 9, P);
    REQUIRE(g1.size() == 4);
    CHECK(g1[0].is_zero());
    for (std::size_t n = 0; n < g1.size(); ++n) {
        CHECK(g1[n].re == g2[n].re);
        CHECK(g1[n].im == g2[n].im);
    }
    CHECK_THROWS_AS(weight_grid(Complex::zero(P), 3, 9, P),
                    std::invalid_argument);
}

TEST_CASE("weights CSV: header, pinned first row, pole rows, trig limit") {
    Complex U = Complex::of(2L, P);
    ThetaContext ctx = ThetaContext::for_coupling(U, P);

    SUBCASE("lambda = 0 row is exact") {
        std::ostringstream out;
        emit_weights_csv(out, U, {Complex::zero(P)}, P);
        std::istringstream in(out.str());
        std::string header, row;
        std::getline(in, header);
        CHECK(header == "lambda_re,lambda_im,xc,yc,thc,curve_residual");
        std::getline(in, row);
        CHECK(row == "0,0,1,0,1,0");
    }

    SUBCASE("a pole keeps its row with nan fields") {
        Complex i = Complex::unit_i(P);
        std::ostringstream out;
        emit_weights_csv(out, U, {-(i * ctx.Kp) / 2L, i * ctx.Kp}, P);
        std::istringstream in(out.str());
        std::string header, row;
        std::getline(in, header);
        int pole_rows = 0;
        while (std::getline(in, row)) {
            auto f = split_csv_line(row);
            REQUIRE(f.size() == 6);
            CHECK(f[2] == "nan");
            CHECK(f[5] == "pole");
            ++pole_rows;
        }
        CHECK(pole_rows == 2);
    }

    SUBCASE("row per grid point, on-curve residual column small") {
        std::vector<Complex> grid = weight_grid(U, 5, 3, P);
        std::ostringstream out;
        emit_weights_csv(out, U, grid, P);
        std::istringstream in(out.str());
        std::string line;
        std::getline(in, line);
        int rows = 0;
        while (std::getline(in, line)) {
            auto f = split_csv_line(line);
            REQUIRE(f.size() == 6);
            CHECK(std::fabs(std::strtod(f[5].c_str(), nullptr)) < 1e-30);
            ++rows;
        }
        CHECK(rows == 6);
    }

    SUBCASE("zero coupling tabulates the trigonometric weights") {
        std::ostringstream out;
        emit_weights_csv(out, Complex::zero(P),
                         {Complex::of(make_rat(1, 2), make_rat(0), P)}, P);
        std::istringstream in(out.str());
        std::string header, row;
        std::getline(in, header);
        std::getline(in, row);
        auto f = split_csv_line(row);
        REQUIRE(f.size() == 6);
        CHECK(std::strtod(f[2].c_str(), nullptr) ==
              doctest::Approx(std::cos(0.5)).epsilon(1e-12));
        CHECK(std::strtod(f[3].c_str(), nullptr) ==
              doctest::Approx(std::sin(0.5)).epsilon(1e-12));
    }
}

TEST_CASE("CLI exit codes: 0 pass, 1 fail, 2 usage") {
    const std::string devnull = " > /dev/null 2>&1";

    SUBCASE("usage paths") {
        CHECK(cli("--help" + devnull) == 0);
        CHECK(cli("--no-such-flag" + devnull) == 2);
        CHECK(cli("--suite bogus" + devnull) == 2);
        CHECK(cli("--precision 16" + devnull) == 2);
        CHECK(cli("--u 0" + devnull) == 2);
        CHECK(cli("--u 1bad" + devnull) == 2);
    }

    SUBCASE("passing and failing runs") {
        CHECK(cli("--suite curves" + devnull) == 0);
        // a tolerance at the working precision cannot be met numerically
        CHECK(cli("--suite elliptic --samples 2 --tolerance 128" + devnull) == 1);
    }

    SUBCASE("environment variables mirror flags, flags win") {
        std::string env = "HUBVERIFY_PRECISION=16 ";
        int rc = std::system((env + HUBVERIFY_CLI_PATH + " --suite curves" +
                              devnull).c_str());
        CHECK(WEXITSTATUS(rc) == 2);
        rc = std::system((env + HUBVERIFY_CLI_PATH +
                          " --precision 128 --suite curves" + devnull).c_str());
        CHECK(WEXITSTATUS(rc) == 0);
    }

    SUBCASE("--out writes the same JSON that stdout carries") {
        std::string out1 = "/tmp/hv_report_stdout.json";
        std::string out2 = "/tmp/hv_report_file.json";
        REQUIRE(cli("--suite curves --seed 3 > " + out1 + " 2> /dev/null") == 0);
        REQUIRE(cli("--suite curves --seed 3 --out " + out2 + devnull) == 0);
        std::ifstream a(out1), b(out2);
        std::stringstream sa, sb;
        sa << a.rdbuf();
        sb << b.rdbuf();
        CHECK(sa.str() == sb.str());
        auto j = nlohmann::json::parse(sa.str());
        CHECK(j["overall"] == "pass");
        std::remove(out1.c_str());
        std::remove(out2.c_str());
    }

    SUBCASE("--emit-weights writes the CSV next to the JSON") {
        std::string csv = "/tmp/hv_report_weights.csv";
        REQUIRE(cli("--suite curves --samples 4 --emit-weights " + csv +
                    devnull) == 0);
        std::ifstream in(csv);
        REQUIRE(in.good());
        std::string header;
        std::getline(in, header);
        CHECK(header == "lambda_re,lambda_im,xc,yc,thc,curve_residual");
        int rows = 0;
        std::string line;
        while (std::getline(in, line)) ++rows;
        CHECK(rows == 5);  // lambda = 0 plus sample_count draws
        std::remove(csv.c_str());
    }
}
