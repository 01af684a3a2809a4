#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <numbers>
#include <string>

#include <json.hpp>

#include "nd/heun.hpp"

#ifndef ND_CLI_BINARY
#define ND_CLI_BINARY "./newton-dual"
#endif

namespace {

struct RunResult {
    int exit_code = -1;
    std::string out;
};

RunResult run_cli(const std::string& args) {
    const std::string cmd = std::string(ND_CLI_BINARY) + " " + args + " 2>/dev/null";
    RunResult r;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    char buf[4096];
    std::size_t n;
    while ((n = fread(buf, 1, sizeof(buf), pipe)) > 0) r.out.append(buf, n);
    const int status = pclose(pipe);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

const char* kHo = R"('{"kind":"polynomial","terms":[{"coeff":1,"power":2}]}')";
const char* kHoCoul =
    R"('{"kind":"polynomial","terms":[{"coeff":1,"power":2},{"coeff":-1,"power":-1}]}')";
const char* kR32 = R"('{"kind":"polynomial","terms":[{"coeff":-0.5,"power":-1.5}]}')";

}  // namespace

TEST_CASE("spectrum command cross-checks the harmonic levels") {
    const auto r = run_cli(std::string("spectrum ") + kHo +
                           " --l 0 --e-lo 1 --e-hi 12 --rmax 12");
    REQUIRE(r.exit_code == 0);
    const auto doc = nlohmann::json::parse(r.out);
    CHECK(doc.at("schema") == "newton-dual/v1");
    CHECK(doc.at("verified") == true);
    const auto& rows = doc.at("states");
    REQUIRE(rows.size() == 3);
    const double expect[] = {3.0, 7.0, 11.0};
    for (int j = 0; j < 3; ++j) {
        CHECK(std::abs(rows[j].at("E_K2").get<double>() - expect[j]) <= 1e-5);
        CHECK(rows[j].at("rel_diff").get<double>() <= 1e-3);
    }
}

TEST_CASE("spectrum csv output carries the documented header") {
    const auto r = run_cli(std::string("spectrum ") + kHo +
                           " --l 0 --e-lo 1 --e-hi 12 --rmax 12 --format csv");
    REQUIRE(r.exit_code == 0);
    CHECK(r.out.rfind("n_r,E_K2,E_oracle,rel_diff\n", 0) == 0);
}

TEST_CASE("dualize emits both pivot images of a two-term potential") {
    const auto r = run_cli(std::string("dualize ") + kHoCoul + " --l 0 --E 5");
    REQUIRE(r.exit_code == 0);
    const auto doc = nlohmann::json::parse(r.out);
    const auto& members = doc.at("dual_set");
    REQUIRE(members.size() == 3);
    CHECK(members[0].at("role") == "input");
    // pivot of r^2: images at rho^{-1} and rho^{-3/2}
    const auto& t1 = members[1].at("potential").at("terms");
    CHECK(t1[0].at("power").get<double>() == doctest::Approx(-1.0));
    CHECK(t1[1].at("power").get<double>() == doctest::Approx(-1.5));
    // pivot of 1/r: images at rho^2 and rho^6
    const auto& t2 = members[2].at("potential").at("terms");
    CHECK(t2[0].at("power").get<double>() == doctest::Approx(2.0));
    CHECK(t2[1].at("power").get<double>() == doctest::Approx(6.0));
    CHECK(members[1].at("heun_reducible") == true);
    CHECK(members[2].at("heun_reducible") == true);
}

TEST_CASE("dualize degrades to exit 3 when a pivot sits at the exponent pole") {
    const auto r = run_cli(
        R"(dualize '{"kind":"polynomial","terms":[{"coeff":1,"power":2},{"coeff":1,"power":-2}]}')");
    CHECK(r.exit_code == 3);
    const auto doc = nlohmann::json::parse(r.out);
    CHECK(doc.at("dual_set")[2].contains("error"));
}

TEST_CASE("identical inputs produce byte-identical output") {
    const std::string args =
        std::string("spectrum ") + kHo + " --l 0 --e-lo 1 --e-hi 12 --rmax 12";
    const auto a = run_cli(args);
    const auto b = run_cli(args);
    CHECK(a.exit_code == 0);
    CHECK(a.out == b.out);
}

TEST_CASE("malformed input exits with code 2") {
    CHECK(run_cli("spectrum '{bad json' --e-lo 1 --e-hi 12").exit_code == 2);
    CHECK(run_cli("spectrum /no/such/file.json --e-lo 1 --e-hi 12").exit_code == 2);
    CHECK(run_cli("spectrum").exit_code == 2);  // missing required arguments
}

TEST_CASE("heun command values agree with the library") {
    const auto r = run_cli("heun --params 1 0 3 0 --z 0.5 --which regular");
    REQUIRE(r.exit_code == 0);
    const auto doc = nlohmann::json::parse(r.out);
    const nd::cplx want = nd::heun_regular({1.0, 0.0, 3.0, 0.0}, 0.5);
    CHECK(std::abs(doc.at("value").at("re").get<double>() - want.real()) <= 1e-14);
    CHECK(std::abs(doc.at("value").at("im").get<double>() - want.imag()) <= 1e-14);
}

TEST_CASE("verify suite passes and records the adjudicated denominator reading") {
    const auto r = run_cli("verify");
    REQUIRE(r.exit_code == 0);
    const auto doc = nlohmann::json::parse(r.out);
    CHECK(doc.at("all_pass") == true);
    CHECK(doc.at("mdim_denominator_reading") == "squared");
    for (const auto& c : doc.at("checks")) CHECK(c.at("pass") == true);
}

TEST_CASE("phase command cross-checks both phase extractions") {
    const auto r = run_cli(std::string("phase ") + kR32 +
                           " --l 0 --k-min 0.5 --k-max 1 --k-points 2"
                           " --rmax 60 --grid-points 24000");
    REQUIRE(r.exit_code == 0);
    const auto doc = nlohmann::json::parse(r.out);
    CHECK(doc.at("verified") == true);
    for (const auto& row : doc.at("rows"))
        CHECK(row.at("abs_diff").get<double>() <= 2e-2);
}

TEST_CASE("orbit command reports the harmonic apsidal angle and dual residual") {
    const auto r = run_cli(std::string("orbit ") + kHo +
                           " --E 2 --L 0.8 --r-start 1 --steps 2000");
    REQUIRE(r.exit_code == 0);
    const auto doc = nlohmann::json::parse(r.out);
    CHECK(std::abs(doc.at("apsidal_angle").get<double>() - 0.5 * std::numbers::pi) <=
          1e-4);
    CHECK(doc.at("dual").at("max_residual").get<double>() <= 1e-4);
}
