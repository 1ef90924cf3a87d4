#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "hecke/report.hpp"

using namespace hecke;
using namespace hecke::report;
using json = nlohmann::json;

namespace {

const std::string kDefault = std::string(HECKE_SOURCE_DIR) + "/scenarios/g2-default.json";

json default_json()
{
    std::ifstream f(kDefault);
    return json::parse(f);
}

std::string write_tmp(const json& j, const std::string& name)
{
    std::ofstream f(name);
    f << j.dump(2);
    return name;
}

} // namespace

TEST_CASE("bundled scenario passes with at least 25 checks")
{
    std::ostringstream out, err;
    RunOptions opt;
    opt.timestamp = "fixed";
    int rc = run(kDefault, "cli_report.json", opt, out, err);
    CHECK(rc == kExitOk);
    std::ifstream f("cli_report.json");
    json rep = json::parse(f);
    CHECK(rep.at("schema") == 1);
    CHECK(rep.at("check_count").get<int>() >= 25);
    CHECK(rep.at("overall_pass").get<bool>());
    for (const auto& s : rep.at("suites"))
        for (const auto& c : s.at("checks")) {
            std::string a = c.at("anchor").get<std::string>();
            CHECK(std::find(kAnchors.begin(), kAnchors.end(), a) != kAnchors.end());
        }
    // k = 0 contrast is present and does not count
    bool seen = false;
    for (const auto& c : rep.at("contrast")) seen = seen || c.at("name") == "commutator-k=0";
    CHECK(seen);
    CHECK(out.str().find("overall PASS") != std::string::npos);
    std::remove("cli_report.json");
}

TEST_CASE("reports are deterministic apart from the timestamp")
{
    Scenario sc = load_scenario(kDefault);
    RunOptions opt;
    opt.suites = {"hecke", "variation"};
    json a = build_report(sc, opt), b = build_report(sc, opt);
    a.erase("timestamp");
    b.erase("timestamp");
    CHECK(a.dump() == b.dump());
    opt.seed = 99;
    json c = build_report(sc, opt);
    CHECK(c.at("environment").at("seed") == 99);
}

TEST_CASE("wrong number of points is a validation error")
{
    json j = default_json();
    j["points"]["P"].erase(5);
    std::ostringstream out, err;
    CHECK(run(write_tmp(j, "cli_5pts.json"), "", {}, out, err) == kExitInvalid);
    CHECK(err.str().find("expected 3g = 6 points") != std::string::npos);
    std::remove("cli_5pts.json");
}

TEST_CASE("coincident l with the hitchin suite is a numeric failure naming the indices")
{
    json j = default_json();
    for (int i = 1; i < 4; ++i) j["ell"][i] = j["ell"][0];
    j["suites"] = {"hitchin"};
    std::ostringstream out, err;
    CHECK(run(write_tmp(j, "cli_den0.json"), "", {}, out, err) == kExitNumeric);
    CHECK(err.str().find("DenZero") != std::string::npos);
    CHECK(err.str().find("(1,2)") != std::string::npos);
    std::remove("cli_den0.json");
}

TEST_CASE("scenario parsing rejects bad input")
{
    json j = default_json();
    j["schema"] = 2;
    CHECK_THROWS_AS(parse_scenario(j), ScenarioError);
    j = default_json();
    j["suits"] = json::array();
    CHECK_THROWS_AS(parse_scenario(j), ScenarioError);
    j = default_json();
    j["suites"] = {"periods", "nonsense"};
    CHECK_THROWS_AS(parse_scenario(j), ScenarioError);
    j = default_json();
    j["points"]["P"][0]["sheet"] = 0;
    CHECK_THROWS_AS(parse_scenario(j), ScenarioError);
    std::ostringstream out, err;
    CHECK(run("does-not-exist.json", "", {}, out, err) == kExitInvalid);
}

TEST_CASE("a failing check gives exit code 1")
{
    json j = default_json();
    j["suites"] = {"periods"};
    j["tolerances"] = {{"tau-asymmetry", -1.0}};
    std::ostringstream out, err;
    CHECK(run(write_tmp(j, "cli_fail.json"), "", {}, out, err) == kExitCheckFailed);
    std::remove("cli_fail.json");
}

TEST_CASE("seeded points and l")
{
    json j = default_json();
    j["points"] = {{"seed", 17}};
    j["ell"] = {{"seed", 18}};
    j["suites"] = {"green", "hecke"};
    Scenario sc = parse_scenario(j);
    json rep = build_report(sc, {});
    CHECK(rep.at("environment").at("points_seed") == 17);
    CHECK(rep.at("environment").at("ell_seed") == 18);
    CHECK(rep.at("check_count") == 8);
}
