// hecke: periods, verification reports and cache files for a scenario.

#include <fstream>
#include <iostream>

#include "CLI11.hpp"

#include "hecke/cache.hpp"
#include "hecke/report.hpp"

using namespace hecke;
using namespace hecke::report;

namespace {

template <class F>
int guarded(F&& f)
{
    try {
        return f();
    } catch (const ScenarioError& e) {
        std::cerr << "invalid scenario: " << e.what() << "\n";
        return kExitInvalid;
    } catch (const Error& e) {
        std::cerr << (e.code() == ErrorCode::InvalidInput ? "invalid scenario: " : "numeric failure: ") << e.what()
                  << "\n";
        return e.code() == ErrorCode::InvalidInput ? kExitInvalid : kExitNumeric;
    }
}

int write_json(const nlohmann::json& j, const std::string& out)
{
    if (out.empty()) {
        std::cout << j.dump(2) << "\n";
        return kExitOk;
    }
    std::ofstream f(out);
    if (!f) {
        std::cerr << "cannot write " << out << "\n";
        return kExitInvalid;
    }
    f << j.dump(2) << "\n";
    return kExitOk;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Hecke parametrization of rank-2 bundles on hyperelliptic curves: numerical checks"};
    app.require_subcommand(1);

    std::string scenario, out;
    std::uint64_t seed = 0;
    std::vector<std::string> suites;
    std::vector<double> ks;

    auto* periods = app.add_subcommand("periods", "print the period matrix and base data of the scenario curve");
    periods->add_option("--scenario", scenario, "scenario JSON")->required()->check(CLI::ExistingFile);
    periods->add_option("--out", out, "write JSON here instead of stdout");

    auto* verify = app.add_subcommand("verify", "run the verification suites and write a report");
    verify->add_option("--scenario", scenario, "scenario JSON")->required()->check(CLI::ExistingFile);
    verify->add_option("--out", out, "report path");
    auto* seed_opt = verify->add_option("--seed", seed, "override the scenario seed");
    verify->add_option("--suite", suites, "run only these suites (repeatable)");
    verify->add_option("--k", ks, "levels for the non-critical commutator contrast (repeatable)");

    auto* contrast = app.add_subcommand("contrast", "commutators away from the critical level, not asserted");
    contrast->add_option("--scenario", scenario, "scenario JSON")->required()->check(CLI::ExistingFile);
    contrast->add_option("--out", out, "report path");
    auto* cseed_opt = contrast->add_option("--seed", seed, "override the scenario seed");
    contrast->add_option("--k", ks, "levels (repeatable), default from the scenario");

    auto* cache = app.add_subcommand("cache", "build or refresh the period cache of the scenario curve");
    cache->add_option("--scenario", scenario, "scenario JSON")->required()->check(CLI::ExistingFile);
    cache->add_option("--out", out, "cache path (default: the scenario's cache entry)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : kExitInvalid;
    }

    if (*verify || *contrast) {
        RunOptions opt;
        if (*seed_opt || *cseed_opt) opt.seed = seed;
        opt.suites = suites;
        opt.contrast_k = ks;
        opt.contrast_only = bool(*contrast);
        return run(scenario, out, opt, std::cout, std::cerr);
    }
    if (*periods) {
        return guarded([&] {
            Scenario sc = load_scenario(scenario);
            return write_json(periods_json(scenario_periods(sc)), out);
        });
    }
    return guarded([&] {
        Scenario sc = load_scenario(scenario);
        if (!out.empty()) sc.cache_path = out;
        if (!sc.cache_path) throw ScenarioError("no cache path: pass --out or set \"cache\" in the scenario");
        std::string note;
        PeriodData pd = scenario_periods(sc, &note);
        std::cout << note << "  hash " << curve_hash(pd.spec, pd.settings) << "\n";
        return kExitOk;
    });
}
