#pragma once
// Scenario files in, JSON reports out. Exit codes: 0 all asserted checks
// pass, 1 a check failed, 2 the scenario is invalid, 3 a numeric failure.

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "hecke/curve.hpp"

namespace hecke::report {

constexpr int kScenarioSchema = 1;
constexpr int kReportSchema = 1;
constexpr const char* kVersion = "0.1.0";

enum ExitCode { kExitOk = 0, kExitCheckFailed = 1, kExitInvalid = 2, kExitNumeric = 3 };

class ScenarioError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

extern const std::vector<std::string> kSuites; // canonical order
extern const std::vector<std::string> kAnchors;

struct Scenario {
    std::string name;
    std::uint64_t seed = 1;
    CurveSpec curve;
    PeriodSettings quad;
    int theta_max_radius = 80;
    std::optional<std::string> cache_path;

    // explicit points, or drawn from points_seed (3g + 1, the last one is P0)
    bool explicit_points = false;
    SurfacePoint p0;
    std::vector<SurfacePoint> points;
    std::uint64_t points_seed = 0;

    bool explicit_ell = false;
    CVec ell;
    std::uint64_t ell_seed = 0;

    std::vector<std::string> suites;
    std::map<std::string, double> tolerances; // check name or suite name
    std::vector<double> kzb_k{1.0, -2.0};     // pole-law levels
    std::vector<double> contrast_k{0.0};      // commutators, never asserted

    int genus() const { return genus_of(curve); }
};

Scenario parse_scenario(const nlohmann::json& j);
Scenario load_scenario(const std::string& path);

struct RunOptions {
    std::optional<std::uint64_t> seed;
    std::vector<std::string> suites;     // empty: as in the scenario
    std::vector<double> contrast_k;      // empty: as in the scenario
    bool contrast_only = false;
    std::string timestamp;               // empty: current UTC time
};

// Throws ScenarioError or hecke::Error.
nlohmann::json build_report(const Scenario& sc, const RunOptions& opt);
// Human-readable lines for a report.
void print_summary(const nlohmann::json& report, std::ostream& out);

// Loads, runs, writes out_path (when not empty) and prints the summary.
// Errors go to err; the return value is the process exit code.
int run(const std::string& scenario_path, const std::string& out_path, const RunOptions& opt, std::ostream& out,
        std::ostream& err);

nlohmann::json periods_json(const PeriodData& pd);
// Periods of the scenario curve, through its cache file when one is named.
// cache_note (optional) says whether the cache was loaded, created or rebuilt.
PeriodData scenario_periods(const Scenario& sc, std::string* cache_note = nullptr);

} // namespace hecke::report
