#include "hecke/report.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <future>
#include <memory>
#include <ostream>
#include <set>

#include <Eigen/Core>

#include "hecke/cache.hpp"
#include "hecke/checks.hpp"

namespace hecke::report {

using json = nlohmann::json;

const std::vector<std::string> kSuites{"periods", "theta", "green", "hecke", "hitchin", "kzb", "variation"};

const std::vector<std::string> kAnchors{
    "tau-symmetric",      "re-tau-negative-definite", "a-period-normalization",
    "theta-even",         "theta-periodic",           "theta-quasi-periodic",
    "theta-heat",         "green-diag-residue",       "green-p0-residue",
    "green-b-monodromy",  "green-a-monodromy",        "den-determinant",
    "den-nonzero",        "stable",                   "fiber-finite",
    "h-regular",          "h-alternative",            "h-poisson-commute",
    "h-sl2-invariant",    "kzb-double-pole",          "kzb-critical-regular",
    "kzb-critical-commute", "kzb-noncritical-commute", "kzb-symbol",
    "variation-constraint", "variation-projection",
};

namespace {

// ---- scenario parsing

cplx parse_cplx(const json& j, const std::string& where)
{
    if (j.is_number()) return {j.get<double>(), 0.0};
    if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
        return {j[0].get<double>(), j[1].get<double>()};
    throw ScenarioError(where + ": expected a number or [re, im]");
}

json cplx_json(cplx z) { return json::array({z.real(), z.imag()}); }

json mat_json(const CMat& m)
{
    json rows = json::array();
    for (int i = 0; i < m.rows(); ++i) {
        json r = json::array();
        for (int j = 0; j < m.cols(); ++j) r.push_back(cplx_json(m(i, j)));
        rows.push_back(r);
    }
    return rows;
}

json vec_json(const CVec& v)
{
    json a = json::array();
    for (int i = 0; i < v.size(); ++i) a.push_back(cplx_json(v(i)));
    return a;
}

SurfacePoint parse_point(const json& j, const std::string& where)
{
    if (!j.is_object() || !j.contains("x")) throw ScenarioError(where + ": expected {\"x\": ..., \"sheet\": +-1}");
    SurfacePoint p;
    p.x = parse_cplx(j.at("x"), where + ".x");
    p.sheet = j.value("sheet", 1);
    if (p.sheet != 1 && p.sheet != -1) throw ScenarioError(where + ".sheet: must be 1 or -1");
    return p;
}

std::uint64_t parse_seed(const json& j, const std::string& where)
{
    if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<long long>() >= 0))
        throw ScenarioError(where + ": expected a non-negative integer seed");
    return j.get<std::uint64_t>();
}

void check_keys(const json& j, const std::set<std::string>& allowed, const std::string& where)
{
    if (!j.is_object()) throw ScenarioError(where + ": expected an object");
    for (auto it = j.begin(); it != j.end(); ++it)
        if (!allowed.count(it.key())) throw ScenarioError(where + ": unknown key \"" + it.key() + "\"");
}

std::vector<double> parse_k_list(const json& j, const std::string& where)
{
    if (!j.is_array()) throw ScenarioError(where + ": expected a list of numbers");
    std::vector<double> out;
    for (const auto& v : j) {
        if (!v.is_number()) throw ScenarioError(where + ": expected a list of numbers");
        out.push_back(v.get<double>());
    }
    return out;
}

bool needs_points(const std::vector<std::string>& suites)
{
    for (const auto& s : suites)
        if (s != "periods" && s != "theta") return true;
    return false;
}

void validate(const Scenario& sc, const std::vector<std::string>& suites)
{
    for (const auto& s : suites)
        if (std::find(kSuites.begin(), kSuites.end(), s) == kSuites.end())
            throw ScenarioError("unknown suite \"" + s + "\"");
    const int g = sc.genus();
    if (needs_points(suites) && sc.explicit_points && (int)sc.points.size() != 3 * g)
        throw ScenarioError("expected 3g = " + std::to_string(3 * g) + " points, got " +
                            std::to_string(sc.points.size()));
    if (needs_points(suites) && sc.explicit_ell && sc.ell.size() != 3 * g)
        throw ScenarioError("expected 3g = " + std::to_string(3 * g) + " values of l, got " +
                            std::to_string(sc.ell.size()));
}

// ---- checks

struct Check {
    std::string name, anchor;
    double value = 0.0, threshold = 0.0;
    bool pass = false;
};

struct Contrast {
    std::string name, anchor;
    double value = 0.0;
    double k = 0.0;
};

struct SuiteResult {
    std::vector<Check> checks;
    std::vector<Contrast> contrast;
    json data = json::object();
};

std::string knum(double k)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", k);
    return buf;
}

class Recorder {
public:
    Recorder(const Scenario& sc, std::string suite) : sc_(sc), suite_(std::move(suite)) {}

    void add(const std::string& name, const std::string& anchor, double value, double default_threshold)
    {
        known(anchor);
        double thr = default_threshold;
        if (auto it = sc_.tolerances.find(suite_); it != sc_.tolerances.end()) thr = it->second;
        if (auto it = sc_.tolerances.find(name); it != sc_.tolerances.end()) thr = it->second;
        res.checks.push_back({name, anchor, value, thr, std::isfinite(value) && value < thr});
    }
    void contrast(const std::string& name, const std::string& anchor, double value, double k)
    {
        known(anchor);
        res.contrast.push_back({name, anchor, value, k});
    }

    SuiteResult res;

private:
    static void known(const std::string& anchor)
    {
        if (std::find(kAnchors.begin(), kAnchors.end(), anchor) == kAnchors.end())
            throw std::logic_error("check anchor not in the anchor table: " + anchor);
    }
    const Scenario& sc_;
    std::string suite_;
};

constexpr double kProbeRadius = 0.08;

// Everything the suites share, built once and only read afterwards.
struct World {
    PeriodData pd;
    KernelContext kc;
    HeckeConfig cfg;
    bool has_cfg = false;
    std::vector<SurfacePoint> pts;
    SurfacePoint p0;
    double radius = kProbeRadius;
};

} // namespace

PeriodData scenario_periods(const Scenario& sc, std::string* cache_note)
{
    if (!sc.cache_path) return compute_periods(sc.curve, sc.quad);
    try {
        PeriodData pd = load_periods(*sc.cache_path, sc.curve, sc.quad);
        if (cache_note) *cache_note = "loaded " + *sc.cache_path;
        return pd;
    } catch (const Error& e) {
        if (e.code() != ErrorCode::NotFound && e.code() != ErrorCode::HashMismatch) throw;
        PeriodData pd = compute_periods(sc.curve, sc.quad);
        store_periods(pd, *sc.cache_path);
        if (cache_note)
            *cache_note = std::string(e.code() == ErrorCode::NotFound ? "created " : "rebuilt ") + *sc.cache_path;
        return pd;
    }
}

namespace {

std::unique_ptr<World> build_world(const Scenario& sc, const std::vector<std::string>& suites)
{
    auto w = std::make_unique<World>();
    w->pd = scenario_periods(sc, nullptr);
    if (!needs_points(suites)) return w;
    const int g = w->pd.g;
    if (sc.explicit_points) {
        w->pts = sc.points;
        w->p0 = sc.p0;
    } else {
        Rng rng(sc.points_seed);
        w->pts = checks::random_points(w->pd, 3 * g + 1, rng);
        w->p0 = w->pts.back();
        w->pts.pop_back();
    }
    CVec ell;
    if (sc.explicit_ell) {
        ell = sc.ell;
    } else {
        Rng rng(sc.ell_seed);
        ell = checks::random_ell(3 * g, rng);
    }
    w->kc = make_kernel_context(w->pd, w->p0);
    w->kc.theta = make_theta_context(w->pd.tau, 1e-17, sc.theta_max_radius);
    w->cfg = make_config(w->kc, w->pts, ell);
    w->has_cfg = true;

    // probe circles must stay clear of the other marked points and branch points
    std::vector<cplx> xs{w->p0.x};
    for (const auto& p : w->pts) xs.push_back(p.x);
    double sep = 1e300;
    for (size_t i = 0; i < xs.size(); ++i) {
        sep = std::min(sep, branch_distance(w->pd, xs[i]));
        for (size_t j = i + 1; j < xs.size(); ++j) sep = std::min(sep, std::abs(xs[i] - xs[j]));
    }
    w->radius = std::min(kProbeRadius, 0.3 * sep);
    return w;
}

// ---- suites

SuiteResult suite_periods(const Scenario& sc, const World& w, Rng&)
{
    Recorder r(sc, "periods");
    checks::TauShape t = checks::tau_shape(w.pd);
    r.add("tau-asymmetry", "tau-symmetric", t.asymmetry, 1e-9);
    r.add("re-tau-max-eigenvalue", "re-tau-negative-definite", t.max_re_eig, 0.0);
    double norm_err = 0.0;
    for (int a = 0; a < w.pd.g; ++a) {
        CVec v = cycle_integral(w.pd, w.pd.a_loops[a]);
        for (int c = 0; c < w.pd.g; ++c) {
            cplx want = c == a ? cplx(0.0, 2.0 * M_PI) : cplx(0.0);
            norm_err = std::max(norm_err, std::abs(v(c) - want) / (2.0 * M_PI));
        }
    }
    r.add("a-period-normalization", "a-period-normalization", norm_err, 1e-9);
    r.res.data = periods_json(w.pd);
    return r.res;
}

SuiteResult suite_theta(const Scenario& sc, const World& w, Rng& rng)
{
    Recorder r(sc, "theta");
    ThetaContext ctx = make_theta_context(w.pd.tau, 1e-17, sc.theta_max_radius);
    checks::ThetaIdentityErrors e = checks::theta_identities(ctx, 20, rng);
    r.add("evenness", "theta-even", e.evenness, 1e-11);
    r.add("periodicity", "theta-periodic", e.periodicity, 1e-11);
    r.add("quasi-periodicity", "theta-quasi-periodic", e.quasi_periodicity, 1e-11);
    r.add("heat-equation", "theta-heat", checks::theta_heat_error(w.pd.tau, 5, rng), 1e-6);
    r.res.data = {{"radius", ctx.radius}, {"tail_bound", ctx.tail_bound}};
    return r.res;
}

SuiteResult suite_green(const Scenario& sc, const World& w, Rng&)
{
    Recorder r(sc, "green");
    KernelContext alt = make_kernel_context(w.pd, w.p0, checks::alternative_kappa(w.kc));
    alt.theta = w.kc.theta;
    const Located& P = w.cfg.P[0];
    const Located& z = w.cfg.P[1];
    checks::GreenErrors worst;
    for (const KernelContext* kc : {&w.kc, static_cast<const KernelContext*>(&alt)}) {
        checks::GreenErrors e = checks::green_checks(*kc, P, z, w.radius);
        worst.diag_residue = std::max(worst.diag_residue, e.diag_residue);
        worst.p0_residue = std::max(worst.p0_residue, e.p0_residue);
        worst.b_monodromy = std::max(worst.b_monodromy, e.b_monodromy);
        worst.a_monodromy = std::max(worst.a_monodromy, e.a_monodromy);
    }
    r.add("diagonal-residue", "green-diag-residue", worst.diag_residue, 1e-8);
    r.add("p0-residue", "green-p0-residue", worst.p0_residue, 1e-8);
    r.add("b-monodromy", "green-b-monodromy", worst.b_monodromy, 1e-8);
    r.add("a-monodromy", "green-a-monodromy", worst.a_monodromy, 1e-8);
    r.res.data = {{"kappa0", vec_json(w.kc.kappa0)}, {"kappa_alt", vec_json(alt.kappa0)}, {"radius", w.radius}};
    return r.res;
}

SuiteResult suite_hecke(const Scenario& sc, const World& w, Rng&)
{
    Recorder r(sc, "hecke");
    const HeckeConfig& cfg = w.cfg;
    r.add("den-det-vs-sum", "den-determinant", checks::den_agreement(cfg), 1e-9);
    double rel = std::abs(cfg.den) / cfg.den_scale;
    r.add("den-inverse-relative-size", "den-nonzero", rel > 0 ? 1.0 / rel : INFINITY, 1e6);
    r.add("stability-kernel-dim", "stable", stability_check(cfg).kernel_dim_phi, 0.5);
    r.add("rigidity-kernel-dim", "fiber-finite", fiber_rigidity(cfg).kernel_dim, 0.5);
    r.res.data = {{"den", cplx_json(cfg.den)}, {"den_scale", cfg.den_scale}, {"ell", vec_json(cfg.ell)}};
    return r.res;
}

SuiteResult suite_hitchin(const Scenario& sc, const World& w, Rng& rng)
{
    Recorder r(sc, "hitchin");
    const HeckeConfig& cfg = w.cfg;
    require_den_nonzero(cfg);
    PhasePoint pp = sample_phase_point(cfg, rng);
    double sing = checks::hitchin_singular_ratio(pp, w.kc.P0, w.radius);
    for (const Located& c : cfg.P) sing = std::max(sing, checks::hitchin_singular_ratio(pp, c, w.radius));
    r.add("regular-at-marked-points", "h-regular", sing, 1e-7);

    double alt = 0.0, literal = 0.0;
    for (const Located& z : generic_points(cfg, 10, rng)) {
        alt = std::max(alt, checks::h_alt_mismatch(pp, z));
        literal = std::max(literal, checks::h_alt_mismatch(pp, z, true));
    }
    r.add("alternative-expression", "h-alternative", alt, 1e-8);
    r.contrast("alternative-expression-literal", "h-alternative", literal, 0.0);

    auto zs = generic_points(cfg, 6, rng);
    std::vector<Located> fit{zs[0], zs[1], zs[2]}, hold{zs[3], zs[4], zs[5]};
    Interpolator ip = make_interpolator(cfg, fit, hold);
    double pb = checks::poisson_residual(pp, ip);
    for (int s = 0; s < 3; ++s) pb = std::max(pb, checks::poisson_residual(sample_phase_point(cfg, rng), ip));
    r.add("poisson-brackets", "h-poisson-commute", pb, 1e-7);

    double inv = 0.0;
    for (int m = 0; m < 3; ++m) inv = std::max(inv, checks::sl2_invariance(pp, fit, hold, checks::random_unimodular(rng)));
    r.add("sl2-invariance", "h-sl2-invariant", inv, 1e-7);

    HamiltonianFit hf = extract_hamiltonians(pp, ip);
    r.res.data = {{"lambda", vec_json(pp.lambda)}, {"H", vec_json(hf.H)}, {"holdout_residual", hf.holdout_residual}};
    return r.res;
}

struct KzbSetup {
    OperatorInterpolator oip;
    std::vector<CVec> ells;
};

KzbSetup kzb_setup(const HeckeConfig& cfg, Rng& rng)
{
    auto zs = generic_points(cfg, 8, rng);
    KzbSetup s{make_operator_interpolator(cfg, {zs[0], zs[1], zs[2], zs[3], zs[4]}, {zs[5], zs[6], zs[7]}), {cfg.ell}};
    while (s.ells.size() < 3) {
        CVec l = cfg.ell;
        for (int i = 0; i < l.size(); ++i) l(i) += rng.disc(0.15);
        if (with_ell(cfg, l).den_nonzero) s.ells.push_back(l);
    }
    return s;
}

double max_commutator(const HeckeConfig& cfg, const KzbSetup& s, double k)
{
    auto fs = checks::monomial_functions(cfg.n());
    const int m = 3 * cfg.g - 3;
    double worst = 0.0;
    for (int a = 0; a < m; ++a)
        for (int b = a + 1; b < m; ++b)
            worst = std::max(worst, commutator_check(cfg, s.oip, a, b, fs, s.ells, KzbOptions{k}).max_residual);
    return worst;
}

SuiteResult suite_kzb(const Scenario& sc, const World& w, Rng& rng, bool contrast_only)
{
    Recorder r(sc, "kzb");
    const HeckeConfig& cfg = w.cfg;
    require_den_nonzero(cfg);
    KzbSetup setup = kzb_setup(cfg, rng);
    for (double k : sc.contrast_k) r.contrast("commutator-k=" + knum(k), "kzb-noncritical-commute", max_commutator(cfg, setup, k), k);
    if (contrast_only) return r.res;

    for (double k : sc.kzb_k) {
        KzbOptions o{k};
        if (k == -2.0) {
            double sing = 0.0;
            for (const Located& c : cfg.P) sing = std::max(sing, checks::kzb_pole_law(cfg, c, o, w.radius).singular);
            r.add("pole-critical-marked", "kzb-critical-regular", sing, 1e-6);
            r.add("pole-critical-p0-invariant", "kzb-critical-regular", checks::kzb_p0_invariant_ratio(cfg, o, w.radius),
                  1e-6);
            continue;
        }
        // the (dz/z)^2 coefficient at P_i is 2 kappa k / 4 with kappa = k + 2
        double c2 = 0.0, op = 0.0;
        for (const Located& c : cfg.P) {
            checks::PoleLaw p = checks::kzb_pole_law(cfg, c, o, w.radius);
            c2 = std::max(c2, std::abs(p.scalar_c2 - 2.0 * (k + 2.0) * k / 4.0));
            op = std::max(op, p.operator_c2);
        }
        r.add("pole-double-k=" + knum(k), "kzb-double-pole", c2, 1e-6);
        r.add("pole-operator-k=" + knum(k), "kzb-double-pole", op, 1e-6);
    }
    r.add("commutator-critical", "kzb-critical-commute", max_commutator(cfg, setup, -2.0), 1e-5);

    auto zs = generic_points(cfg, 3, rng);
    Interpolator hip = make_interpolator(cfg, {zs[0], zs[1], zs[2]}, {setup.oip.holdout[0].z, setup.oip.holdout[1].z,
                                                                      setup.oip.holdout[2].z});
    PhasePoint pp = sample_phase_point(cfg, rng);
    r.add("symbol-vs-hamiltonian", "kzb-symbol", checks::symbol_mismatch(pp, setup.oip, hip, KzbOptions{-2.0}, 1.0),
          1e-6);
    return r.res;
}

SuiteResult suite_variation(const Scenario& sc, const World& w, Rng& rng)
{
    Recorder r(sc, "variation");
    require_den_nonzero(w.cfg);
    double worst = 0.0, proj = 0.0;
    for (int d = 0; d < 5; ++d) {
        double p = 0.0;
        worst = std::max(worst, checks::variation_check(w.cfg, rng, &p));
        proj = std::max(proj, p);
    }
    r.add("system-residual", "variation-constraint", worst, 1e-8);
    r.add("projection-residual", "variation-projection", proj, 1e-12);
    return r.res;
}

json suite_json(const std::string& name, std::uint64_t seed, SuiteResult res)
{
    std::stable_sort(res.checks.begin(), res.checks.end(), [](const Check& a, const Check& b) { return a.name < b.name; });
    json checks = json::array();
    bool pass = true;
    for (const Check& c : res.checks) {
        pass = pass && c.pass;
        json v = std::isfinite(c.value) ? json(c.value) : json(nullptr);
        checks.push_back({{"name", c.name}, {"anchor", c.anchor}, {"value", v}, {"threshold", c.threshold},
                          {"pass", c.pass}});
    }
    json contrast = json::array();
    for (const Contrast& c : res.contrast)
        contrast.push_back({{"name", c.name}, {"anchor", c.anchor}, {"k", c.k}, {"value", c.value}});
    return {{"name", name}, {"seed", seed}, {"pass", pass}, {"checks", checks}, {"contrast", contrast},
            {"data", res.data}};
}

std::string utc_now()
{
    std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

} // namespace

Scenario parse_scenario(const json& j)
{
    check_keys(j, {"schema", "name", "seed", "curve", "quadrature", "theta", "cache", "points", "ell", "suites",
                   "tolerances", "kzb"},
               "scenario");
    if (!j.contains("schema") || j.at("schema") != kScenarioSchema)
        throw ScenarioError("scenario: schema must be " + std::to_string(kScenarioSchema));
    Scenario sc;
    sc.name = j.value("name", std::string("unnamed"));
    if (j.contains("seed")) sc.seed = parse_seed(j.at("seed"), "seed");

    if (!j.contains("curve")) throw ScenarioError("scenario: missing curve");
    const json& c = j.at("curve");
    check_keys(c, {"branch_points"}, "curve");
    if (!c.contains("branch_points") || !c.at("branch_points").is_array())
        throw ScenarioError("curve.branch_points: expected a list");
    for (size_t i = 0; i < c.at("branch_points").size(); ++i)
        sc.curve.branch_points.push_back(
            parse_cplx(c.at("branch_points")[i], "curve.branch_points[" + std::to_string(i) + "]"));
    if (sc.curve.branch_points.size() < 3) throw ScenarioError("curve.branch_points: need at least 3 points");
    const auto& bp = sc.curve.branch_points;
    for (size_t a = 0; a < bp.size(); ++a)
        for (size_t b = a + 1; b < bp.size(); ++b)
            if (bp[a] == bp[b]) throw ScenarioError("curve.branch_points: repeated point");

    if (j.contains("quadrature")) {
        const json& q = j.at("quadrature");
        check_keys(q, {"tol", "loop_vertices"}, "quadrature");
        sc.quad.quad_tol = q.value("tol", sc.quad.quad_tol);
        sc.quad.loop_vertices = q.value("loop_vertices", sc.quad.loop_vertices);
        if (!(sc.quad.quad_tol > 0.0) || sc.quad.loop_vertices < 8)
            throw ScenarioError("quadrature: tol must be > 0 and loop_vertices >= 8");
    }
    if (j.contains("theta")) {
        check_keys(j.at("theta"), {"max_radius"}, "theta");
        sc.theta_max_radius = j.at("theta").value("max_radius", sc.theta_max_radius);
        if (sc.theta_max_radius < 1) throw ScenarioError("theta.max_radius: must be >= 1");
    }
    if (j.contains("cache")) {
        if (!j.at("cache").is_string()) throw ScenarioError("cache: expected a path");
        sc.cache_path = j.at("cache").get<std::string>();
    }

    sc.points_seed = Rng(sc.seed).split(101).seed();
    if (j.contains("points")) {
        const json& p = j.at("points");
        if (p.contains("seed")) {
            check_keys(p, {"seed"}, "points");
            sc.points_seed = parse_seed(p.at("seed"), "points.seed");
        } else {
            check_keys(p, {"P0", "P"}, "points");
            if (!p.contains("P0") || !p.contains("P") || !p.at("P").is_array())
                throw ScenarioError("points: expected P0 and a list P");
            sc.explicit_points = true;
            sc.p0 = parse_point(p.at("P0"), "points.P0");
            for (size_t i = 0; i < p.at("P").size(); ++i)
                sc.points.push_back(parse_point(p.at("P")[i], "points.P[" + std::to_string(i) + "]"));
        }
    }
    sc.ell_seed = Rng(sc.seed).split(102).seed();
    if (j.contains("ell")) {
        const json& l = j.at("ell");
        if (l.is_object()) {
            check_keys(l, {"seed"}, "ell");
            sc.ell_seed = parse_seed(l.at("seed"), "ell.seed");
        } else if (l.is_array()) {
            sc.explicit_ell = true;
            sc.ell.resize(l.size());
            for (size_t i = 0; i < l.size(); ++i) {
                sc.ell(i) = parse_cplx(l[i], "ell[" + std::to_string(i) + "]");
                if (sc.ell(i) == cplx(0.0)) throw ScenarioError("ell[" + std::to_string(i) + "]: must be nonzero");
            }
        } else {
            throw ScenarioError("ell: expected a list or {\"seed\": n}");
        }
    }

    if (j.contains("suites")) {
        if (!j.at("suites").is_array()) throw ScenarioError("suites: expected a list");
        for (const auto& s : j.at("suites")) {
            if (!s.is_string()) throw ScenarioError("suites: expected names");
            sc.suites.push_back(s.get<std::string>());
        }
    } else {
        sc.suites = kSuites;
    }
    if (j.contains("tolerances")) {
        const json& t = j.at("tolerances");
        if (!t.is_object()) throw ScenarioError("tolerances: expected an object");
        for (auto it = t.begin(); it != t.end(); ++it) {
            if (!it.value().is_number()) throw ScenarioError("tolerances." + it.key() + ": expected a number");
            sc.tolerances[it.key()] = it.value().get<double>();
        }
    }
    if (j.contains("kzb")) {
        const json& k = j.at("kzb");
        check_keys(k, {"k", "contrast_k"}, "kzb");
        if (k.contains("k")) sc.kzb_k = parse_k_list(k.at("k"), "kzb.k");
        if (k.contains("contrast_k")) sc.contrast_k = parse_k_list(k.at("contrast_k"), "kzb.contrast_k");
    }
    validate(sc, sc.suites);
    return sc;
}

Scenario load_scenario(const std::string& path)
{
    std::ifstream f(path);
    if (!f) throw ScenarioError("cannot open scenario " + path);
    json j;
    try {
        j = json::parse(f);
    } catch (const json::exception& e) {
        throw ScenarioError(path + ": " + e.what());
    }
    return parse_scenario(j);
}

json periods_json(const PeriodData& pd)
{
    json bp = json::array();
    for (cplx e : pd.spec.branch_points) bp.push_back(cplx_json(e));
    return {{"genus", pd.g},
            {"branch_points", bp},
            {"base_point", cplx_json(pd.x0)},
            {"tau", mat_json(pd.tau)},
            {"kappa0", vec_json(pd.kappa0)},
            {"curve_hash", curve_hash(pd.spec, pd.settings)}};
}

json build_report(const Scenario& sc_in, const RunOptions& opt)
{
    Scenario sc = sc_in;
    if (opt.seed) {
        sc.seed = *opt.seed;
        if (!sc.explicit_points) sc.points_seed = Rng(sc.seed).split(101).seed();
        if (!sc.explicit_ell) sc.ell_seed = Rng(sc.seed).split(102).seed();
    }
    if (!opt.contrast_k.empty()) sc.contrast_k = opt.contrast_k;
    std::vector<std::string> suites = opt.suites.empty() ? sc.suites : opt.suites;
    if (opt.contrast_only) suites = {"kzb"};
    // canonical order, no repeats
    std::vector<std::string> ordered;
    for (const auto& s : suites)
        if (std::find(kSuites.begin(), kSuites.end(), s) == kSuites.end())
            throw ScenarioError("unknown suite \"" + s + "\"");
    for (const auto& s : kSuites)
        if (std::find(suites.begin(), suites.end(), s) != suites.end()) ordered.push_back(s);
    validate(sc, ordered);

    std::unique_ptr<World> w = build_world(sc, ordered);
    const Rng root(sc.seed);

    std::vector<std::future<SuiteResult>> jobs;
    std::vector<std::uint64_t> seeds;
    for (const auto& name : ordered) {
        std::uint64_t idx = std::find(kSuites.begin(), kSuites.end(), name) - kSuites.begin();
        Rng rng = root.split(idx);
        seeds.push_back(rng.seed());
        const World& world = *w;
        const bool contrast_only = opt.contrast_only;
        jobs.push_back(std::async(std::launch::async, [&sc, &world, name, rng, contrast_only]() mutable {
            if (name == "periods") return suite_periods(sc, world, rng);
            if (name == "theta") return suite_theta(sc, world, rng);
            if (name == "green") return suite_green(sc, world, rng);
            if (name == "hecke") return suite_hecke(sc, world, rng);
            if (name == "hitchin") return suite_hitchin(sc, world, rng);
            if (name == "kzb") return suite_kzb(sc, world, rng, contrast_only);
            return suite_variation(sc, world, rng);
        }));
    }
    // wait for every job before rethrowing so no worker outlives the world
    for (auto& j : jobs) j.wait();

    json suites_json = json::array();
    json failed = json::array();
    json contrast = json::array();
    int count = 0;
    bool overall = true;
    for (size_t i = 0; i < jobs.size(); ++i) {
        json s = suite_json(ordered[i], seeds[i], jobs[i].get());
        for (const auto& c : s.at("checks")) {
            ++count;
            if (!c.at("pass").get<bool>()) {
                overall = false;
                failed.push_back(ordered[i] + "/" + c.at("name").get<std::string>());
            }
        }
        for (json c : s.at("contrast")) {
            c["suite"] = ordered[i];
            contrast.push_back(std::move(c));
        }
        suites_json.push_back(std::move(s));
    }

    json env = {{"version", kVersion},
                {"compiler", std::string("g++ ") + __VERSION__},
                {"eigen", std::to_string(EIGEN_WORLD_VERSION) + "." + std::to_string(EIGEN_MAJOR_VERSION) + "." +
                              std::to_string(EIGEN_MINOR_VERSION)},
                {"seed", sc.seed},
                {"curve_hash", curve_hash(w->pd.spec, w->pd.settings)},
                {"genus", w->pd.g}};
    if (w->has_cfg) {
        if (!sc.explicit_points) env["points_seed"] = sc.points_seed;
        if (!sc.explicit_ell) env["ell_seed"] = sc.ell_seed;
    }
    return {{"schema", kReportSchema},
            {"scenario", sc.name},
            {"timestamp", opt.timestamp.empty() ? utc_now() : opt.timestamp},
            {"environment", env},
            {"suites", suites_json},
            {"contrast", contrast},
            {"check_count", count},
            {"failed", failed},
            {"overall_pass", overall}};
}

void print_summary(const json& rep, std::ostream& out)
{
    const json& env = rep.at("environment");
    out << "scenario " << rep.at("scenario").get<std::string>() << "  genus " << env.at("genus") << "  curve "
        << env.at("curve_hash").get<std::string>() << "  seed " << env.at("seed") << "\n";
    char buf[256];
    for (const auto& s : rep.at("suites")) {
        out << s.at("name").get<std::string>() << "\n";
        for (const auto& c : s.at("checks")) {
            double v = c.at("value").is_null() ? NAN : c.at("value").get<double>();
            std::snprintf(buf, sizeof buf, "  %s  %-34s %10.3e < %-9.2e  [%s]\n", c.at("pass").get<bool>() ? "PASS" : "FAIL",
                          c.at("name").get<std::string>().c_str(), v, c.at("threshold").get<double>(),
                          c.at("anchor").get<std::string>().c_str());
            out << buf;
        }
        for (const auto& c : s.at("contrast")) {
            std::snprintf(buf, sizeof buf, "  ----  %-34s %10.3e   (contrast, not asserted)\n",
                          c.at("name").get<std::string>().c_str(), c.at("value").get<double>());
            out << buf;
        }
    }
    int n = rep.at("check_count").get<int>();
    int nf = static_cast<int>(rep.at("failed").size());
    if (n == 0)
        out << "no asserted checks (contrast only)\n";
    else
        out << n - nf << " of " << n << " checks passed" << (nf ? "" : "; overall PASS") << "\n";
}

int run(const std::string& scenario_path, const std::string& out_path, const RunOptions& opt, std::ostream& out,
        std::ostream& err)
{
    json rep;
    try {
        Scenario sc = load_scenario(scenario_path);
        rep = build_report(sc, opt);
    } catch (const ScenarioError& e) {
        err << "invalid scenario: " << e.what() << "\n";
        return kExitInvalid;
    } catch (const Error& e) {
        if (e.code() == ErrorCode::InvalidInput) {
            err << "invalid scenario: " << e.what() << "\n";
            return kExitInvalid;
        }
        err << "numeric failure: " << e.what() << "\n";
        return kExitNumeric;
    }
    if (!out_path.empty()) {
        std::ofstream f(out_path);
        if (!f) {
            err << "cannot write " << out_path << "\n";
            return kExitInvalid;
        }
        f << rep.dump(2) << "\n";
    }
    print_summary(rep, out);
    return rep.at("overall_pass").get<bool>() ? kExitOk : kExitCheckFailed;
}

} // namespace hecke::report
