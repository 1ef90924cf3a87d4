// Acceptance run: one PASS/FAIL line per criterion, tolerances fixed below.

#include "hecke/checks.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>

using namespace hecke;
using namespace hecke::checks;

namespace {

constexpr double kTolPeriods = 1e-9;
constexpr double kTolThetaIdentity = 1e-11;
constexpr double kTolHeat = 1e-6;
constexpr double kTolGreen = 1e-8;
constexpr double kTolDen = 1e-9;
constexpr double kTolHitchinPoles = 1e-7;
constexpr double kTolPoisson = 1e-7;
constexpr double kTolSl2 = 1e-7;
constexpr double kTolHAlt = 1e-8;
constexpr double kTolPoleLaw = 1e-6;
constexpr double kTolCommutator = 1e-5;
constexpr double kTolVariation = 1e-8;
constexpr double kTolProjection = 1e-12;
constexpr double kTolSymbol = 1e-6;
constexpr double kSymbolScale = 1.0;
constexpr double kProbeRadius = 0.08;

struct Outcome {
    bool pass = true;
    std::string detail;
};

std::string fmt(const char* f, double a, double b = 0.0)
{
    char buf[160];
    std::snprintf(buf, sizeof buf, f, a, b);
    return buf;
}

void note(Outcome& o, bool ok, const std::string& s)
{
    o.pass = o.pass && ok;
    if (!o.detail.empty()) o.detail += "; ";
    o.detail += s;
}

std::vector<Located> interior_points(const HeckeConfig& cfg, int count, Rng& rng)
{
    return generic_points(cfg, count, rng);
}

Outcome periods(Rng& rng)
{
    Outcome o;
    PeriodData pd = compute_periods(CurveSpec{{-1.0, 0.0, 1.0}});
    double oracle = real_cubic_tau(-1.0, 0.0, 1.0);
    double e = std::abs(pd.tau(0, 0) - oracle);
    note(o, e < kTolPeriods, fmt("|tau + 2pi| = %.2e", e));
    PeriodData pd2 = compute_periods(CurveSpec{{-1.3, 0.4, 2.1}});
    double e2 = std::abs(pd2.tau(0, 0) - real_cubic_tau(-1.3, 0.4, 2.1));
    note(o, e2 < kTolPeriods, fmt("second cubic %.2e", e2));
    double asym = 0.0, eig = -1e300;
    for (int s = 0; s < 3; ++s) {
        TauShape t = tau_shape(compute_periods(random_curve(2, rng)));
        asym = std::max(asym, t.asymmetry);
        eig = std::max(eig, t.max_re_eig);
    }
    note(o, asym < kTolPeriods && eig < 0.0, fmt("g=2 asymmetry %.2e, max eig Re tau %.3f", asym, eig));
    return o;
}

Outcome theta_checks(Rng& rng)
{
    Outcome o;
    PeriodData pd = compute_periods(random_curve(2, rng));
    ThetaContext ctx = make_theta_context(pd.tau);
    ThetaIdentityErrors e = theta_identities(ctx, 20, rng);
    double worst = std::max({e.evenness, e.periodicity, e.quasi_periodicity});
    note(o, worst < kTolThetaIdentity,
         fmt("even/period %.2e", std::max(e.evenness, e.periodicity)) + fmt(", quasi %.2e", e.quasi_periodicity));
    double heat = theta_heat_error(pd.tau, 5, rng);
    note(o, heat < kTolHeat, fmt("heat %.2e", heat));
    return o;
}

Outcome green(Rng& rng)
{
    Outcome o;
    double worst = 0.0;
    for (int c = 0; c < 5; ++c) {
        PeriodData pd = compute_periods(random_curve(2, rng));
        auto pts = random_points(pd, 3, rng);
        KernelContext k1 = make_kernel_context(pd, pts[0]);
        KernelContext k2 = make_kernel_context(pd, pts[0], alternative_kappa(k1));
        Located P = locate(pd, pts[1]), z = locate(pd, pts[2]);
        for (const KernelContext* kc : {&k1, &k2}) {
            GreenErrors e = green_checks(*kc, P, z, kProbeRadius);
            worst = std::max({worst, e.diag_residue, e.p0_residue, e.b_monodromy, e.a_monodromy});
        }
    }
    note(o, worst < kTolGreen, fmt("max residue/monodromy error %.2e over 5 configs x 2 shifts", worst));
    return o;
}

Outcome den(Rng& rng)
{
    Outcome o;
    double worst = 0.0;
    for (int s = 0; s < 10; ++s) worst = std::max(worst, den_agreement(random_sample(2, rng)->cfg));
    note(o, worst < kTolDen, fmt("max |det - sum|/|sum| %.2e", worst));
    return o;
}

Outcome stability(Rng& rng)
{
    Outcome o;
    int bad = 0;
    for (int s = 0; s < 20; ++s) {
        auto smp = random_sample(2, rng);
        if (stability_check(smp->cfg).kernel_dim_phi != 0 || fiber_rigidity(smp->cfg).kernel_dim != 0) ++bad;
    }
    note(o, bad == 0, fmt("%.0f of 20 generic samples with a kernel", bad));
    // A root of the quadratic in l_last makes Den = 0 but need not destabilize
    // (Den != 0 is only sufficient), so there only the rigidity kernel is asserted.
    int missed = 0, stable_roots = 0;
    for (int s = 0; s < 3; ++s) {
        auto smp = random_sample(2, rng);
        HeckeConfig z = with_ell(smp->cfg, den_zero_ell(smp->cfg));
        if (fiber_rigidity(z).kernel_dim < 1) ++missed;
        if (stability_check(z).kernel_dim_phi == 0) ++stable_roots;
        for (int m : {4, 6}) {
            CVec l = smp->cfg.ell;
            for (int i = 1; i < m; ++i) l(i) = l(0);
            HeckeConfig c = with_ell(smp->cfg, l);
            if (stability_check(c).kernel_dim_phi < 1 || fiber_rigidity(c).kernel_dim < 1) ++missed;
        }
    }
    note(o, missed == 0, fmt("%.0f of 9 Den = 0 checks without a kernel", missed));
    o.detail += fmt(" (stability kernel 0 at %.0f of 3 generic Den roots, not asserted)", stable_roots);
    return o;
}

Outcome hitchin_poles(Rng& rng)
{
    Outcome o;
    double worst = 0.0;
    for (int s = 0; s < 5; ++s) {
        auto smp = random_sample(2, rng);
        PhasePoint pp = sample_phase_point(smp->cfg, rng);
        for (const Located& c : smp->cfg.P) worst = std::max(worst, hitchin_singular_ratio(pp, c, kProbeRadius));
        worst = std::max(worst, hitchin_singular_ratio(pp, smp->kc.P0, kProbeRadius));
    }
    note(o, worst < kTolHitchinPoles, fmt("max singular/regular %.2e at 7 centres x 5 samples", worst));
    return o;
}

Outcome hitchin_poisson(Rng& rng)
{
    Outcome o;
    double worst = 0.0;
    for (int c = 0; c < 5; ++c) {
        auto smp = random_sample(2, rng);
        auto zs = interior_points(smp->cfg, 6, rng);
        Interpolator ip = make_interpolator(smp->cfg, {zs[0], zs[1], zs[2]}, {zs[3], zs[4], zs[5]});
        for (int s = 0; s < 4; ++s) worst = std::max(worst, poisson_residual(sample_phase_point(smp->cfg, rng), ip));
    }
    note(o, worst < kTolPoisson, fmt("max normalized bracket %.2e over 20 samples", worst));
    auto smp = random_sample(2, rng);
    auto zs = interior_points(smp->cfg, 6, rng);
    PhasePoint pp = sample_phase_point(smp->cfg, rng);
    double inv = 0.0;
    for (int m = 0; m < 5; ++m)
        inv = std::max(inv, sl2_invariance(pp, {zs[0], zs[1], zs[2]}, {zs[3], zs[4], zs[5]}, random_unimodular(rng)));
    note(o, inv < kTolSl2, fmt("SL2 change of H %.2e over 5 maps", inv));
    return o;
}

Outcome h_alt(Rng& rng)
{
    Outcome o;
    double worst = 0.0, literal = 0.0;
    for (int s = 0; s < 5; ++s) {
        auto smp = random_sample(2, rng);
        PhasePoint pp = sample_phase_point(smp->cfg, rng);
        for (const Located& z : interior_points(smp->cfg, 10, rng)) {
            worst = std::max(worst, h_alt_mismatch(pp, z));
            literal = std::max(literal, h_alt_mismatch(pp, z, true));
        }
    }
    note(o, worst < kTolHAlt, fmt("max relative difference %.2e", worst));
    o.detail += fmt(" (literal coefficients: %.2e, contrast)", literal);
    return o;
}

Outcome pole_law(Rng& rng)
{
    Outcome o;
    double c2err = 0.0, opc2 = 0.0, crit = 0.0, p0 = 0.0;
    for (int s = 0; s < 2; ++s) {
        auto smp = random_sample(2, rng);
        const HeckeConfig& cfg = smp->cfg;
        KzbOptions one{1.0}, crit_k{-2.0};
        const double kappa = one.k + 2.0;
        for (const Located& c : cfg.P) {
            PoleLaw a = kzb_pole_law(cfg, c, one, kProbeRadius);
            c2err = std::max(c2err, std::abs(a.scalar_c2 - 2.0 * kappa * one.k / 4.0));
            opc2 = std::max(opc2, a.operator_c2);
            crit = std::max(crit, kzb_pole_law(cfg, c, crit_k, kProbeRadius).singular);
        }
        p0 = std::max(p0, kzb_p0_invariant_ratio(cfg, crit_k, kProbeRadius));
    }
    note(o, c2err < kTolPoleLaw && opc2 < kTolPoleLaw,
         fmt("k=1: |c_-2 - 1.5| %.2e, derivative parts %.2e", c2err, opc2));
    note(o, crit < kTolPoleLaw, fmt("k=-2: singular/regular at P_i %.2e", crit));
    note(o, p0 < kTolPoleLaw, fmt("k=-2: at P0 on invariant functions %.2e", p0));
    return o;
}

Outcome commutators(Rng& rng)
{
    Outcome o;
    auto smp = random_sample(2, rng);
    const HeckeConfig& cfg = smp->cfg;
    auto zs = interior_points(cfg, 8, rng);
    OperatorInterpolator ip = make_operator_interpolator(cfg, {zs[0], zs[1], zs[2], zs[3], zs[4]}, {zs[5], zs[6], zs[7]});
    std::vector<CVec> ells{cfg.ell};
    while (ells.size() < 3) {
        CVec l = cfg.ell;
        for (int i = 0; i < l.size(); ++i) l(i) += rng.disc(0.15);
        if (with_ell(cfg, l).den_nonzero) ells.push_back(l);
    }
    auto fs = monomial_functions(cfg.n());
    double worst = 0.0, contrast = 0.0;
    for (int a = 0; a < 3; ++a)
        for (int b = a + 1; b < 3; ++b) {
            worst = std::max(worst, commutator_check(cfg, ip, a, b, fs, ells, KzbOptions{-2.0}).max_residual);
            contrast = std::max(contrast, commutator_check(cfg, ip, a, b, fs, ells, KzbOptions{0.0}).max_residual);
        }
    note(o, worst < kTolCommutator, fmt("k=-2 max normalized commutator %.2e", worst));
    o.detail += fmt(" (k=0 contrast %.2e, not asserted)", contrast);
    return o;
}

Outcome variation(Rng& rng)
{
    Outcome o;
    double worst = 0.0, proj = 0.0;
    auto smp = random_sample(2, rng);
    for (int d = 0; d < 5; ++d) {
        double p = 0.0;
        worst = std::max(worst, variation_check(smp->cfg, rng, &p));
        proj = std::max(proj, p);
    }
    note(o, worst < kTolVariation, fmt("max residual %.2e", worst));
    note(o, proj < kTolProjection, fmt("projection %.2e", proj));
    return o;
}

Outcome symbol(Rng& rng)
{
    Outcome o;
    double worst = 0.0;
    for (int s = 0; s < 3; ++s) {
        auto smp = random_sample(2, rng);
        const HeckeConfig& cfg = smp->cfg;
        auto zs = interior_points(cfg, 8, rng);
        OperatorInterpolator oip =
            make_operator_interpolator(cfg, {zs[0], zs[1], zs[2], zs[3], zs[4]}, {zs[5], zs[6], zs[7]});
        Interpolator hip = make_interpolator(cfg, {zs[0], zs[1], zs[2]}, {zs[5], zs[6], zs[7]});
        PhasePoint pp = sample_phase_point(cfg, rng);
        worst = std::max(worst, symbol_mismatch(pp, oip, hip, KzbOptions{-2.0}, kSymbolScale));
    }
    note(o, worst < kTolSymbol, fmt("max |symbol - H| / |H| %.2e (scale %.1f)", worst, kSymbolScale));
    return o;
}

} // namespace

int main()
{
    struct Criterion {
        int id;
        const char* name;
        double budget_s;
        std::function<Outcome(Rng&)> run;
    };
    const std::vector<Criterion> all{
        {1, "period matrix", 10, periods},
        {2, "theta identities", 5, theta_checks},
        {3, "green kernels", 30, green},
        {4, "Den determinant", 5, den},
        {5, "stability and rigidity", 10, stability},
        {6, "Hitchin regularity", 60, hitchin_poles},
        {7, "Hitchin commutativity", 120, hitchin_poisson},
        {8, "alternative H", 30, h_alt},
        {9, "T^diff pole law", 120, pole_law},
        {10, "critical-level commutativity", 300, commutators},
        {11, "variation consistency", 10, variation},
        {12, "symbol vs classical", 60, symbol},
    };
    const Rng root(20261017);
    int failed = 0;
    for (const auto& c : all) {
        Rng rng = root.split(c.id);
        auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run(rng);
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail = std::string("exception: ") + e.what();
        }
        double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (dt > c.budget_s) note(o, false, fmt("runtime %.1fs over budget %.0fs", dt, c.budget_s));
        std::printf("criterion %2d %s  %-28s %s [%.1fs]\n", c.id, o.pass ? "PASS" : "FAIL", c.name, o.detail.c_str(),
                    dt);
        std::fflush(stdout);
        if (!o.pass) ++failed;
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(all.size()) - failed, all.size());
    return failed == 0 ? 0 : 1;
}
