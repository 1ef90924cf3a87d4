#include "hecke/checks.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

namespace hecke::checks {

CurveSpec random_curve(int g, Rng& rng)
{
    const int n = 2 * g + 2;
    CurveSpec c;
    for (int j = 0; j < n; ++j) {
        double x = (j - 0.5 * (n - 1)) * 1.05;
        c.branch_points.push_back(cplx(x, 0.0) + rng.box({-0.15, -0.15}, {0.15, 0.15}));
    }
    return c;
}

std::vector<SurfacePoint> random_points(const PeriodData& pd, int count, Rng& rng, const std::vector<cplx>& avoid,
                                        double sep, double clear)
{
    double lo = 1e300, hi = -1e300;
    for (cplx e : pd.spec.branch_points) {
        lo = std::min(lo, e.real());
        hi = std::max(hi, e.real());
    }
    std::vector<SurfacePoint> pts;
    std::vector<cplx> taken = avoid;
    for (int tries = 0; (int)pts.size() < count; ++tries) {
        if (tries > 100000) throw Error(ErrorCode::UnsupportedConfiguration, "could not place sample points");
        cplx x = rng.box({lo - 0.4, -1.4}, {hi + 0.4, 1.4});
        if (std::abs(x.imag()) < 0.2 || branch_distance(pd, x) < clear) continue;
        bool ok = true;
        for (cplx t : taken) ok = ok && std::abs(x - t) >= sep;
        if (!ok) continue;
        taken.push_back(x);
        pts.push_back({x, rng.uniform() < 0.5 ? 1 : -1});
    }
    return pts;
}

CVec random_ell(int n, Rng& rng)
{
    CVec l(n);
    for (int i = 0; i < n; ++i) {
        for (;;) {
            cplx c = rng.disc(1.6);
            bool ok = std::abs(c) > 0.25;
            for (int j = 0; j < i && ok; ++j) ok = std::abs(c - l(j)) > 0.2;
            if (ok) {
                l(i) = c;
                break;
            }
        }
    }
    return l;
}

Eigen::Matrix2cd random_unimodular(Rng& rng)
{
    cplx a = 1.0 + rng.disc(0.5), b = rng.disc(0.8), c = rng.disc(0.8);
    Eigen::Matrix2cd m;
    m << a, b, c, (1.0 + b * c) / a;
    return m;
}

std::unique_ptr<Sample> make_sample(const CurveSpec& spec, const SurfacePoint& p0,
                                    const std::vector<SurfacePoint>& pts, const CVec& ell)
{
    auto s = std::make_unique<Sample>();
    s->pd = compute_periods(spec);
    s->kc = make_kernel_context(s->pd, p0);
    s->cfg = make_config(s->kc, pts, ell);
    return s;
}

std::unique_ptr<Sample> random_sample(int g, Rng& rng)
{
    for (int attempt = 0; attempt < 20; ++attempt) {
        auto s = std::make_unique<Sample>();
        s->pd = compute_periods(random_curve(g, rng));
        auto pts = random_points(s->pd, 3 * g + 1, rng);
        s->kc = make_kernel_context(s->pd, pts.back());
        pts.pop_back();
        s->cfg = make_config(s->kc, pts, random_ell(3 * g, rng));
        if (s->cfg.den_nonzero && std::abs(s->cfg.den) > 1e-6 * s->cfg.den_scale) return s;
    }
    throw Error(ErrorCode::DenZero, "no sample with Den away from zero");
}

double agm(double a, double b)
{
    for (int i = 0; i < 64 && std::abs(a - b) > 1e-16 * a; ++i) {
        double m = 0.5 * (a + b);
        b = std::sqrt(a * b);
        a = m;
    }
    return a;
}

double real_cubic_tau(double e1, double e2, double e3)
{
    double ma = agm(std::sqrt(e3 - e1), std::sqrt(e3 - e2));
    double mb = agm(std::sqrt(e3 - e1), std::sqrt(e2 - e1));
    return -2.0 * M_PI * ma / mb;
}

TauShape tau_shape(const PeriodData& pd)
{
    TauShape t;
    t.asymmetry = (pd.tau - pd.tau.transpose()).norm() / pd.tau.norm();
    Eigen::MatrixXd re = 0.5 * (pd.tau.real() + pd.tau.real().transpose());
    t.max_re_eig = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(re).eigenvalues().maxCoeff();
    return t;
}

namespace {

// |Theta(l1) / (Theta(l2) exp(shift)) - 1|
double theta_ratio_error(const ThetaContext& ctx, const CVec& l1, const CVec& l2, cplx shift)
{
    ThetaValue a = theta_eval(ctx, l1), b = theta_eval(ctx, l2);
    cplx r = std::exp(cplx(a.log_scale - b.log_scale) - shift) * a.value / b.value;
    return std::abs(r - 1.0);
}

CVec random_lambda(const ThetaContext& ctx, Rng& rng)
{
    CVec u(ctx.g), v(ctx.g);
    for (int i = 0; i < ctx.g; ++i) {
        u(i) = rng.uniform(-0.5, 0.5);
        v(i) = rng.uniform(-0.5, 0.5);
    }
    return cplx(0.0, 2.0 * M_PI) * u + ctx.tau * v;
}

} // namespace

ThetaIdentityErrors theta_identities(const ThetaContext& ctx, int samples, Rng& rng)
{
    ThetaIdentityErrors e;
    for (int s = 0; s < samples; ++s) {
        CVec l = random_lambda(ctx, rng);
        e.evenness = std::max(e.evenness, theta_ratio_error(ctx, -l, l, 0.0));
        for (int a = 0; a < ctx.g; ++a) {
            CVec p = l;
            p(a) += cplx(0.0, 2.0 * M_PI);
            e.periodicity = std::max(e.periodicity, theta_ratio_error(ctx, p, l, 0.0));
            CVec q = l + ctx.tau.col(a);
            e.quasi_periodicity =
                std::max(e.quasi_periodicity, theta_ratio_error(ctx, q, l, -0.5 * ctx.tau(a, a) - l(a)));
        }
    }
    return e;
}

double theta_heat_error(const CMat& tau, int samples, Rng& rng, double h)
{
    ThetaContext ctx = make_theta_context(tau);
    const int g = ctx.g;
    double err = 0.0;
    for (int s = 0; s < samples; ++s) {
        CVec l = random_lambda(ctx, rng);
        ThetaValue v = theta_eval(ctx, l, 2);
        for (int a = 0; a < g; ++a)
            for (int b = a; b < g; ++b) {
                CMat E = CMat::Zero(g, g);
                E(a, b) = E(b, a) = h;
                ThetaValue p = theta_eval(make_theta_context(tau + E), l);
                ThetaValue m = theta_eval(make_theta_context(tau - E), l);
                cplx fd = (std::exp(p.log_scale - v.log_scale) * p.value -
                           std::exp(m.log_scale - v.log_scale) * m.value) /
                          (2.0 * h);
                cplx expect = a == b ? 0.5 * v.hess(a, a) : v.hess(a, b);
                double sc = std::abs(v.value) + std::abs(expect);
                err = std::max(err, std::abs(fd - expect) / sc);
            }
    }
    return err;
}

GreenErrors green_checks(const KernelContext& kc, const Located& P, const Located& z, double radius)
{
    const PeriodData& pd = *kc.pd;
    GreenErrors e;
    auto around = [&](const Located& c) {
        return laurent_probe(
            [&](cplx x) {
                CVec v(1);
                v(0) = green_G(kc, locate_near(pd, c, x), P);
                return v;
            },
            c.x, radius, -2, 2);
    };
    LaurentResult Ld = around(P);
    e.diag_residue = std::max(std::abs(Ld.at(0, -1) - 1.0), std::abs(Ld.at(0, -2)));
    LaurentResult L0 = around(kc.P0);
    e.p0_residue = std::max(std::abs(L0.at(0, -1) + 1.0), std::abs(L0.at(0, -2)));
    cplx r0 = r_kernel(kc, P, z);
    for (int a = 0; a < pd.g; ++a) {
        Located zb = z, za = z;
        zb.A += cycle_integral(pd, pd.b_loops[a]);
        za.A += cycle_integral(pd, pd.a_loops[a]);
        e.b_monodromy = std::max(e.b_monodromy, std::abs(r_kernel(kc, P, zb) - r0 - P.omega(a)));
        e.a_monodromy = std::max(e.a_monodromy, std::abs(r_kernel(kc, P, za) - r0));
    }
    return e;
}

CVec alternative_kappa(const KernelContext& kc)
{
    const unsigned n = 1u << kc.theta.g;
    for (unsigned b = 0; b < n; ++b)
        for (unsigned a = 0; a < n; ++a) {
            if (!is_odd_characteristic(a, b)) continue;
            CVec k = half_period(kc.theta, a, b);
            if ((k - kc.kappa0).norm() < 1e-9) continue;
            if (theta_eval(kc.theta, k, 1).grad.norm() < 1e-6) continue;
            return k;
        }
    throw Error(ErrorCode::UnsupportedConfiguration, "no second odd half-period");
}

double den_agreement(const HeckeConfig& cfg)
{
    cplx s = den_sum(cfg);
    return std::abs(den_det(cfg) - s) / std::abs(s);
}

CVec den_zero_ell(const HeckeConfig& cfg)
{
    const int j = cfg.n() - 1;
    auto D = den_coefficients<cplx>(cfg, cfg.ell, j);
    cplx disc = std::sqrt(D.D1 * D.D1 - 4.0 * D.D2 * D.D0);
    cplx r1 = (-D.D1 + disc) / (2.0 * D.D2), r2 = (-D.D1 - disc) / (2.0 * D.D2);
    CVec l = cfg.ell;
    l(j) = std::abs(r1) > std::abs(r2) ? r1 : r2;
    return l;
}

double singular_ratio(const LaurentResult& L)
{
    double sing = 0.0, reg = 0.0;
    const int lo = L.min_order, hi = lo + static_cast<int>(L.coeffs.cols()) - 1;
    for (int r = 0; r < L.coeffs.rows(); ++r)
        for (int n = lo; n <= hi; ++n) {
            double m = std::abs(L.at(r, n)) * std::pow(L.radius, n);
            if (n < 0) sing = std::max(sing, m);
            else reg = std::max(reg, m);
        }
    return sing / reg;
}

double hitchin_singular_ratio(const PhasePoint& pp, const Located& center, double radius)
{
    const PeriodData& pd = *pp.cfg.kc->pd;
    LaurentResult L = laurent_probe(
        [&](cplx x) {
            CVec v(1);
            v(0) = hitchin_H(pp, z_data(pp.cfg, locate_near(pd, center, x)));
            return v;
        },
        center.x, radius, -2, 2);
    return singular_ratio(L);
}

double h_alt_mismatch(const PhasePoint& pp, const Located& z, bool literal)
{
    ZData zd = z_data(pp.cfg, z);
    cplx h = hitchin_H(pp, zd);
    return std::abs(hitchin_H_alt(pp, zd, literal) - h) / std::abs(h);
}

double poisson_residual(const PhasePoint& pp, const Interpolator& ip)
{
    const int m = 3 * pp.cfg.g - 3;
    double worst = 0.0;
    for (int a = 0; a < m; ++a)
        for (int b = a + 1; b < m; ++b) {
            double sc = 0.0;
            cplx br = poisson_bracket(pp, hamiltonian_observable(ip, a), hamiltonian_observable(ip, b), &sc);
            worst = std::max(worst, std::abs(br) / sc);
        }
    return worst;
}

double sl2_invariance(const PhasePoint& pp, const std::vector<Located>& fit, const std::vector<Located>& holdout,
                      const Eigen::Matrix2cd& g)
{
    Interpolator ip = make_interpolator(pp.cfg, fit, holdout);
    CVec H = extract_hamiltonians(pp, ip).H;
    PhasePoint q = sl2_action(g, pp);
    Interpolator iq = make_interpolator(q.cfg, fit, holdout);
    CVec Hq = extract_hamiltonians(q, iq).H;
    return (Hq - H).cwiseAbs().maxCoeff() / H.cwiseAbs().maxCoeff();
}

PoleLaw kzb_pole_law(const HeckeConfig& cfg, const Located& center, const KzbOptions& o, double radius)
{
    const PeriodData& pd = *cfg.kc->pd;
    LaurentResult L = laurent_probe(
        [&](cplx x) { return t_diff(cfg, kzb_z_data(cfg, locate_near(pd, center, x)), o, 1).values(); }, center.x,
        radius, -2, 2);
    PoleLaw p;
    const int last = static_cast<int>(L.coeffs.rows()) - 1;
    p.scalar_c2 = L.at(last, -2);
    double reg = 0.0;
    for (int r = 0; r <= last; ++r)
        for (int n = 0; n <= 2; ++n) reg = std::max(reg, std::abs(L.at(r, n)) * std::pow(radius, n));
    for (int r = 0; r < last; ++r) p.operator_c2 = std::max(p.operator_c2, std::abs(L.at(r, -2)) / (radius * radius));
    p.operator_c2 /= reg;
    p.singular = singular_ratio(L);
    return p;
}

CVec derivative_weights(const HeckeConfig& cfg, const TestFunction& F)
{
    const int n = cfg.n();
    Jet J = F(ell_jets(cfg, 2));
    CVec w(n * (n + 1) / 2 + n + 1);
    int k = 0;
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            std::vector<int> m(n, 0);
            ++m[i];
            ++m[j];
            w(k++) = J.derivative(m);
        }
    for (int i = 0; i < n; ++i) {
        std::vector<int> m(n, 0);
        m[i] = 1;
        w(k++) = J.derivative(m);
    }
    w(k) = J.value();
    return w;
}

double kzb_p0_invariant_ratio(const HeckeConfig& cfg, const KzbOptions& o, double radius)
{
    if (o.k != std::round(o.k)) throw Error(ErrorCode::UnsupportedConfiguration, "invariant functions need integer k");
    const PeriodData& pd = *cfg.kc->pd;
    const Located& c = cfg.kc->P0;
    auto fs = invariant_functions(static_cast<int>(o.k));
    std::vector<CVec> ws;
    for (const auto& f : fs) ws.push_back(derivative_weights(cfg, f));
    LaurentResult L = laurent_probe(
        [&](cplx x) {
            CVec v = t_diff(cfg, kzb_z_data(cfg, locate_near(pd, c, x)), o, 1).values();
            CVec out(ws.size());
            for (size_t k = 0; k < ws.size(); ++k) out(k) = (v.array() * ws[k].array()).sum();
            return out;
        },
        c.x, radius, -2, 2);
    // one row per function, each judged on its own scale
    double worst = 0.0;
    for (int r = 0; r < L.coeffs.rows(); ++r) {
        LaurentResult row = L;
        row.coeffs = L.coeffs.row(r);
        worst = std::max(worst, singular_ratio(row));
    }
    return worst;
}

std::vector<TestFunction> invariant_functions(int k)
{
    using M = std::vector<std::vector<int>>;
    auto edge = [](M& m, int a, int b, int v) { m[a][b] = m[b][a] = v; };
    std::vector<TestFunction> fs;
    M match(6, std::vector<int>(6, 0));
    edge(match, 0, 1, k);
    edge(match, 2, 3, k);
    edge(match, 4, 5, k);
    fs.push_back(product_test_function(match));
    M cross(6, std::vector<int>(6, 0));
    edge(cross, 0, 3, k);
    edge(cross, 1, 4, k);
    edge(cross, 2, 5, k);
    fs.push_back(product_test_function(cross));
    if (k % 2 == 0) {
        M tri(6, std::vector<int>(6, 0));
        for (int base : {0, 3}) {
            edge(tri, base, base + 1, k / 2);
            edge(tri, base + 1, base + 2, k / 2);
            edge(tri, base + 2, base, k / 2);
        }
        fs.push_back(product_test_function(tri));
        M hex(6, std::vector<int>(6, 0));
        for (int i = 0; i < 6; ++i) edge(hex, i, (i + 1) % 6, k / 2);
        fs.push_back(product_test_function(hex));
    }
    return fs;
}

std::vector<TestFunction> monomial_functions(int n)
{
    if (n < 6) throw Error(ErrorCode::UnsupportedConfiguration, "monomial set needs 6 variables");
    std::vector<std::vector<int>> powers(6, std::vector<int>(n, 0));
    powers[0][0] = 1;
    powers[1][2] = 1;
    powers[2][0] = powers[2][1] = 1;
    powers[3][1] = 2;
    powers[4][3] = powers[4][5] = 1;
    powers[5][4] = 2;
    std::vector<TestFunction> fs;
    for (const auto& p : powers) fs.push_back(monomial_test_function(p));
    return fs;
}

double symbol_mismatch(const PhasePoint& pp, const OperatorInterpolator& oip, const Interpolator& hip,
                       const KzbOptions& o, double scale)
{
    TAlphaResult ta = t_diff_alpha(pp.cfg, oip, o, 1);
    CVec H = extract_hamiltonians(pp, hip).H;
    const int n = pp.cfg.n();
    double worst = 0.0;
    for (int a = 0; a < H.size(); ++a) {
        cplx s = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) s += ta.T[a].second(i, j).value() * pp.lambda(i) * pp.lambda(j);
        worst = std::max(worst, std::abs(s - scale * H(a)));
    }
    return worst / H.cwiseAbs().maxCoeff();
}

double variation_check(const HeckeConfig& cfg, Rng& rng, double* projection_residual)
{
    CVec raw(cfg.n());
    for (int i = 0; i < cfg.n(); ++i) raw(i) = rng.disc(0.1);
    CVec dP = project_delta_p(cfg, raw);
    if (projection_residual)
        *projection_residual = (cfg.Omega.transpose() * dP).norm() / (cfg.Omega.norm() * dP.norm());
    Variation v = bundle_variation(cfg, dP);
    return variation_residual(cfg, dP, v);
}

} // namespace hecke::checks
