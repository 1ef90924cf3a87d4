#include "hecke/hitchin.hpp"

#include <Eigen/SVD>

namespace hecke {

PhasePoint sample_phase_point(const HeckeConfig& cfg, Rng& rng)
{
    const int n = cfg.n();
    CMat V(3, n);
    for (int al = 0; al < 3; ++al)
        for (int i = 0; i < n; ++i) V(al, i) = std::pow(cfg.ell(i), al);
    KernelResult k = kernel_basis(V);
    if (k.dim == 0) throw Error(ErrorCode::DegenerateConstraints, "moment constraints have no solution");
    CVec lam = CVec::Zero(n);
    for (const auto& b : k.basis) lam += rng.disc(1.0) * b;
    lam /= lam.norm();
    return {cfg, lam};
}

SL2Vector<cplx> moment(const PhasePoint& pp)
{
    SL2Vector<cplx> m;
    for (int i = 0; i < pp.cfg.n(); ++i) m += pp.lambda(i) * residue_direction<cplx>(pp.cfg.ell(i));
    return m;
}

ZData z_data(const HeckeConfig& cfg, const Located& z)
{
    ZData d{z, CVec(cfg.n())};
    for (int i = 0; i < cfg.n(); ++i) d.wz(i) = omega_kernel(*cfg.kc, cfg.P[i], z);
    return d;
}

SL2Vector<cplx> higgs_A(const PhasePoint& pp, const ZData& zd)
{
    require_den_nonzero(pp.cfg);
    auto cof = cofactors<cplx>(pp.cfg, pp.cfg.ell);
    return higgs_A<cplx>(pp.cfg, pp.cfg.ell, pp.lambda, zd, cof);
}

cplx hitchin_H(const PhasePoint& pp, const ZData& zd)
{
    auto A = higgs_A(pp, zd);
    return pairing(A, A);
}

cplx hitchin_H_alt(const PhasePoint& pp, const ZData& zd, bool literal)
{
    const HeckeConfig& cfg = pp.cfg;
    require_den_nonzero(cfg);
    const int n = cfg.n();
    const CVec& l = cfg.ell;
    const CVec& lam = pp.lambda;
    cplx den = den_det(cfg);
    // A^reg
    SL2Vector<cplx> Areg;
    for (int j = 0; j < n; ++j) {
        cplx c = 0.0;
        for (int i = 0; i < n; ++i)
            if (i != j) c += lam(i) * std::pow(l(i) - l(j), 2) * cfg.W(i, j);
        auto D = den_coefficients<cplx>(cfg, l, j, &zd.z);
        Areg += (c / den) * SL2Vector<cplx>{D.D2, 0.5 * D.D1, -D.D0};
    }
    // nu(k, j) = Den with row k -> omega(z)(1, l_j, l_j^2)
    CMat nu(n, n);
    for (int k = 0; k < n; ++k)
        for (int j = 0; j < n; ++j) nu(k, j) = den_rows<cplx>(cfg, l, {{k, zd.z.omega, l(j)}});
    const double c1 = literal ? 1.0 : 2.0;
    const double c2 = literal ? -0.5 : -1.0;
    cplx cross = 0.0;
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) {
            if (k == i) continue;
            cplx a = lam(i) * std::pow(l(k) - l(i), 2) * cfg.W(i, k);
            for (int j = 0; j < n; ++j) cross += a * lam(j) * nu(k, j) * zd.wz(j);
        }
    cplx rat = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j) rat += lam(i) * lam(j) * std::pow(l(i) - l(j), 2) * zd.wz(i) * zd.wz(j);
    return pairing(Areg, Areg) + c1 / den * cross + c2 * rat;
}

cplx residue_line_combination(const PhasePoint& pp, int i, const ZData& zd)
{
    auto A = higgs_A(pp, zd);
    return -pairing(residue_direction<cplx>(pp.cfg.ell(i)), A);
}

CVec quad_basis(const PeriodData& pd, const Located& z)
{
    const int m = 3 * pd.g - 3;
    CVec b(m);
    cplx y2 = z.y * z.y;
    for (int j = 0; j < m; ++j) b(j) = std::pow(z.x, j) / y2;
    return b;
}

std::vector<Located> generic_points(const HeckeConfig& cfg, int count, Rng& rng, double margin)
{
    const PeriodData& pd = *cfg.kc->pd;
    cplx c = 0.0;
    for (cplx e : pd.spec.branch_points) c += e;
    c /= double(pd.spec.branch_points.size());
    std::vector<Located> out;
    int tries = 0;
    while ((int)out.size() < count) {
        if (++tries > 100000) throw Error(ErrorCode::NoConvergence, "could not place generic points");
        cplx x = c + rng.box(cplx(-1.1, -0.9), cplx(1.1, 0.9)) * pd.scale;
        double m = margin * pd.scale;
        if (branch_distance(pd, x) < m) continue;
        if (std::abs(x - cfg.kc->P0.x) < m) continue;
        bool bad = false;
        for (const auto& p : cfg.P) bad = bad || std::abs(x - p.x) < m;
        for (const auto& p : out) bad = bad || std::abs(x - p.x) < m;
        for (cplx e : pd.spec.branch_points) bad = bad || segment_point_distance(pd.x0, x, e) < 0.02 * pd.scale;
        if (bad) continue;
        out.push_back(locate(pd, {x, 1}));
    }
    return out;
}

Interpolator make_interpolator(const HeckeConfig& cfg, const std::vector<Located>& fit,
                               const std::vector<Located>& holdout)
{
    const PeriodData& pd = *cfg.kc->pd;
    const int m = 3 * cfg.g - 3;
    if ((int)fit.size() != m) throw Error(ErrorCode::InvalidInput, "need 3g-3 interpolation points");
    Interpolator ip;
    CMat Phi(m, m);
    for (int k = 0; k < m; ++k) {
        ip.fit.push_back(z_data(cfg, fit[k]));
        Phi.row(k) = quad_basis(pd, fit[k]).transpose();
    }
    Eigen::JacobiSVD<CMat> svd(Phi);
    auto sv = svd.singularValues();
    ip.condition = sv(0) / sv(m - 1);
    if (!(ip.condition < 1e10)) throw Error(ErrorCode::IllConditionedBasis, "interpolation matrix is ill conditioned");
    ip.weights = Phi.inverse();
    ip.holdout_basis.resize(holdout.size(), m);
    for (size_t k = 0; k < holdout.size(); ++k) {
        ip.holdout.push_back(z_data(cfg, holdout[k]));
        ip.holdout_basis.row(k) = quad_basis(pd, holdout[k]).transpose();
    }
    return ip;
}

HamiltonianFit extract_hamiltonians(const PhasePoint& pp, const Interpolator& ip, double tol)
{
    require_den_nonzero(pp.cfg);
    auto cof = cofactors<cplx>(pp.cfg, pp.cfg.ell);
    CVec vals(ip.fit.size());
    for (size_t k = 0; k < ip.fit.size(); ++k)
        vals(k) = hitchin_H_generic<cplx>(pp.cfg, pp.cfg.ell, pp.lambda, ip.fit[k], cof);
    HamiltonianFit r;
    r.H = ip.weights * vals;
    double worst = 0.0;
    for (size_t k = 0; k < ip.holdout.size(); ++k) {
        cplx h = hitchin_H_generic<cplx>(pp.cfg, pp.cfg.ell, pp.lambda, ip.holdout[k], cof);
        cplx pred = (ip.holdout_basis.row(k) * r.H)(0, 0);
        worst = std::max(worst, std::abs(h - pred) / std::max(std::abs(h), 1e-300));
    }
    r.holdout_residual = worst;
    if (worst > tol) throw Error(ErrorCode::InconsistentFit, "held-out residual " + std::to_string(worst));
    return r;
}

PhasePoint sl2_action(const Eigen::Matrix2cd& g, const PhasePoint& pp)
{
    if (std::abs(g.determinant() - 1.0) > 1e-12) throw Error(ErrorCode::InvalidInput, "sl2 element must have det 1");
    const int n = pp.cfg.n();
    CVec l(n), lam(n);
    for (int i = 0; i < n; ++i) {
        cplx den = g(1, 0) * pp.cfg.ell(i) + g(1, 1);
        l(i) = (g(0, 0) * pp.cfg.ell(i) + g(0, 1)) / den;
        lam(i) = pp.lambda(i) * den * den;
    }
    return {with_ell(pp.cfg, l), lam};
}

Observable hamiltonian_observable(const Interpolator& ip, int alpha)
{
    return [&ip, alpha](const HeckeConfig& cfg, const Vec<Jet>& ell, const Vec<Jet>& lam) {
        auto cof = cofactors<Jet>(cfg, ell);
        Jet h(0.0);
        for (size_t k = 0; k < ip.fit.size(); ++k)
            h = h + ip.weights(alpha, k) * hitchin_H_generic<Jet>(cfg, ell, lam, ip.fit[k], cof);
        return h;
    };
}

cplx poisson_bracket(const PhasePoint& pp, const Observable& F, const Observable& G, double* scale)
{
    const int n = pp.cfg.n();
    Vec<Jet> ell(n), lam(n);
    for (int i = 0; i < n; ++i) {
        ell(i) = Jet::variable(2 * n, 1, i, pp.cfg.ell(i));
        lam(i) = Jet::variable(2 * n, 1, n + i, pp.lambda(i));
    }
    Jet f = F(pp.cfg, ell, lam), g = G(pp.cfg, ell, lam);
    cplx b = 0.0;
    double nf = 0.0, ng = 0.0;
    for (int i = 0; i < n; ++i) {
        b += f.d(n + i) * g.d(i) - f.d(i) * g.d(n + i);
        nf += std::norm(f.d(i)) + std::norm(f.d(n + i));
        ng += std::norm(g.d(i)) + std::norm(g.d(n + i));
    }
    if (scale) *scale = std::sqrt(nf * ng);
    return b;
}

} // namespace hecke
