#include "hecke/hecke_map.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace hecke {

namespace {

constexpr double kDenRelZero = 1e-10;

void fill_kernels(HeckeConfig& c)
{
    const int n = c.n();
    c.Omega.resize(n, c.g);
    for (int i = 0; i < n; ++i) c.Omega.row(i) = c.P[i].omega.transpose();
    c.W = CMat::Zero(n, n);
    c.rP0.resize(n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j)
            if (i != j) c.W(i, j) = omega_kernel(*c.kc, c.P[i], c.P[j]);
        c.rP0(i) = r_kernel(*c.kc, c.P[i], c.kc->P0);
    }
}

void fill_den(HeckeConfig& c)
{
    CMat M = den_matrix<cplx>(c, c.ell);
    c.den = det_lu<cplx>(M);
    c.den_scale = hadamard_bound(M);
    c.den_nonzero = std::abs(c.den) > kDenRelZero * c.den_scale;
}

} // namespace

HeckeConfig make_config(const KernelContext& kc, const std::vector<SurfacePoint>& pts, const CVec& ell)
{
    std::vector<Located> L;
    for (const auto& p : pts) L.push_back(locate(*kc.pd, p));
    return make_config(kc, L, ell);
}

HeckeConfig make_config(const KernelContext& kc, const std::vector<Located>& pts, const CVec& ell)
{
    HeckeConfig c;
    c.kc = &kc;
    c.g = kc.pd->g;
    const int n = 3 * c.g;
    if ((int)pts.size() != n || ell.size() != n) {
        std::ostringstream os;
        os << "expected 3g = " << n << " points";
        throw Error(ErrorCode::InvalidInput, os.str());
    }
    double sc = kc.pd->scale;
    for (int i = 0; i < n; ++i) {
        if (std::abs(ell(i)) < 1e-12 || !std::isfinite(std::abs(ell(i))))
            throw Error(ErrorCode::ZeroEll, "l_" + std::to_string(i + 1) + " is 0 or infinite");
        if (std::abs(pts[i].x - kc.P0.x) < 1e-9 * sc)
            throw Error(ErrorCode::InvalidInput, "P_" + std::to_string(i + 1) + " coincides with P0");
        for (int j = 0; j < i; ++j)
            if (std::abs(pts[i].x - pts[j].x) < 1e-9 * sc && std::abs(pts[i].y - pts[j].y) < 1e-9 * std::abs(pts[i].y))
                throw Error(ErrorCode::InvalidInput, "coincident points P_" + std::to_string(j + 1) + ", P_" +
                                                          std::to_string(i + 1));
    }
    c.P = pts;
    c.ell = ell;
    fill_kernels(c);
    fill_den(c);
    return c;
}

HeckeConfig with_ell(const HeckeConfig& cfg, const CVec& ell)
{
    HeckeConfig c = cfg;
    c.ell = ell;
    for (int i = 0; i < ell.size(); ++i)
        if (std::abs(ell(i)) < 1e-12) throw Error(ErrorCode::ZeroEll, "l_" + std::to_string(i + 1) + " is 0");
    fill_den(c);
    return c;
}

void require_den_nonzero(const HeckeConfig& cfg)
{
    if (cfg.den_nonzero) return;
    std::ostringstream os;
    os << "Den = " << std::abs(cfg.den) << " (scale " << cfg.den_scale << ")";
    std::string pairs;
    double s = cfg.ell.cwiseAbs().maxCoeff();
    for (int i = 0; i < cfg.n(); ++i)
        for (int j = i + 1; j < cfg.n(); ++j)
            if (std::abs(cfg.ell(i) - cfg.ell(j)) < 1e-9 * s)
                pairs += " (" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")";
    if (!pairs.empty()) os << "; coincident l at indices" << pairs;
    throw Error(ErrorCode::DenZero, os.str());
}

cplx den_sum(const HeckeConfig& cfg)
{
    const int n = cfg.n();
    std::vector<int> s(n);
    std::iota(s.begin(), s.end(), 0);
    cplx total = 0.0;
    do {
        bool ordered = true;
        for (int a = 0; a < cfg.g && ordered; ++a)
            ordered = s[3 * a] < s[3 * a + 1] && s[3 * a + 1] < s[3 * a + 2];
        if (!ordered) continue;
        int inv = 0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                if (s[i] > s[j]) ++inv;
        cplx t = (inv % 2) ? -1.0 : 1.0;
        for (int a = 0; a < cfg.g; ++a) {
            int p = s[3 * a], q = s[3 * a + 1], r = s[3 * a + 2];
            t *= cfg.Omega(p, a) * cfg.Omega(q, a) * cfg.Omega(r, a);
            t *= (cfg.ell(p) - cfg.ell(q)) * (cfg.ell(p) - cfg.ell(r)) * (cfg.ell(q) - cfg.ell(r));
        }
        total += t;
    } while (std::next_permutation(s.begin(), s.end()));
    return total;
}

CMat stability_matrix(const HeckeConfig& cfg)
{
    const int n = cfg.n();
    CMat S = CMat::Zero(2 * n, n + 3);
    for (int a = 0; a < cfg.g; ++a)
        for (int al = 0; al < 3; ++al)
            for (int i = 0; i < n; ++i) S(3 * a + al, i) = std::pow(cfg.ell(i), al) * cfg.Omega(i, a);
    for (int i = 0; i < n; ++i) {
        int r = n + i;
        for (int j = 0; j < n; ++j)
            if (j != i) S(r, j) = std::pow(cfg.ell(i) - cfg.ell(j), 2) * cfg.W(i, j);
        S(r, n + 0) = -cfg.ell(i) * cfg.ell(i); // C_e
        S(r, n + 1) = -2.0 * cfg.ell(i);        // C_h
        S(r, n + 2) = 1.0;                      // C_f
    }
    for (int r = 0; r < S.rows(); ++r) {
        double nr = S.row(r).norm();
        if (nr > 0) S.row(r) /= nr;
    }
    return S;
}

StabilityReport stability_check(const HeckeConfig& cfg)
{
    KernelResult k = kernel_basis(stability_matrix(cfg));
    return {k.dim, k.smallest_sv, k.basis};
}

RigidityReport fiber_rigidity(const HeckeConfig& cfg)
{
    CMat M = den_matrix<cplx>(cfg, cfg.ell);
    for (int r = 0; r < M.rows(); ++r) M.row(r) /= M.row(r).norm();
    KernelResult k = kernel_basis(M);
    return {k.dim, static_cast<int>(M.cols()) - k.dim, k.smallest_sv};
}

CVec project_delta_p(const HeckeConfig& cfg, const CVec& raw)
{
    CMat O = cfg.Omega.transpose(); // g x 3g
    CMat gram = O * O.adjoint();
    return raw - O.adjoint() * gram.ldlt().solve(O * raw);
}

Variation bundle_variation(const HeckeConfig& cfg, const CVec& dP)
{
    require_den_nonzero(cfg);
    const int n = cfg.n();
    CVec c = cfg.Omega.transpose() * dP;
    double sc = dP.cwiseAbs().maxCoeff() * cfg.Omega.cwiseAbs().maxCoeff();
    if (c.cwiseAbs().maxCoeff() > 1e-9 * std::max(sc, 1e-300) && sc > 0)
        throw Error(ErrorCode::ConstraintViolated, "sum_i omega_a(P_i) dP_i != 0");
    const CVec& l = cfg.ell;
    Cofactors<cplx> cof = cofactors<cplx>(cfg, l);
    // D0 for row i at omega(P_j) is Den|_{l_i = 0, P_i -> P_j}
    CMat D0(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) D0(i, j) = cof.at(i, cfg.P[j].omega).D0;
    Variation v;
    v.alpha1 = CVec::Zero(n);
    for (int i = 0; i < n; ++i) {
        cplx s = 0.0;
        for (int j = 0; j < n; ++j) s += -(l(i) / l(j)) * dP(j) * D0(i, j);
        v.alpha1(i) = s / cof.den;
    }
    v.beta1.resize(n);
    for (int i = 0; i < n; ++i) v.beta1(i) = -(v.alpha1(i) + dP(i)) / l(i);
    v.delta_ell = CVec::Zero(n);
    v.delta_ell_closed = CVec::Zero(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (j == i) continue;
            cplx lij = l(i) - l(j);
            v.delta_ell(i) += cfg.W(i, j) * lij * (v.alpha1(j) + l(i) * v.beta1(j));
            cplx s = 0.0;
            for (int m = 0; m < n; ++m) s += dP(m) / l(m) * D0(j, m);
            v.delta_ell_closed(i) += cfg.W(i, j) * lij * lij * s / cof.den - cfg.W(i, j) * lij * (l(i) / l(j)) * dP(j);
        }
    return v;
}

double variation_residual(const HeckeConfig& cfg, const CVec& dP, const Variation& v)
{
    const int n = cfg.n();
    double worst = 0.0;
    for (int a = 0; a < cfg.g; ++a) {
        cplx f1 = 0.0, f2 = 0.0, f3 = 0.0;
        double s = 0.0;
        for (int i = 0; i < n; ++i) {
            cplx w = cfg.Omega(i, a), l = cfg.ell(i);
            f1 += w * v.alpha1(i);
            f2 += w * l * v.alpha1(i);
            f3 += w / l * (v.alpha1(i) + dP(i));
            s = std::max(s, std::abs(w) * (std::abs(v.alpha1(i)) + std::abs(dP(i))) *
                                std::max(std::abs(l), 1.0 / std::abs(l)));
        }
        if (s == 0.0) continue;
        worst = std::max({worst, std::abs(f1) / s, std::abs(f2) / s, std::abs(f3) / s});
    }
    return worst;
}

} // namespace hecke
