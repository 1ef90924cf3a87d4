#include "hecke/kzb.hpp"

#include <Eigen/SVD>

namespace hecke {

Jet FirstOrderOp::apply(const Jet& F) const
{
    Jet r = c * F;
    for (size_t i = 0; i < d.size(); ++i) r = r + d[i] * F.partial(static_cast<int>(i));
    return r;
}

DiffOperator DiffOperator::zero(int n)
{
    DiffOperator D;
    D.n = n;
    D.c2.assign(n * n, Jet(0.0));
    D.c1.assign(n, Jet(0.0));
    D.c0 = Jet(0.0);
    return D;
}

Jet DiffOperator::apply(const Jet& F) const
{
    Jet r = c0 * F;
    for (int i = 0; i < n; ++i) {
        Jet Fi = F.partial(i);
        r = r + c1[i] * Fi;
        for (int j = 0; j < n; ++j) r = r + second(i, j) * Fi.partial(j);
    }
    return r;
}

CVec DiffOperator::values() const
{
    CVec v(n * (n + 1) / 2 + n + 1);
    int k = 0;
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j)
            v(k++) = i == j ? second(i, i).value() : second(i, j).value() + second(j, i).value();
    for (int i = 0; i < n; ++i) v(k++) = c1[i].value();
    v(k) = c0.value();
    return v;
}

DiffOperator compose(const FirstOrderOp& P, const FirstOrderOp& Q)
{
    const int n = static_cast<int>(P.d.size());
    DiffOperator D = DiffOperator::zero(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) D.second(i, j) = P.d[i] * Q.d[j];
    for (int j = 0; j < n; ++j) {
        Jet s = P.c * Q.d[j] + P.d[j] * Q.c;
        for (int i = 0; i < n; ++i) s = s + P.d[i] * Q.d[j].partial(i);
        D.c1[j] = s;
    }
    Jet s = P.c * Q.c;
    for (int i = 0; i < n; ++i) s = s + P.d[i] * Q.c.partial(i);
    D.c0 = s;
    return D;
}

DiffOperator& accumulate(DiffOperator& acc, const DiffOperator& t, cplx w)
{
    for (size_t k = 0; k < acc.c2.size(); ++k) acc.c2[k] = acc.c2[k] + t.c2[k] * w;
    for (size_t k = 0; k < acc.c1.size(); ++k) acc.c1[k] = acc.c1[k] + t.c1[k] * w;
    acc.c0 = acc.c0 + t.c0 * w;
    return acc;
}

KzbZData kzb_z_data(const HeckeConfig& cfg, const Located& z)
{
    const int n = cfg.n();
    KzbZData d{z, CVec(n), CVec(n), CVec(n)};
    for (int i = 0; i < n; ++i) {
        d.Gz(i) = green_G(*cfg.kc, z, cfg.P[i]);
        d.Gpz(i) = green_G(*cfg.kc, cfg.P[i], z);
        d.dGpz(i) = d_green_G_dw(*cfg.kc, cfg.P[i], z);
    }
    return d;
}

Vec<Jet> ell_jets(const HeckeConfig& cfg, int order)
{
    const int n = cfg.n();
    Vec<Jet> l(n);
    for (int i = 0; i < n; ++i) l(i) = Jet::variable(n, order, i, cfg.ell(i));
    return l;
}

namespace {

SL2Vector<Jet> B_at(const Cofactors<Jet>& cof, int j, const Located& z, Bracket b)
{
    return bracket_vector(cof.at(j, z.omega), b);
}

} // namespace

SL2Vector<Jet> coeff_a(const HeckeConfig& cfg, const Vec<Jet>& ell, const Cofactors<Jet>& cof, const KzbZData& zd,
                       const KzbOptions& o)
{
    SL2Vector<Jet> a;
    Jet inv_den = inv(cof.den);
    for (int i = 0; i < cfg.n(); ++i) {
        auto B = B_at(cof, i, zd.z, o.bracket);
        a += (-inv_den * zd.Gpz(i)) * lie_bracket(residue_direction<Jet>(ell(i)), B);
    }
    return a;
}

Jet coeff_s(const HeckeConfig& cfg, const Vec<Jet>& ell, const Cofactors<Jet>& cof, const KzbZData& zd,
            const KzbOptions& o)
{
    Jet s(0.0);
    if (o.k == 0.0) return s;
    for (int i = 0; i < cfg.n(); ++i) {
        auto B = B_at(cof, i, zd.z, o.bracket);
        s = s + zd.dGpz(i) * pairing(residue_direction<Jet>(ell(i)), B);
    }
    return s * inv(cof.den) * (-o.k);
}

SL2Vector<Jet> coeff_mu(const HeckeConfig& cfg, const Vec<Jet>& ell, const Cofactors<Jet>& cof, int i,
                        const KzbZData& zd, const KzbOptions& o)
{
    SL2Vector<Jet> mu = (-zd.Gz(i)) * residue_direction<Jet>(ell(i));
    Jet inv_den = inv(cof.den);
    for (int j = 0; j < cfg.n(); ++j) {
        if (j == i) continue;
        Jet lij = ell(i) - ell(j);
        mu += (-(lij * lij) * inv_den * cfg.Gpp(j, i)) * B_at(cof, j, zd.z, o.bracket);
    }
    return mu;
}

SL2Vector<Jet> coeff_nu(const HeckeConfig& cfg, const Vec<Jet>& ell, const Cofactors<Jet>& cof, const KzbZData& zd,
                        const KzbOptions& o)
{
    const int n = cfg.n();
    SL2Vector<Jet> nu;
    for (int i = 0; i < n; ++i) nu += (-zd.Gz(i)) * SL2Vector<Jet>{Jet(0.0), Jet(0.5), ell(i)};
    Jet inv_den = inv(cof.den);
    for (int j = 0; j < n; ++j) {
        Jet c(0.0);
        for (int i = 0; i < n; ++i)
            if (i != j) c = c + (ell(j) - ell(i)) * cfg.Gpp(j, i);
        nu += (c * inv_den) * B_at(cof, j, zd.z, o.bracket);
    }
    return nu;
}

namespace {

struct Pieces {
    SL2Operator X;
    SL2Vector<Jet> a;
    Jet s;
};

Pieces build(const HeckeConfig& cfg, const KzbZData& zd, const KzbOptions& o, int order)
{
    require_den_nonzero(cfg);
    const int n = cfg.n();
    Vec<Jet> ell = ell_jets(cfg, order);
    Cofactors<Jet> cof = cofactors<Jet>(cfg, ell);
    Pieces p;
    for (auto* c : {&p.X.e, &p.X.h, &p.X.f}) c->d.resize(n);
    for (int i = 0; i < n; ++i) {
        auto mu = coeff_mu(cfg, ell, cof, i, zd, o);
        p.X.e.d[i] = mu.e;
        p.X.h.d[i] = mu.h;
        p.X.f.d[i] = mu.f;
    }
    auto nu = coeff_nu(cfg, ell, cof, zd, o);
    p.X.e.c = nu.e * (-o.k);
    p.X.h.c = nu.h * (-o.k);
    p.X.f.c = nu.f * (-o.k);
    p.a = coeff_a(cfg, ell, cof, zd, o);
    p.s = coeff_s(cfg, ell, cof, zd, o);
    return p;
}

void add_first_order(DiffOperator& D, const Jet& w, const FirstOrderOp& X)
{
    for (int i = 0; i < D.n; ++i) D.c1[i] = D.c1[i] + w * X.d[i];
    D.c0 = D.c0 + w * X.c;
}

} // namespace

SL2Operator ell_diff(const HeckeConfig& cfg, const KzbZData& zd, const KzbOptions& o, int order)
{
    return build(cfg, zd, o, order).X;
}

DiffOperator t_diff(const HeckeConfig& cfg, const KzbZData& zd, const KzbOptions& o, int order)
{
    Pieces p = build(cfg, zd, o, order);
    const int n = cfg.n();
    DiffOperator T = DiffOperator::zero(n);
    accumulate(T, compose(p.X.e, p.X.f));
    accumulate(T, compose(p.X.f, p.X.e));
    accumulate(T, compose(p.X.h, p.X.h), 2.0);
    add_first_order(T, p.a.e, p.X.f);
    add_first_order(T, p.a.f, p.X.e);
    add_first_order(T, p.a.h * 2.0, p.X.h);
    T.c0 = T.c0 + p.s;
    return T;
}

CVec p0_quad_basis(const HeckeConfig& cfg, const Located& z)
{
    const Located& p = cfg.kc->P0;
    cplx s = 0.0;
    for (cplx e : cfg.kc->pd->spec.branch_points) s += 1.0 / (p.x - e);
    cplx dy = 0.5 * p.y * s;
    cplx u = z.x - p.x, y2 = z.y * z.y;
    CVec b(2);
    b(0) = (z.y + p.y) / (u * y2);
    b(1) = (z.y + p.y + dy * u) / (u * u * y2);
    return b;
}

namespace {

CVec full_basis(const HeckeConfig& cfg, const Located& z)
{
    CVec h = quad_basis(*cfg.kc->pd, z), p = p0_quad_basis(cfg, z);
    CVec b(h.size() + 2);
    b << h, p;
    return b;
}

} // namespace

OperatorInterpolator make_operator_interpolator(const HeckeConfig& cfg, const std::vector<Located>& fit,
                                                const std::vector<Located>& holdout)
{
    const int m = 3 * cfg.g - 1;
    if ((int)fit.size() != m) throw Error(ErrorCode::InvalidInput, "need 3g-1 interpolation points");
    OperatorInterpolator ip;
    CMat Phi(m, m);
    for (int k = 0; k < m; ++k) {
        ip.fit.push_back(kzb_z_data(cfg, fit[k]));
        Phi.row(k) = full_basis(cfg, fit[k]).transpose();
    }
    Eigen::JacobiSVD<CMat> svd(Phi);
    auto sv = svd.singularValues();
    ip.condition = sv(0) / sv(m - 1);
    if (!(ip.condition < 1e10)) throw Error(ErrorCode::IllConditionedBasis, "interpolation matrix is ill conditioned");
    ip.weights = Phi.inverse();
    ip.holdout_basis.resize(holdout.size(), m);
    for (size_t k = 0; k < holdout.size(); ++k) {
        ip.holdout.push_back(kzb_z_data(cfg, holdout[k]));
        ip.holdout_basis.row(k) = full_basis(cfg, holdout[k]).transpose();
    }
    return ip;
}

TAlphaResult t_diff_alpha(const HeckeConfig& cfg, const OperatorInterpolator& ip, const KzbOptions& o, int order)
{
    const int n = cfg.n();
    const int m = static_cast<int>(ip.fit.size());
    std::vector<DiffOperator> Tk;
    for (const auto& zd : ip.fit) Tk.push_back(t_diff(cfg, zd, o, order));
    std::vector<DiffOperator> comp(m, DiffOperator::zero(n));
    for (int b = 0; b < m; ++b)
        for (int k = 0; k < m; ++k) accumulate(comp[b], Tk[k], ip.weights(b, k));
    TAlphaResult r;
    for (int a = 0; a < 3 * cfg.g - 3; ++a) r.T.push_back(comp[a]);
    for (size_t h = 0; h < ip.holdout.size(); ++h) {
        CVec actual = t_diff(cfg, ip.holdout[h], o, 1).values();
        CVec pred = CVec::Zero(actual.size());
        for (int b = 0; b < m; ++b) pred += ip.holdout_basis(h, b) * comp[b].values();
        double sc = actual.cwiseAbs().maxCoeff();
        r.holdout_residual = std::max(r.holdout_residual, (actual - pred).cwiseAbs().maxCoeff() / sc);
    }
    return r;
}

TestFunction product_test_function(const std::vector<std::vector<int>>& m)
{
    return [m](const Vec<Jet>& ell) {
        Jet f = Jet::constant(ell(0).nvars(), ell(0).order(), 1.0);
        for (size_t i = 0; i < m.size(); ++i)
            for (size_t j = i + 1; j < m.size(); ++j)
                if (m[i][j]) f = f * pow(ell(i) - ell(j), m[i][j]);
        return f;
    };
}

TestFunction monomial_test_function(const std::vector<int>& powers)
{
    return [powers](const Vec<Jet>& ell) {
        Jet f = Jet::constant(ell(0).nvars(), ell(0).order(), 1.0);
        for (size_t i = 0; i < powers.size(); ++i)
            if (powers[i]) f = f * pow(ell(i), powers[i]);
        return f;
    };
}

CommutatorResult commutator_check(const HeckeConfig& cfg, const OperatorInterpolator& ip, int alpha, int beta,
                                  const std::vector<TestFunction>& fs, const std::vector<CVec>& ell_points,
                                  const KzbOptions& o)
{
    CommutatorResult r;
    const int m = static_cast<int>(ip.fit.size());
    for (const CVec& lp : ell_points) {
        HeckeConfig c = with_ell(cfg, lp);
        std::vector<DiffOperator> Tk;
        for (const auto& zd : ip.fit) Tk.push_back(t_diff(c, zd, o, 3));
        auto apply = [&](int a, const Jet& F) {
            Jet out(0.0);
            for (int k = 0; k < m; ++k) out = out + Tk[k].apply(F) * ip.weights(a, k);
            return out;
        };
        Vec<Jet> ell = ell_jets(c, 4);
        for (const auto& f : fs) {
            Jet F = f(ell);
            cplx ab = apply(alpha, apply(beta, F)).value();
            cplx ba = apply(beta, apply(alpha, F)).value();
            double sc = std::abs(ab) + std::abs(ba);
            double res = sc > 0 ? std::abs(ab - ba) / sc : 0.0;
            r.residuals.push_back(res);
            r.max_residual = std::max(r.max_residual, res);
            r.max_scale = std::max(r.max_scale, sc);
        }
    }
    return r;
}

Jet LambdaOperator::apply_scalar(const Jet& F, const Vec<Jet>& ell, double k) const
{
    Jet r = scalar * F;
    for (size_t j = 0; j < shifted.size(); ++j)
        r = r + shifted[j] * (F.partial(static_cast<int>(j)) - F * (k / ell(j).value()));
    return r;
}

LambdaOperator lambda_operator(const HeckeConfig& cfg, int i, double k, int order)
{
    require_den_nonzero(cfg);
    const int n = cfg.n();
    Vec<Jet> l = ell_jets(cfg, order);
    Cofactors<Jet> cof = cofactors<Jet>(cfg, l);
    Jet inv_den = inv(cof.den);
    auto r = [&](int a, int b) { return cfg.W(b, a); }; // r^{(P_a)}(P_b)
    // Den|_{l_l = 0, P_l -> P_i}
    auto den_sub = [&](int row, const Located& p) { return cof.at(row, p.omega).D0; };
    LambdaOperator L;
    L.shifted.assign(n, Jet(0.0));
    for (int j = 0; j < n; ++j) {
        if (j == i) continue;
        L.shifted[j] = L.shifted[j] + r(i, j) * (l(j) - l(i)) * l(j) / l(i);
    }
    for (int j = 0; j < n; ++j)
        for (int m = 0; m < n; ++m) {
            if (j == m) continue;
            Jet ljm = l(j) - l(m);
            L.shifted[j] = L.shifted[j] - inv_den * r(m, j) * ljm * ljm * den_sub(m, cfg.P[i]) / l(i);
        }
    L.scalar = Jet(0.0);
    for (int j = 0; j < n; ++j)
        for (int m = 0; m < n; ++m) {
            if (m == j) continue;
            L.scalar = L.scalar - k * inv_den * l(j) * l(j) / (l(i) * l(m)) * r(j, m) * den_sub(j, cfg.P[i]);
        }
    L.sl2 = SL2Vector<Jet>{cplx(k) / l(i), Jet(-0.5 * k), Jet(0.0)};
    for (int j = 0; j < n; ++j) {
        // Den|_{l_j = 0, P_i -> P_j}
        std::vector<RowOverride<Jet>> rows{{j, cfg.P[j].omega, Jet(0.0)}};
        if (j != i) rows.push_back({i, cfg.P[j].omega, l(i)});
        Jet d = den_rows<Jet>(cfg, l, rows);
        Jet w = -(k * inv_den) * l(j) / l(i) * d;
        L.sl2 += w * SL2Vector<Jet>{inv(l(j)), Jet(-1.0), -l(j)};
    }
    return L;
}

} // namespace hecke
