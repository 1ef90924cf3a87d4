#pragma once

// Hecke configurations (P_i, l_i), i = 1..3g, and the determinant Den.

#include <vector>

#include "hecke/green.hpp"

namespace hecke {

// den_sum = kDenBlockSign^g * det M; each Vandermonde block
// l_12 l_13 l_23 is minus the ascending-power determinant.
constexpr int kDenBlockSign = -1;

struct HeckeConfig {
    const KernelContext* kc = nullptr;
    int g = 0;
    std::vector<Located> P;
    CVec ell;
    CMat Omega; // Omega(i, a) = omega_a(P_i)
    CMat W;     // W(i, j) = omega^{(P_i)}(P_j) = r^{(P_j)}(P_i), i != j
    CVec rP0;   // rP0(j) = r^{(P_j)}(P0)
    cplx den;
    double den_scale = 1.0; // Hadamard bound of M
    bool den_nonzero = false;

    int n() const { return static_cast<int>(P.size()); }
    // G(P_j, P_i) dP_j = r^{(P_j)}(P_i) - r^{(P_j)}(P0)
    cplx Gpp(int j, int i) const { return W(i, j) - rP0(j); }
};

// Validates 3g distinct points off the branch locus and l_i != 0, inf.
HeckeConfig make_config(const KernelContext& kc, const std::vector<SurfacePoint>& pts, const CVec& ell);
HeckeConfig make_config(const KernelContext& kc, const std::vector<Located>& pts, const CVec& ell);
// Same points, new l (kernels reused).
HeckeConfig with_ell(const HeckeConfig& cfg, const CVec& ell);

// Throws DenZero naming coincident l indices when Den vanishes.
void require_den_nonzero(const HeckeConfig& cfg);

template <class S>
S ipow(const S& x, int n)
{
    S r = S(1.0);
    for (int k = 0; k < n; ++k) r = r * x;
    return r;
}

// M(i, 3a + alpha) = omega_a(P_i) l_i^alpha, alpha = 0, 1, 2.
template <class S>
Mat<S> den_matrix(const HeckeConfig& cfg, const Vec<S>& ell)
{
    const int n = cfg.n();
    Mat<S> M(n, n);
    for (int i = 0; i < n; ++i)
        for (int a = 0; a < cfg.g; ++a)
            for (int al = 0; al < 3; ++al) M(i, 3 * a + al) = ipow(ell(i), al) * cfg.Omega(i, a);
    return M;
}

template <class S>
S den_det(const HeckeConfig& cfg, const Vec<S>& ell)
{
    return det_lu<S>(den_matrix<S>(cfg, ell));
}

inline cplx den_det(const HeckeConfig& cfg) { return den_det<cplx>(cfg, cfg.ell); }

// Literal signed sum over block-ordered permutations.
cplx den_sum(const HeckeConfig& cfg);

// Row replacement: row `row` becomes omega(.)(1, l, l^2) with the given
// omega vector and l value.
template <class S>
struct RowOverride {
    int row;
    CVec omega;
    S ell;
};

template <class S>
S den_rows(const HeckeConfig& cfg, const Vec<S>& ell, const std::vector<RowOverride<S>>& rows)
{
    Mat<S> M = den_matrix<S>(cfg, ell);
    for (const auto& r : rows)
        for (int a = 0; a < cfg.g; ++a)
            for (int al = 0; al < 3; ++al) M(r.row, 3 * a + al) = ipow(r.ell, al) * r.omega(a);
    return det_lu<S>(M);
}

template <class S>
struct DenCoefficients {
    S D0, D1, D2; // Den = D0 + D1 l_j + D2 l_j^2 in row j
};

// Row j replaced by omega(.)(1,0,0), (0,1,0), (0,0,1); omega at z when given.
template <class S>
DenCoefficients<S> den_coefficients(const HeckeConfig& cfg, const Vec<S>& ell, int j, const Located* z = nullptr)
{
    Mat<S> M = den_matrix<S>(cfg, ell);
    const CVec& om = z ? z->omega : cfg.P[j].omega;
    S D[3];
    for (int beta = 0; beta < 3; ++beta) {
        for (int a = 0; a < cfg.g; ++a)
            for (int al = 0; al < 3; ++al) M(j, 3 * a + al) = S(al == beta ? om(a) : cplx(0.0));
        D[beta] = det_lu<S>(M);
    }
    return {D[0], D[1], D[2]};
}

// Cofactors of M: D_beta for row j at any point w is sum_a omega_a(w) C(j, 3a+beta).
template <class S>
struct Cofactors {
    S den;
    Mat<S> C;

    DenCoefficients<S> at(int j, const CVec& omega) const
    {
        S D[3] = {S(0.0), S(0.0), S(0.0)};
        for (int beta = 0; beta < 3; ++beta)
            for (int a = 0; a < omega.size(); ++a) D[beta] = D[beta] + C(j, 3 * a + beta) * omega(a);
        return {D[0], D[1], D[2]};
    }
};

template <class S>
Cofactors<S> cofactors(const HeckeConfig& cfg, const Vec<S>& ell)
{
    Mat<S> M = den_matrix<S>(cfg, ell);
    Cofactors<S> c;
    c.den = det_lu<S>(M);
    Mat<S> inv = inverse_lu<S>(M);
    const int n = cfg.n();
    c.C.resize(n, n);
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) c.C(j, k) = c.den * inv(k, j);
    return c;
}

struct StabilityReport {
    int kernel_dim_phi = 0;
    double smallest_singular_value = 0.0;
    std::vector<CVec> kernel;
};
StabilityReport stability_check(const HeckeConfig& cfg);
CMat stability_matrix(const HeckeConfig& cfg);

struct RigidityReport {
    int kernel_dim = 0;
    int rank = 0;
    double smallest_singular_value = 0.0;
};
RigidityReport fiber_rigidity(const HeckeConfig& cfg);

struct Variation {
    CVec alpha1, beta1, delta_ell;
    CVec delta_ell_closed; // closed form in delta P, for cross-checking
};
Variation bundle_variation(const HeckeConfig& cfg, const CVec& deltaP);
// max residual of the three families, relative to |delta P| * max|omega|
double variation_residual(const HeckeConfig& cfg, const CVec& deltaP, const Variation& v);
// Orthogonal projection onto the kernel of [omega_a(P_i)].
CVec project_delta_p(const HeckeConfig& cfg, const CVec& raw);

} // namespace hecke
