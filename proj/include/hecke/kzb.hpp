#pragma once

// Differential operators in l with coefficients depending on z. All l
// dependence is carried by jets; kernel values at fixed points are constants.

#include <functional>

#include "hecke/hitchin.hpp"

namespace hecke {

// Numerator of the rational part in sl2 components, as a function of the
// l-Taylor coefficients D0, D1, D2 of Den with P_j -> z.
enum class Bracket {
    Consistent, // (D2, D1/2, -D0), same as the Higgs field
    Variant,    // (-2 D2, D1/2, D0/2), kept for comparison
};

template <class S>
SL2Vector<S> bracket_vector(const DenCoefficients<S>& D, Bracket b)
{
    if (b == Bracket::Variant) return {S(-2.0) * D.D2, S(0.5) * D.D1, S(0.5) * D.D0};
    return {D.D2, S(0.5) * D.D1, -D.D0};
}

// Sum_i d_i d/dl_i + c
struct FirstOrderOp {
    std::vector<Jet> d;
    Jet c;
    Jet apply(const Jet& F) const;
};

struct SL2Operator {
    FirstOrderOp e, h, f;
};

// Sum_{i,j} c2(i,j) d_i d_j + sum_i c1(i) d_i + c0
struct DiffOperator {
    int n = 0;
    std::vector<Jet> c2; // row-major n x n
    std::vector<Jet> c1;
    Jet c0;

    Jet& second(int i, int j) { return c2[i * n + j]; }
    const Jet& second(int i, int j) const { return c2[i * n + j]; }
    Jet apply(const Jet& F) const;
    // Symmetrized values: c2 upper triangle (i <= j), c1, c0.
    CVec values() const;
    static DiffOperator zero(int n);
};

DiffOperator compose(const FirstOrderOp& P, const FirstOrderOp& Q);
DiffOperator& accumulate(DiffOperator& acc, const DiffOperator& t, cplx w = 1.0);

// Kernel values needed at an evaluation point z (independent of l).
struct KzbZData {
    Located z;
    CVec Gz;   // G(z, P_i)
    CVec Gpz;  // G(P_i, z) dP_i
    CVec dGpz; // d/dz of G(P_i, z) dP_i
};
KzbZData kzb_z_data(const HeckeConfig& cfg, const Located& z);

struct KzbOptions {
    double k = -2.0;
    Bracket bracket = Bracket::Consistent;
};

// l as jets in 3g variables of the given order around cfg.ell.
Vec<Jet> ell_jets(const HeckeConfig& cfg, int order);

SL2Vector<Jet> coeff_a(const HeckeConfig& cfg, const Vec<Jet>& ell, const Cofactors<Jet>& cof, const KzbZData& zd,
                       const KzbOptions& o);
Jet coeff_s(const HeckeConfig& cfg, const Vec<Jet>& ell, const Cofactors<Jet>& cof, const KzbZData& zd,
            const KzbOptions& o);
SL2Vector<Jet> coeff_mu(const HeckeConfig& cfg, const Vec<Jet>& ell, const Cofactors<Jet>& cof, int i,
                        const KzbZData& zd, const KzbOptions& o);
SL2Vector<Jet> coeff_nu(const HeckeConfig& cfg, const Vec<Jet>& ell, const Cofactors<Jet>& cof, const KzbZData& zd,
                        const KzbOptions& o);

// l^diff(z) = sum_i mu_i d_i - k nu, coefficients as jets of the given order.
SL2Operator ell_diff(const HeckeConfig& cfg, const KzbZData& zd, const KzbOptions& o, int order);
// T^diff(z) = <l^diff, l^diff> + <a, l^diff> + s; coefficient jets of order
// `order` for c2 and order-1 for c1, c0.
DiffOperator t_diff(const HeckeConfig& cfg, const KzbZData& zd, const KzbOptions& o, int order);

// Quadratic differentials with poles only at P0 (orders 1 and 2), dx^2-coefficients.
CVec p0_quad_basis(const HeckeConfig& cfg, const Located& z);

struct OperatorInterpolator {
    std::vector<KzbZData> fit, holdout;
    CMat weights;        // rows: 3g-3 holomorphic components then the two P0 parts
    CMat holdout_basis;  // full (3g-1)-column basis at held-out points
    double condition = 0.0;
};
// 3g-1 fit points: holomorphic basis plus the two P0 quadratic differentials.
OperatorInterpolator make_operator_interpolator(const HeckeConfig& cfg, const std::vector<Located>& fit,
                                                const std::vector<Located>& holdout);

struct TAlphaResult {
    std::vector<DiffOperator> T;   // 3g-3 operators
    double holdout_residual = 0.0; // max over coefficients, relative
};
TAlphaResult t_diff_alpha(const HeckeConfig& cfg, const OperatorInterpolator& ip, const KzbOptions& o, int order);

using TestFunction = std::function<Jet(const Vec<Jet>& ell)>;

// prod_{i<j} l_ij^{m_ij}; symmetric integer exponents.
TestFunction product_test_function(const std::vector<std::vector<int>>& m);
TestFunction monomial_test_function(const std::vector<int>& powers);

struct CommutatorResult {
    double max_residual = 0.0;
    double max_scale = 0.0;
    std::vector<double> residuals;
};
// Relative |[T_alpha, T_beta] F| over test functions and l-points.
CommutatorResult commutator_check(const HeckeConfig& cfg, const OperatorInterpolator& ip, int alpha, int beta,
                                  const std::vector<TestFunction>& fs, const std::vector<CVec>& ell_points,
                                  const KzbOptions& o);

// Operator form of the dependence on P_i (construction only).
struct LambdaOperator {
    std::vector<Jet> shifted; // coefficient of (d_j - k / l_j)
    Jet scalar;
    SL2Vector<Jet> sl2;       // zeroth-order sl2-valued part
    Jet apply_scalar(const Jet& F, const Vec<Jet>& ell, double k) const;
};
LambdaOperator lambda_operator(const HeckeConfig& cfg, int i, double k, int order);

} // namespace hecke
