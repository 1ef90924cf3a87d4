#pragma once

// Higgs field A(z), the quadratic differential H = tr A^2 and its
// coefficients H_alpha in the basis x^j dx^2 / y^2.

#include <functional>

#include "hecke/hecke_map.hpp"
#include "hecke/sl2.hpp"

namespace hecke {

struct PhasePoint {
    HeckeConfig cfg; // carries l
    CVec lambda;     // constrained: sum_i lambda_i R(l_i) = 0
};

// lambda drawn from the kernel of the 3 x 3g matrix [l_i^alpha].
PhasePoint sample_phase_point(const HeckeConfig& cfg, Rng& rng);
SL2Vector<cplx> moment(const PhasePoint& pp);

// Kernel values at an evaluation point z.
struct ZData {
    Located z;
    CVec wz; // wz(i) = omega^{(P_i)}(z)
};
ZData z_data(const HeckeConfig& cfg, const Located& z);

template <class S>
SL2Vector<S> higgs_A(const HeckeConfig& cfg, const Vec<S>& ell, const Vec<S>& lam, const ZData& zd,
                     const Cofactors<S>& cof)
{
    const int n = cfg.n();
    SL2Vector<S> A;
    for (int i = 0; i < n; ++i) A += (lam(i) * zd.wz(i)) * residue_direction<S>(ell(i));
    S inv_den = S(1.0) / cof.den;
    for (int j = 0; j < n; ++j) {
        S c = S(0.0);
        for (int i = 0; i < n; ++i)
            if (i != j) {
                S lij = ell(i) - ell(j);
                c = c + lam(i) * lij * lij * cfg.W(i, j);
            }
        auto D = cof.at(j, zd.z.omega);
        SL2Vector<S> B{D.D2, S(0.5) * D.D1, -D.D0};
        A += (c * inv_den) * B;
    }
    return A;
}

SL2Vector<cplx> higgs_A(const PhasePoint& pp, const ZData& zd);
cplx hitchin_H(const PhasePoint& pp, const ZData& zd);

// Reduced form of tr A^2 via the determinants nu_kj(z). The default uses the
// coefficients that reproduce tr A^2; literal = true uses (1, -1/2).
cplx hitchin_H_alt(const PhasePoint& pp, const ZData& zd, bool literal = false);

// (-l_i^2 A_e - 2 l_i A_h + A_f)(z) = -<R(l_i), A(z)>
cplx residue_line_combination(const PhasePoint& pp, int i, const ZData& zd);

// Quadratic differential basis x^j / y^2, j = 0..3g-4.
CVec quad_basis(const PeriodData& pd, const Located& z);

// Generic evaluation points away from branch points, P_i and P0.
std::vector<Located> generic_points(const HeckeConfig& cfg, int count, Rng& rng, double margin = 0.12);

struct Interpolator {
    std::vector<ZData> fit, holdout;
    CMat weights; // (3g-3) x fit: H_alpha = weights * values
    CMat holdout_basis;
    double condition = 0.0;
};
Interpolator make_interpolator(const HeckeConfig& cfg, const std::vector<Located>& fit,
                               const std::vector<Located>& holdout);

template <class S>
S hitchin_H_generic(const HeckeConfig& cfg, const Vec<S>& ell, const Vec<S>& lam, const ZData& zd,
                    const Cofactors<S>& cof)
{
    auto A = higgs_A<S>(cfg, ell, lam, zd, cof);
    return pairing(A, A);
}

struct HamiltonianFit {
    CVec H;               // H_alpha
    double holdout_residual = 0.0;
};
// Throws InconsistentFit if the held-out residual exceeds tol.
HamiltonianFit extract_hamiltonians(const PhasePoint& pp, const Interpolator& ip, double tol = 1e-6);

// Moebius action l -> (a l + b)/(c l + d) with the cotangent lift on lambda.
PhasePoint sl2_action(const Eigen::Matrix2cd& g, const PhasePoint& pp);

// Observables as functions of (l, lambda) jets in 2*3g variables, order 1.
using Observable = std::function<Jet(const HeckeConfig&, const Vec<Jet>& ell, const Vec<Jet>& lam)>;
Observable hamiltonian_observable(const Interpolator& ip, int alpha);
// {F, G} = sum_i dF/dlambda_i dG/dl_i - dF/dl_i dG/dlambda_i at pp.
cplx poisson_bracket(const PhasePoint& pp, const Observable& F, const Observable& G, double* scale = nullptr);

} // namespace hecke
