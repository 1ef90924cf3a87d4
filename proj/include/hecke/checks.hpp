#pragma once
// Measurement routines shared by the report runner and the acceptance binary.
// Each returns raw numbers; thresholds live with the callers.

#include "hecke/hitchin.hpp"
#include "hecke/kzb.hpp"
#include "hecke/laurent.hpp"

#include <Eigen/Dense>
#include <memory>
#include <vector>

namespace hecke::checks {

// ---- sampling

CurveSpec random_curve(int g, Rng& rng);
// Points at least `sep` apart, at least `clear` from branch points and from `avoid`.
std::vector<SurfacePoint> random_points(const PeriodData& pd, int count, Rng& rng,
                                        const std::vector<cplx>& avoid = {}, double sep = 0.35, double clear = 0.3);
CVec random_ell(int n, Rng& rng);
Eigen::Matrix2cd random_unimodular(Rng& rng);

// A curve, P0 and a Hecke configuration. kc points into pd and cfg into kc,
// so samples live behind a unique_ptr.
struct Sample {
    PeriodData pd;
    KernelContext kc;
    HeckeConfig cfg;
    Sample() = default;
    Sample(const Sample&) = delete;
    Sample& operator=(const Sample&) = delete;
};
std::unique_ptr<Sample> make_sample(const CurveSpec& spec, const SurfacePoint& p0,
                                    const std::vector<SurfacePoint>& pts, const CVec& ell);
// Random g-curve, P0, points and l with Den nonzero.
std::unique_ptr<Sample> random_sample(int g, Rng& rng);

// ---- periods

double agm(double a, double b);
// tau of y^2 = (x-e1)(x-e2)(x-e3), e1 < e2 < e3 real, A around [e1,e2], Re tau < 0.
double real_cubic_tau(double e1, double e2, double e3);
struct TauShape {
    double asymmetry = 0.0;  // |tau - tau^T| / |tau|
    double max_re_eig = 0.0; // largest eigenvalue of Re tau (negative when definite)
};
TauShape tau_shape(const PeriodData& pd);

// ---- theta

struct ThetaIdentityErrors {
    double evenness = 0.0, periodicity = 0.0, quasi_periodicity = 0.0;
};
ThetaIdentityErrors theta_identities(const ThetaContext& ctx, int samples, Rng& rng);
// dTheta/dtau_ab against the lambda-Hessian, central differences in tau.
double theta_heat_error(const CMat& tau, int samples, Rng& rng, double h = 1e-5);

// ---- kernels

struct GreenErrors {
    double diag_residue = 0.0; // |res_{z=P} G(z,P) - 1|
    double p0_residue = 0.0;   // |res_{z=P0} G(z,P) + 1|
    double b_monodromy = 0.0;  // max_a |r(gamma_B z) - r(z) - omega_a(P)|
    double a_monodromy = 0.0;  // max_a |r(gamma_A z) - r(z)|
};
GreenErrors green_checks(const KernelContext& kc, const Located& P, const Located& z, double radius);
// An odd half-period other than kc.kappa0 with nonzero theta gradient.
CVec alternative_kappa(const KernelContext& kc);

// ---- Hecke map

double den_agreement(const HeckeConfig& cfg); // |det - sum| / |sum|
// Replace l_last by a root of the quadratic l -> Den so that Den = 0.
CVec den_zero_ell(const HeckeConfig& cfg);

// ---- Laurent helpers

// max_{n<0} |c_n| r^n / max_{n>=0} |c_n| r^n, per row then maximised.
double singular_ratio(const LaurentResult& L);

// ---- Hitchin

double hitchin_singular_ratio(const PhasePoint& pp, const Located& center, double radius);
double h_alt_mismatch(const PhasePoint& pp, const Located& z, bool literal = false);
double poisson_residual(const PhasePoint& pp, const Interpolator& ip); // max over pairs
double sl2_invariance(const PhasePoint& pp, const std::vector<Located>& fit, const std::vector<Located>& holdout,
                      const Eigen::Matrix2cd& g);

// ---- KZB

struct PoleLaw {
    cplx scalar_c2;       // c_{-2} of the zeroth-order part
    double operator_c2 = 0.0; // c_{-2} of the derivative parts, relative
    double singular = 0.0;    // all singular coefficients, relative
};
PoleLaw kzb_pole_law(const HeckeConfig& cfg, const Located& center, const KzbOptions& o, double radius);
// Singular part at P0 of T(z) applied to sl2-invariant functions (row sums k).
double kzb_p0_invariant_ratio(const HeckeConfig& cfg, const KzbOptions& o, double radius);
// Apply T(z) to F at cfg.ell: the 28-entry values() vector dotted with derivatives of F.
CVec derivative_weights(const HeckeConfig& cfg, const TestFunction& F);
// prod (l_i - l_j)^{m_ij} with row sums k; n = 6 only.
std::vector<TestFunction> invariant_functions(int k);
std::vector<TestFunction> monomial_functions(int n); // six monomials of degree <= 2
double symbol_mismatch(const PhasePoint& pp, const OperatorInterpolator& oip, const Interpolator& hip,
                       const KzbOptions& o, double scale);

// ---- variation

double variation_check(const HeckeConfig& cfg, Rng& rng, double* projection_residual = nullptr);

} // namespace hecke::checks
