#pragma once

// Riemann theta with the convention
//   Theta(lambda) = sum_m exp(m.tau.m / 2 + m.lambda),  Re tau < 0,
// so Theta(lambda + 2 pi i e_a) = Theta(lambda) and
//   Theta(lambda + tau e_a) = exp(-tau_aa/2 - lambda_a) Theta(lambda).

#include "hecke/linalg.hpp"

namespace hecke {

struct ThetaContext {
    CMat tau;
    int g = 0;
    int radius = 0;          // box half-width around the saddle
    double mu_min = 0.0;     // smallest eigenvalue of -Re tau
    double mu_max = 0.0;
    double tail_bound = 0.0; // relative to the dominant term
    Eigen::MatrixXd re_tau_inv;
};

ThetaContext make_theta_context(const CMat& tau, double target = 1e-17, int max_radius = 80);

// Values scaled by exp(-log_scale); order 0, 1 or 2 selects what is filled.
struct ThetaValue {
    double log_scale = 0.0;
    cplx value;
    CVec grad;
    CMat hess;
};

ThetaValue theta_eval(const ThetaContext& ctx, const CVec& lam, int order = 0);

cplx theta(const ThetaContext& ctx, const CVec& lam);
CVec theta_grad(const ThetaContext& ctx, const CVec& lam);
CMat theta_hess(const ThetaContext& ctx, const CVec& lam);

// Gradient and Hessian of ln Theta. Throws ThetaZero when the scaled value
// is below zero_tol.
CVec dlog_theta(const ThetaContext& ctx, const CVec& lam, double zero_tol = 1e-13);
CMat d2log_theta(const ThetaContext& ctx, const CVec& lam, double zero_tol = 1e-13);

// 2 pi i a + tau b with a, b in {0, 1/2}^g given as bit masks.
CVec half_period(const ThetaContext& ctx, unsigned a_bits, unsigned b_bits);
bool is_odd_characteristic(unsigned a_bits, unsigned b_bits);

// First odd half-period (lexicographic in (b, a)) with nonzero gradient.
CVec select_kappa0(const ThetaContext& ctx, unsigned* a_bits = nullptr, unsigned* b_bits = nullptr);

} // namespace hecke
