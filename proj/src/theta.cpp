#include "hecke/theta.hpp"

#include <Eigen/Eigenvalues>
#include <bit>
#include <cmath>

namespace hecke {

namespace {

double tail_estimate(int g, int R, double mu_min, double mu_max)
{
    double off = 0.125 * mu_max * g; // saddle vs rounded center
    double s = 0.0;
    for (int r = R + 1; r <= R + 60; ++r) {
        double pts = 2.0 * g * std::pow(2.0 * r + 1.0, g - 1);
        double d = r - 0.5 * std::sqrt(double(g));
        s += pts * (r + 10.0) * (r + 10.0) * std::exp(off - 0.5 * mu_min * d * d);
    }
    return s;
}

} // namespace

ThetaContext make_theta_context(const CMat& tau, double target, int max_radius)
{
    ThetaContext c;
    c.tau = tau;
    c.g = static_cast<int>(tau.rows());
    Eigen::MatrixXd nr = -tau.real();
    nr = 0.5 * (nr + nr.transpose()).eval();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(nr);
    c.mu_min = es.eigenvalues().minCoeff();
    c.mu_max = es.eigenvalues().maxCoeff();
    if (!(c.mu_min > 0.0)) throw Error(ErrorCode::SingularPeriods, "Re tau is not negative definite");
    c.re_tau_inv = tau.real().inverse();
    for (int R = 1; R <= max_radius; ++R) {
        double t = tail_estimate(c.g, R, c.mu_min, c.mu_max);
        if (t < target) {
            c.radius = R;
            c.tail_bound = t;
            return c;
        }
    }
    throw Error(ErrorCode::NoConvergence, "theta truncation radius exceeds limit");
}

ThetaValue theta_eval(const ThetaContext& ctx, const CVec& lam, int order)
{
    const int g = ctx.g;
    const int R = ctx.radius;
    Eigen::VectorXd mstar = -ctx.re_tau_inv * lam.real();
    Eigen::VectorXi c(g);
    for (int a = 0; a < g; ++a) c(a) = static_cast<int>(std::lround(mstar(a)));
    auto expo = [&](const Eigen::VectorXd& m) {
        CVec mc = m.cast<cplx>();
        return cplx(0.5) * mc.dot(ctx.tau * mc) + mc.dot(lam);
    };
    // dot() conjugates its first argument; m is real so that is harmless.
    ThetaValue out;
    out.log_scale = expo(c.cast<double>()).real();
    out.value = 0.0;
    if (order >= 1) out.grad = CVec::Zero(g);
    if (order >= 2) out.hess = CMat::Zero(g, g);
    Eigen::VectorXi d = Eigen::VectorXi::Constant(g, -R);
    Eigen::VectorXd m(g);
    for (;;) {
        for (int a = 0; a < g; ++a) m(a) = c(a) + d(a);
        cplx t = std::exp(expo(m) - out.log_scale);
        out.value += t;
        if (order >= 1) {
            for (int a = 0; a < g; ++a) out.grad(a) += m(a) * t;
            if (order >= 2)
                for (int a = 0; a < g; ++a)
                    for (int b = 0; b < g; ++b) out.hess(a, b) += m(a) * m(b) * t;
        }
        int k = 0;
        while (k < g && d(k) == R) d(k++) = -R;
        if (k == g) break;
        ++d(k);
    }
    return out;
}

cplx theta(const ThetaContext& ctx, const CVec& lam)
{
    ThetaValue v = theta_eval(ctx, lam, 0);
    return std::exp(v.log_scale) * v.value;
}

CVec theta_grad(const ThetaContext& ctx, const CVec& lam)
{
    ThetaValue v = theta_eval(ctx, lam, 1);
    return std::exp(v.log_scale) * v.grad;
}

CMat theta_hess(const ThetaContext& ctx, const CVec& lam)
{
    ThetaValue v = theta_eval(ctx, lam, 2);
    return std::exp(v.log_scale) * v.hess;
}

CVec dlog_theta(const ThetaContext& ctx, const CVec& lam, double zero_tol)
{
    ThetaValue v = theta_eval(ctx, lam, 1);
    if (std::abs(v.value) < zero_tol) throw Error(ErrorCode::ThetaZero, "theta vanishes at kernel argument");
    return v.grad / v.value;
}

CMat d2log_theta(const ThetaContext& ctx, const CVec& lam, double zero_tol)
{
    ThetaValue v = theta_eval(ctx, lam, 2);
    if (std::abs(v.value) < zero_tol) throw Error(ErrorCode::ThetaZero, "theta vanishes at kernel argument");
    CVec gl = v.grad / v.value;
    return v.hess / v.value - gl * gl.transpose();
}

CVec half_period(const ThetaContext& ctx, unsigned a_bits, unsigned b_bits)
{
    CVec a(ctx.g), b(ctx.g);
    for (int i = 0; i < ctx.g; ++i) {
        a(i) = (a_bits >> i) & 1u ? 0.5 : 0.0;
        b(i) = (b_bits >> i) & 1u ? 0.5 : 0.0;
    }
    return cplx(0.0, 2.0 * M_PI) * a + ctx.tau * b;
}

bool is_odd_characteristic(unsigned a_bits, unsigned b_bits) { return std::popcount(a_bits & b_bits) % 2 == 1; }

CVec select_kappa0(const ThetaContext& ctx, unsigned* a_out, unsigned* b_out)
{
    const unsigned n = 1u << ctx.g;
    for (unsigned b = 0; b < n; ++b)
        for (unsigned a = 0; a < n; ++a) {
            if (!is_odd_characteristic(a, b)) continue;
            CVec k = half_period(ctx, a, b);
            ThetaValue v = theta_eval(ctx, k, 1);
            if (std::abs(v.value) > 1e-10) continue; // odd, so this is a rounding guard
            if (v.grad.norm() < 1e-6) continue;
            if (a_out) *a_out = a;
            if (b_out) *b_out = b;
            return k;
        }
    throw Error(ErrorCode::UnsupportedConfiguration, "no odd half-period with nonzero gradient");
}

} // namespace hecke
