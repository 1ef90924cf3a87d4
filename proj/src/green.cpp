#include "hecke/green.hpp"

namespace hecke {

KernelContext make_kernel_context(const PeriodData& pd, const SurfacePoint& p0)
{
    return make_kernel_context(pd, p0, pd.kappa0);
}

KernelContext make_kernel_context(const PeriodData& pd, const SurfacePoint& p0, const CVec& kappa0)
{
    KernelContext kc;
    kc.pd = &pd;
    kc.theta = make_theta_context(pd.tau);
    kc.kappa0 = kappa0;
    kc.P0 = locate(pd, p0);
    return kc;
}

cplx r_kernel(const KernelContext& kc, const Located& P, const Located& z)
{
    CVec gl = dlog_theta(kc.theta, P.A - z.A + kc.kappa0);
    return gl.cwiseProduct(P.omega).sum();
}

cplx omega_kernel(const KernelContext& kc, const Located& P, const Located& z) { return r_kernel(kc, z, P); }

cplx green_G(const KernelContext& kc, const Located& z, const Located& w)
{
    return omega_kernel(kc, w, z) - omega_kernel(kc, kc.P0, z);
}

namespace {

// d/dx_z of omega^{(w)}(z) = sum_a dlnTheta_a(A(z)-A(w)+k) omega_a(z)
cplx d_omega_dz(const KernelContext& kc, const Located& w, const Located& z)
{
    CVec arg = z.A - w.A + kc.kappa0;
    ThetaValue v = theta_eval(kc.theta, arg, 2);
    if (std::abs(v.value) < 1e-13) throw Error(ErrorCode::ThetaZero, "theta vanishes at kernel argument");
    CVec gl = v.grad / v.value;
    CMat h = v.hess / v.value - gl * gl.transpose();
    CVec dom = eval_omega_dx(*kc.pd, z.x, z.y);
    return (z.omega.transpose() * h * z.omega)(0, 0) + (gl.transpose() * dom)(0, 0);
}

} // namespace

cplx d_green_G_dz(const KernelContext& kc, const Located& z, const Located& w)
{
    return d_omega_dz(kc, w, z) - d_omega_dz(kc, kc.P0, z);
}

cplx d_green_G_dw(const KernelContext& kc, const Located& z, const Located& w)
{
    CMat h = d2log_theta(kc.theta, z.A - w.A + kc.kappa0);
    return -(z.omega.transpose() * h * w.omega)(0, 0);
}

} // namespace hecke
