#pragma once

// Kernels built from d ln Theta(A(z) - A(P) + kappa0). Values are
// dx-coefficients on the indicated slot.

#include "hecke/curve.hpp"
#include "hecke/theta.hpp"

namespace hecke {

struct KernelContext {
    const PeriodData* pd = nullptr;
    ThetaContext theta;
    CVec kappa0;
    Located P0;
};

KernelContext make_kernel_context(const PeriodData& pd, const SurfacePoint& p0);
KernelContext make_kernel_context(const PeriodData& pd, const SurfacePoint& p0, const CVec& kappa0);

// r^{(P)}(z) = d_P ln Theta(A(P) - A(z) + kappa0): differential in P,
// simple pole with residue 1 at P = z.
cplx r_kernel(const KernelContext& kc, const Located& P, const Located& z);
// omega^{(P)}(z) = r^{(z)}(P): differential in z, residue 1 at z = P.
cplx omega_kernel(const KernelContext& kc, const Located& P, const Located& z);
// G(z, w) = omega^{(w)}(z) - omega^{(P0)}(z): differential in z,
// residues +1 at w and -1 at P0.
cplx green_G(const KernelContext& kc, const Located& z, const Located& w);
// d/dx of G(z, w) in the first slot z.
cplx d_green_G_dz(const KernelContext& kc, const Located& z, const Located& w);
// d/dx of G(z, w) in the second slot w (the function slot).
cplx d_green_G_dw(const KernelContext& kc, const Located& z, const Located& w);

} // namespace hecke
