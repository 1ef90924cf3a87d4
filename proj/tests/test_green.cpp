#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "fixtures.hpp"

using namespace hecke;

TEST_CASE("residues and monodromy of the kernels")
{
    auto s = fixtures::g2_sample();
    const auto& P = s->cfg.P;
    for (int i : {0, 3}) {
        checks::GreenErrors e = checks::green_checks(s->kc, P[i], P[(i + 2) % 6], 0.08);
        CHECK(e.diag_residue < 1e-8);
        CHECK(e.p0_residue < 1e-8);
        CHECK(e.b_monodromy < 1e-8);
        CHECK(e.a_monodromy < 1e-8);
    }
}

TEST_CASE("another odd half-period gives the same residues")
{
    auto s = fixtures::g2_sample();
    KernelContext alt = make_kernel_context(s->pd, {{0.4, 1.3}, 1}, checks::alternative_kappa(s->kc));
    CHECK((alt.kappa0 - s->kc.kappa0).norm() > 1e-3);
    checks::GreenErrors e = checks::green_checks(alt, s->cfg.P[1], s->cfg.P[4], 0.08);
    CHECK(std::max({e.diag_residue, e.p0_residue, e.b_monodromy, e.a_monodromy}) < 1e-8);
}

TEST_CASE("slot conventions")
{
    auto s = fixtures::g2_sample();
    const Located &a = s->cfg.P[0], &b = s->cfg.P[1];
    CHECK(std::abs(omega_kernel(s->kc, a, b) - r_kernel(s->kc, b, a)) == 0.0);
    // G(z, P0) vanishes identically
    CHECK(std::abs(green_G(s->kc, b, s->kc.P0)) < 1e-14);
    CHECK(std::abs(s->cfg.Gpp(0, 1) - (r_kernel(s->kc, a, b) - r_kernel(s->kc, a, s->kc.P0))) < 1e-13);
}

TEST_CASE("derivatives of G against finite differences")
{
    auto s = fixtures::g2_sample();
    const PeriodData& pd = s->pd;
    Located z = s->cfg.P[2], w = s->cfg.P[4];
    const double h = 1e-5;
    Located zp = locate_near(pd, z, z.x + h), zm = locate_near(pd, z, z.x - h);
    cplx fdz = (green_G(s->kc, zp, w) - green_G(s->kc, zm, w)) / (2 * h);
    CHECK(std::abs(fdz - d_green_G_dz(s->kc, z, w)) < 1e-7 * std::abs(fdz));
    Located wp = locate_near(pd, w, w.x + h), wm = locate_near(pd, w, w.x - h);
    cplx fdw = (green_G(s->kc, z, wp) - green_G(s->kc, z, wm)) / (2 * h);
    CHECK(std::abs(fdw - d_green_G_dw(s->kc, z, w)) < 1e-7 * std::abs(fdw));
}
