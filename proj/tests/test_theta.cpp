#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "fixtures.hpp"

using namespace hecke;

TEST_CASE("genus 1 theta against a direct sum")
{
    CMat tau(1, 1);
    tau(0, 0) = cplx(-2 * M_PI, 0.7);
    ThetaContext ctx = make_theta_context(tau);
    for (cplx l : {cplx(0.3, 0.2), cplx(-1.1, 2.5), cplx(2.0, -0.4)}) {
        cplx direct = 0.0;
        for (int m = -40; m <= 40; ++m) direct += std::exp(0.5 * tau(0, 0) * double(m * m) + double(m) * l);
        CVec lam(1);
        lam(0) = l;
        CHECK(std::abs(theta(ctx, lam) - direct) < 1e-13 * std::abs(direct));
    }
}

TEST_CASE("theta identities on a genus 2 period matrix")
{
    PeriodData pd = compute_periods(fixtures::g2_curve());
    ThetaContext ctx = make_theta_context(pd.tau);
    Rng rng(11);
    checks::ThetaIdentityErrors e = checks::theta_identities(ctx, 20, rng);
    CHECK(e.evenness < 1e-11);
    CHECK(e.periodicity < 1e-11);
    CHECK(e.quasi_periodicity < 1e-11);
    CHECK(checks::theta_heat_error(pd.tau, 3, rng) < 1e-6);
}

TEST_CASE("gradient and Hessian against finite differences")
{
    PeriodData pd = compute_periods(fixtures::g2_curve());
    ThetaContext ctx = make_theta_context(pd.tau);
    CVec lam(2);
    lam << cplx(0.4, -0.3), cplx(-0.2, 1.1);
    CVec gr = theta_grad(ctx, lam);
    CMat he = theta_hess(ctx, lam);
    const double h = 1e-5;
    for (int a = 0; a < 2; ++a) {
        CVec p = lam, m = lam;
        p(a) += h;
        m(a) -= h;
        CHECK(std::abs((theta(ctx, p) - theta(ctx, m)) / (2 * h) - gr(a)) < 1e-8 * gr.norm());
        CVec dg = (theta_grad(ctx, p) - theta_grad(ctx, m)) / (2 * h);
        for (int b = 0; b < 2; ++b) CHECK(std::abs(dg(b) - he(b, a)) < 1e-7 * he.norm());
    }
}

TEST_CASE("odd half-periods are zeros of theta")
{
    PeriodData pd = compute_periods(fixtures::g2_curve());
    ThetaContext ctx = make_theta_context(pd.tau);
    int odd = 0;
    for (unsigned a = 0; a < 4; ++a)
        for (unsigned b = 0; b < 4; ++b) {
            if (!is_odd_characteristic(a, b)) continue;
            ++odd;
            ThetaValue v = theta_eval(ctx, half_period(ctx, a, b));
            CHECK(std::abs(v.value) < 1e-12);
        }
    CHECK(odd == 6);
    CVec k0 = select_kappa0(ctx);
    CHECK(std::abs(theta(ctx, k0)) < 1e-12 * theta_grad(ctx, k0).norm());
    CHECK(theta_grad(ctx, k0).norm() > 1e-6);
}
