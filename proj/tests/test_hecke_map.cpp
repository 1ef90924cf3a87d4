#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "fixtures.hpp"

using namespace hecke;

TEST_CASE("Den as a determinant and as a signed sum")
{
    auto s = fixtures::g2_sample();
    CHECK(checks::den_agreement(s->cfg) < 1e-9);
    CHECK(s->cfg.den_nonzero);
    Rng rng(3);
    for (int k = 0; k < 3; ++k) CHECK(checks::den_agreement(checks::random_sample(2, rng)->cfg) < 1e-9);
}

TEST_CASE("Den is quadratic in each l_j")
{
    auto s = fixtures::g2_sample();
    const HeckeConfig& cfg = s->cfg;
    for (int j : {0, 4}) {
        auto D = den_coefficients<cplx>(cfg, cfg.ell, j);
        cplx l = cfg.ell(j);
        CHECK(std::abs(D.D0 + D.D1 * l + D.D2 * l * l - cfg.den) < 1e-12 * cfg.den_scale);
        Cofactors<cplx> cof = cofactors<cplx>(cfg, cfg.ell);
        auto E = cof.at(j, cfg.P[j].omega);
        CHECK(std::abs(E.D0 - D.D0) + std::abs(E.D1 - D.D1) + std::abs(E.D2 - D.D2) < 1e-11 * cfg.den_scale);
    }
}

TEST_CASE("gradient of Den in l against finite differences")
{
    auto s = fixtures::g2_sample();
    const HeckeConfig& cfg = s->cfg;
    Vec<Jet> lj(6);
    for (int i = 0; i < 6; ++i) lj(i) = Jet::variable(6, 1, i, cfg.ell(i));
    Jet d = den_det<Jet>(cfg, lj);
    const double h = 1e-6;
    for (int i = 0; i < 6; ++i) {
        CVec p = cfg.ell, m = cfg.ell;
        p(i) += h;
        m(i) -= h;
        cplx fd = (den_det<cplx>(cfg, p) - den_det<cplx>(cfg, m)) / (2 * h);
        CHECK(std::abs(d.d(i) - fd) < 1e-7 * cfg.den_scale);
    }
}

TEST_CASE("kernels vanish for generic configurations")
{
    auto s = fixtures::g2_sample();
    CHECK(stability_check(s->cfg).kernel_dim_phi == 0);
    RigidityReport r = fiber_rigidity(s->cfg);
    CHECK(r.kernel_dim == 0);
    CHECK(r.rank == 6);
}

TEST_CASE("Den = 0 configurations")
{
    auto s = fixtures::g2_sample();
    HeckeConfig z = with_ell(s->cfg, checks::den_zero_ell(s->cfg));
    CHECK_FALSE(z.den_nonzero);
    CHECK(fiber_rigidity(z).kernel_dim >= 1);

    CVec l = s->cfg.ell;
    for (int i = 1; i < 6; ++i) l(i) = l(0);
    HeckeConfig c = with_ell(s->cfg, l);
    CHECK(stability_check(c).kernel_dim_phi >= 1);
    CHECK(fiber_rigidity(c).kernel_dim >= 1);
    try {
        require_den_nonzero(c);
        FAIL("expected DenZero");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::DenZero);
        CHECK(std::string(e.what()).find("(1,2)") != std::string::npos);
    }
}

TEST_CASE("projection onto admissible displacements")
{
    auto s = fixtures::g2_sample();
    const HeckeConfig& cfg = s->cfg;
    CVec raw(6);
    raw << cplx(0.1, 0.02), cplx(-0.03, 0.05), cplx(0.07, -0.01), cplx(0.0, 0.04), cplx(-0.06, 0.0), cplx(0.02, 0.08);
    CVec p = project_delta_p(cfg, raw);
    CHECK((cfg.Omega.transpose() * p).norm() < 1e-12 * raw.norm());
    CHECK((project_delta_p(cfg, p) - p).norm() < 1e-12 * raw.norm());
    CHECK_THROWS_AS(bundle_variation(cfg, raw), Error);
    Variation v = bundle_variation(cfg, p);
    CHECK(variation_residual(cfg, p, v) < 1e-8);
    Rng rng(5);
    CHECK(checks::variation_check(cfg, rng) < 1e-8);
}

TEST_CASE("configuration validation")
{
    auto s = fixtures::g2_sample();
    std::vector<Located> pts = s->cfg.P;
    pts[1] = pts[0];
    CHECK_THROWS_AS(make_config(s->kc, pts, s->cfg.ell), Error);
    CVec l = s->cfg.ell;
    l(2) = 0.0;
    CHECK_THROWS_AS(make_config(s->kc, s->cfg.P, l), Error);
}
