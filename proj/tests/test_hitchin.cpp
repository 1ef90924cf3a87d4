#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "fixtures.hpp"

using namespace hecke;

TEST_CASE("sampled lambda satisfies the moment constraint")
{
    auto s = fixtures::g2_sample();
    Rng rng(1);
    PhasePoint pp = sample_phase_point(s->cfg, rng);
    SL2Vector<cplx> m = moment(pp);
    CHECK(std::abs(m.e) + std::abs(m.h) + std::abs(m.f) < 1e-12 * pp.lambda.norm());
}

TEST_CASE("sl2 pairing and bracket")
{
    SL2Vector<cplx> e{1.0, 0.0, 0.0}, h{0.0, 1.0, 0.0}, f{0.0, 0.0, 1.0};
    CHECK(std::abs(pairing(e, f) - 1.0) == 0.0);
    CHECK(std::abs(pairing(h, h) - 2.0) == 0.0);
    SL2Vector<cplx> he = lie_bracket(h, e), ef = lie_bracket(e, f);
    CHECK(std::abs(he.e - 2.0) == 0.0);
    CHECK(std::abs(ef.h - 1.0) == 0.0);
    // R(l) is nilpotent: <R, R> = 0
    SL2Vector<cplx> R = residue_direction<cplx>(cplx(0.3, 0.4));
    CHECK(std::abs(pairing(R, R)) < 1e-15);
}

TEST_CASE("H is regular at the marked points and at P0")
{
    auto s = fixtures::g2_sample();
    Rng rng(2);
    PhasePoint pp = sample_phase_point(s->cfg, rng);
    for (const Located& c : s->cfg.P) CHECK(checks::hitchin_singular_ratio(pp, c, 0.08) < 1e-7);
    CHECK(checks::hitchin_singular_ratio(pp, s->kc.P0, 0.08) < 1e-7);
}

TEST_CASE("residue of A at P_i lies along R(l_i)")
{
    auto s = fixtures::g2_sample();
    Rng rng(3);
    PhasePoint pp = sample_phase_point(s->cfg, rng);
    for (int i : {0, 5}) {
        const Located& c = s->cfg.P[i];
        // (-l_i^2 A_e - 2 l_i A_h + A_f) has no pole at P_i
        LaurentResult L = laurent_probe(
            [&](cplx x) {
                CVec v(1);
                v(0) = residue_line_combination(pp, i, z_data(s->cfg, locate_near(s->pd, c, x)));
                return v;
            },
            c.x, 0.08, -2, 2);
        CHECK(checks::singular_ratio(L) < 1e-8);
    }
}

TEST_CASE("both expressions of H agree; the literal coefficients do not")
{
    auto s = fixtures::g2_sample();
    Rng rng(4);
    PhasePoint pp = sample_phase_point(s->cfg, rng);
    double lit = 0.0;
    for (const Located& z : generic_points(s->cfg, 5, rng)) {
        CHECK(checks::h_alt_mismatch(pp, z) < 1e-8);
        lit = std::max(lit, checks::h_alt_mismatch(pp, z, true));
    }
    CHECK(lit > 1e-3);
}

TEST_CASE("Hamiltonians Poisson-commute and are SL2-invariant")
{
    auto s = fixtures::g2_sample();
    Rng rng(5);
    auto zs = generic_points(s->cfg, 6, rng);
    std::vector<Located> fit{zs[0], zs[1], zs[2]}, hold{zs[3], zs[4], zs[5]};
    Interpolator ip = make_interpolator(s->cfg, fit, hold);
    PhasePoint pp = sample_phase_point(s->cfg, rng);
    HamiltonianFit hf = extract_hamiltonians(pp, ip);
    CHECK(hf.holdout_residual < 1e-10);
    CHECK(checks::poisson_residual(pp, ip) < 1e-7);
    CHECK(checks::sl2_invariance(pp, fit, hold, checks::random_unimodular(rng)) < 1e-7);

    // a non-commuting pair for contrast: H_0 against l_1
    Observable H0 = hamiltonian_observable(ip, 0);
    Observable l1 = [](const HeckeConfig&, const Vec<Jet>& ell, const Vec<Jet>&) { return ell(0); };
    CHECK(std::abs(poisson_bracket(pp, H0, l1)) > 1e-6);
}
