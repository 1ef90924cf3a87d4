#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "fixtures.hpp"

using namespace hecke;

TEST_CASE("composition of first-order operators")
{
    // P = l^2 d + l, Q = l d + 3; compare P(Q F) with (P o Q) F for F = l^5
    const int ord = 6;
    Jet l = Jet::variable(1, ord, 0, cplx(0.7, 0.2));
    FirstOrderOp P{{l * l}, l}, Q{{l}, Jet::constant(1, ord, 3.0)};
    Jet F = pow(l, 5);
    DiffOperator PQ = compose(P, Q);
    CHECK(std::abs(PQ.apply(F).value() - P.apply(Q.apply(F)).value()) < 1e-12);
    // the P.d * Q.c term: (l^2 d)(3 F) contributes 3 l^2 F'
    FirstOrderOp D{{l * l}, Jet::constant(1, ord, 0.0)}, C{{Jet::constant(1, ord, 0.0)}, Jet::constant(1, ord, 3.0)};
    CHECK(std::abs(compose(D, C).apply(F).value() - 3.0 * (l * l).value() * 5.0 * std::pow(l.value(), 4)) < 1e-12);
}

TEST_CASE("double pole at P_i is k(k+2)/2")
{
    auto s = fixtures::g2_sample();
    for (double k : {1.0, 2.0}) {
        checks::PoleLaw p = checks::kzb_pole_law(s->cfg, s->cfg.P[2], KzbOptions{k}, 0.08);
        CHECK(std::abs(p.scalar_c2 - k * (k + 2.0) / 2.0) < 1e-6);
        CHECK(p.operator_c2 < 1e-6);
    }
}

TEST_CASE("critical level: no poles at P_i, none at P0 on invariant functions")
{
    auto s = fixtures::g2_sample();
    KzbOptions crit{-2.0};
    for (int i : {0, 3}) CHECK(checks::kzb_pole_law(s->cfg, s->cfg.P[i], crit, 0.08).singular < 1e-6);
    CHECK(checks::kzb_p0_invariant_ratio(s->cfg, crit, 0.08) < 1e-6);
    // away from the critical level the simple poles remain
    CHECK(checks::kzb_pole_law(s->cfg, s->cfg.P[0], KzbOptions{1.0}, 0.08).singular > 1e-3);
}

TEST_CASE("operators commute at the critical level only")
{
    auto s = fixtures::g2_sample();
    const HeckeConfig& cfg = s->cfg;
    Rng rng(9);
    auto zs = generic_points(cfg, 8, rng);
    OperatorInterpolator ip = make_operator_interpolator(cfg, {zs[0], zs[1], zs[2], zs[3], zs[4]}, {zs[5], zs[6], zs[7]});
    std::vector<CVec> ells{cfg.ell};
    auto mono = checks::monomial_functions(6);
    auto inv = checks::invariant_functions(-2);
    CHECK(mono.size() == 6);
    CHECK(inv.size() == 4);
    double crit = 0.0, off = 0.0;
    for (int a = 0; a < 3; ++a)
        for (int b = a + 1; b < 3; ++b) {
            crit = std::max(crit, commutator_check(cfg, ip, a, b, mono, ells, KzbOptions{-2.0}).max_residual);
            crit = std::max(crit, commutator_check(cfg, ip, a, b, inv, ells, KzbOptions{-2.0}).max_residual);
            off = std::max(off, commutator_check(cfg, ip, a, b, mono, ells, KzbOptions{0.0}).max_residual);
        }
    CHECK(crit < 1e-5);
    CHECK(off > 1e-3);
}

TEST_CASE("principal symbol equals the classical Hamiltonian")
{
    auto s = fixtures::g2_sample();
    const HeckeConfig& cfg = s->cfg;
    Rng rng(10);
    auto zs = generic_points(cfg, 8, rng);
    OperatorInterpolator oip = make_operator_interpolator(cfg, {zs[0], zs[1], zs[2], zs[3], zs[4]}, {zs[5], zs[6], zs[7]});
    Interpolator hip = make_interpolator(cfg, {zs[0], zs[1], zs[2]}, {zs[5], zs[6], zs[7]});
    PhasePoint pp = sample_phase_point(cfg, rng);
    CHECK(checks::symbol_mismatch(pp, oip, hip, KzbOptions{-2.0}, 1.0) < 1e-6);
    CHECK(checks::symbol_mismatch(pp, oip, hip, KzbOptions{-2.0}, 2.0) > 0.1);
}
