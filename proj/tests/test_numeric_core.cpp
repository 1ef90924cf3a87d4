#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "hecke/errors.hpp"
#include "hecke/jet.hpp"
#include "hecke/laurent.hpp"
#include "hecke/linalg.hpp"
#include "hecke/quadrature.hpp"

using namespace hecke;

TEST_CASE("jet product of two variables")
{
    Jet a = Jet::variable(2, 2, 0, 2.0), b = Jet::variable(2, 2, 1, 3.0);
    Jet p = a * b;
    CHECK(std::abs(p.value() - 6.0) < 1e-15);
    CHECK(std::abs(p.d(0) - 3.0) < 1e-15);
    CHECK(std::abs(p.d(1) - 2.0) < 1e-15);
    CHECK(std::abs(p.d2(0, 1) - 1.0) < 1e-15);
    CHECK(std::abs(p.d2(0, 0)) < 1e-15);
}

TEST_CASE("jet reciprocal")
{
    Jet x = Jet::variable(1, 2, 0, 2.0);
    Jet r = inv(x);
    CHECK(std::abs(r.value() - 0.5) < 1e-15);
    CHECK(std::abs(r.d(0) + 0.25) < 1e-15);
    CHECK(std::abs(r.d2(0, 0) - 0.25) < 1e-15);
    CHECK_THROWS_AS(inv(Jet::variable(1, 2, 0, 0.0)), Error);
}

TEST_CASE("jet exp and log are inverse")
{
    Jet x = Jet::variable(2, 3, 0, cplx(0.3, 0.2)) + Jet::variable(2, 3, 1, cplx(-0.1, 0.4));
    Jet y = log(exp(x));
    for (size_t k = 0; k < x.coeffs().size(); ++k) CHECK(std::abs(y.coeffs()[k] - x.coeffs()[k]) < 1e-14);
}

TEST_CASE("determinants")
{
    CMat I = CMat::Identity(4, 4);
    CHECK(std::abs(det_lu<cplx>(I) - 1.0) < 1e-15);
    CMat V(3, 3); // nodes 0, 1, 2
    V << 1, 0, 0, 1, 1, 1, 1, 2, 4;
    CHECK(std::abs(det_lu<cplx>(V) - 2.0) < 1e-14);
    CMat A = CMat::Random(5, 5);
    CHECK(std::abs(det_lu<cplx>(A) - A.determinant()) < 1e-12 * std::abs(A.determinant()) + 1e-14);
    CMat B = inverse_lu<cplx>(A) * A;
    CHECK((B - CMat::Identity(5, 5)).norm() < 1e-11);
}

TEST_CASE("determinant gradient through jets matches finite differences")
{
    CMat A = CMat::Random(3, 3);
    Mat<Jet> J(3, 3);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) J(i, j) = Jet::constant(3, 1, A(i, j));
    for (int i = 0; i < 3; ++i) J(i, 0) = Jet::variable(3, 1, i, A(i, 0));
    Jet d = det_lu<Jet>(J);
    const double h = 1e-6;
    for (int i = 0; i < 3; ++i) {
        CMat Ap = A, Am = A;
        Ap(i, 0) += h;
        Am(i, 0) -= h;
        cplx fd = (Ap.determinant() - Am.determinant()) / (2 * h);
        CHECK(std::abs(d.d(i) - fd) < 1e-8);
    }
}

TEST_CASE("numerical kernel")
{
    CMat M(3, 3);
    M << 1, 2, 3, 4, 5, 6, 7, 8, 9;
    KernelResult k = kernel_basis(M);
    REQUIRE(k.dim == 1);
    CHECK((M * k.basis[0]).norm() < 1e-12);
    CHECK(kernel_basis(CMat::Identity(3, 3)).dim == 0);
}

TEST_CASE("gauss-legendre is exact on polynomials of degree 2n-1")
{
    auto f = [](double t) { return cplx(std::pow(t, 39)); };
    CHECK(std::abs(gl_rule<cplx>(f, 0.0, 1.0) - 1.0 / 40.0) < 1e-15);
}

TEST_CASE("contour integral of dz/z around a polygon is 2 pi i")
{
    std::vector<cplx> pts;
    for (int k = 0; k < 7; ++k) pts.push_back(std::polar(1.3, 2 * M_PI * k / 7));
    Path p = Path::polyline(pts, true);
    cplx v = contour_integrate<cplx>([](cplx z) { return 1.0 / z; }, p);
    CHECK(std::abs(v - cplx(0, 2 * M_PI)) < 1e-12);
}

TEST_CASE("squared end removes the endpoint square root")
{
    // int_0^1 dx / sqrt(1 - x) = 2
    Path p = Path::line(0.0, 1.0, true);
    cplx v = contour_integrate<cplx>([](cplx x) { return 1.0 / std::sqrt(1.0 - x); }, p);
    CHECK(std::abs(v - 2.0) < 1e-12);
}

TEST_CASE("laurent probe recovers a double pole")
{
    cplx c(0.3, -0.2);
    auto f = [c](cplx x) {
        CVec v(1);
        v(0) = 1.0 / ((x - c) * (x - c)) + 2.0 / (x - c) + 3.0 + x;
        return v;
    };
    LaurentResult L = laurent_probe(f, c, 0.1, -3, 2);
    CHECK(std::abs(L.at(0, -3)) < 1e-12);
    CHECK(std::abs(L.at(0, -2) - 1.0) < 1e-12);
    CHECK(std::abs(L.at(0, -1) - 2.0) < 1e-12);
    CHECK(std::abs(L.at(0, 0) - (3.0 + c)) < 1e-12);
    CHECK(std::abs(L.at(0, 1) - 1.0) < 1e-10);
}

TEST_CASE("rng streams are reproducible and split")
{
    Rng a(42), b(42);
    CHECK(a.uniform() == b.uniform());
    Rng c = Rng(42).split(1), d = Rng(42).split(2);
    CHECK(c.uniform() != d.uniform());
    CHECK(Rng(42).split(1).seed() == Rng(42).split(1).seed());
}
