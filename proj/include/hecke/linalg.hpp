#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "hecke/errors.hpp"
#include "hecke/jet.hpp"

namespace hecke {

template <class S> using Mat = Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>;
template <class S> using Vec = Eigen::Matrix<S, Eigen::Dynamic, 1>;
using CMat = Mat<cplx>;
using CVec = Vec<cplx>;

// LU with partial pivoting on |constant term|. Works for cplx and Jet.
template <class S>
S det_lu(Mat<S> a)
{
    const int n = static_cast<int>(a.rows());
    S det = S(1.0);
    for (int k = 0; k < n; ++k) {
        int p = k;
        double best = magnitude(a(k, k));
        for (int i = k + 1; i < n; ++i)
            if (magnitude(a(i, k)) > best) {
                best = magnitude(a(i, k));
                p = i;
            }
        if (best == 0.0) return S(0.0) * det;
        if (p != k) {
            a.row(p).swap(a.row(k));
            det = -det;
        }
        det = det * a(k, k);
        S inv_piv = S(1.0) / a(k, k);
        for (int i = k + 1; i < n; ++i) {
            S f = a(i, k) * inv_piv;
            for (int j = k + 1; j < n; ++j) a(i, j) = a(i, j) - f * a(k, j);
        }
    }
    return det;
}

// Inverse by Gauss-Jordan with partial pivoting; throws DenZero on a zero pivot.
template <class S>
Mat<S> inverse_lu(Mat<S> a)
{
    const int n = static_cast<int>(a.rows());
    Mat<S> b(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) b(i, j) = S(i == j ? 1.0 : 0.0);
    for (int k = 0; k < n; ++k) {
        int p = k;
        double best = magnitude(a(k, k));
        for (int i = k + 1; i < n; ++i)
            if (magnitude(a(i, k)) > best) {
                best = magnitude(a(i, k));
                p = i;
            }
        if (best == 0.0) throw Error(ErrorCode::DenZero, "singular matrix in inverse");
        if (p != k) {
            a.row(p).swap(a.row(k));
            b.row(p).swap(b.row(k));
        }
        S ip = S(1.0) / a(k, k);
        for (int j = 0; j < n; ++j) {
            a(k, j) = a(k, j) * ip;
            b(k, j) = b(k, j) * ip;
        }
        for (int i = 0; i < n; ++i) {
            if (i == k) continue;
            S f = a(i, k);
            if (magnitude(f) == 0.0 && value_of(f) == cplx(0.0)) continue;
            for (int j = 0; j < n; ++j) {
                a(i, j) = a(i, j) - f * a(k, j);
                b(i, j) = b(i, j) - f * b(k, j);
            }
        }
    }
    return b;
}

struct KernelResult {
    std::vector<CVec> basis;
    Eigen::VectorXd singular_values;
    double smallest_sv = 0.0;
    int dim = 0;
};

// Numerical kernel via SVD, rank cut at rel_tol * sigma_max.
KernelResult kernel_basis(const CMat& m, double rel_tol = 1e-9);

// Hadamard bound prod_i |row_i|, used as the scale of a determinant.
double hadamard_bound(const CMat& m);

// Deterministic 64-bit stream; split() derives independent child streams.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed), eng_(mix(seed)) {}
    Rng split(std::uint64_t tag) const { return Rng(mix(state_ ^ mix(tag + 0x9e3779b97f4a7c15ULL))); }
    double uniform(double a = 0.0, double b = 1.0) { return std::uniform_real_distribution<double>(a, b)(eng_); }
    cplx disc(double r) // uniform in the disc of radius r
    {
        double t = uniform(0.0, 2.0 * 3.14159265358979323846);
        double s = r * std::sqrt(uniform());
        return {s * std::cos(t), s * std::sin(t)};
    }
    cplx box(cplx lo, cplx hi) { return {uniform(lo.real(), hi.real()), uniform(lo.imag(), hi.imag())}; }
    std::uint64_t seed() const { return state_; }

    static std::uint64_t mix(std::uint64_t z)
    {
        z += 0x9e3779b97f4a7c15ULL;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

private:
    std::uint64_t state_;
    std::mt19937_64 eng_;
};

} // namespace hecke
