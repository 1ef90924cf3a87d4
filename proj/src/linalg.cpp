#include "hecke/linalg.hpp"

#include <Eigen/SVD>

namespace hecke {

KernelResult kernel_basis(const CMat& m, double rel_tol)
{
    KernelResult r;
    const int n = static_cast<int>(m.cols());
    Eigen::JacobiSVD<CMat> svd(m, Eigen::ComputeFullV);
    r.singular_values = svd.singularValues();
    const int k = static_cast<int>(r.singular_values.size());
    double smax = k ? r.singular_values(0) : 0.0;
    int rank = 0;
    for (int i = 0; i < k; ++i)
        if (r.singular_values(i) > rel_tol * smax) ++rank;
    r.smallest_sv = k ? r.singular_values(k - 1) : 0.0;
    r.dim = n - rank;
    const CMat& V = svd.matrixV();
    for (int i = rank; i < n; ++i) r.basis.push_back(V.col(i));
    return r;
}

double hadamard_bound(const CMat& m)
{
    double b = 1.0;
    for (int i = 0; i < m.rows(); ++i) b *= m.row(i).norm();
    return b;
}

} // namespace hecke
