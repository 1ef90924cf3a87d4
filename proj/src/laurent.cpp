#include "hecke/laurent.hpp"

#include <cmath>

namespace hecke {

namespace {

CMat dft(const std::function<CVec(cplx)>& f, cplx center, double r, int lo, int hi, int n)
{
    CMat c;
    for (int k = 0; k < n; ++k) {
        double th = 2.0 * M_PI * (k + 0.5) / n;
        cplx u = std::polar(1.0, th);
        CVec v = f(center + r * u);
        if (k == 0) c = CMat::Zero(v.size(), hi - lo + 1);
        for (int m = lo; m <= hi; ++m) c.col(m - lo) += v * (std::pow(r * u, -m) / double(n));
    }
    return c;
}

} // namespace

Eigen::VectorXd LaurentResult::regular_scale() const
{
    Eigen::VectorXd s(coeffs.rows());
    for (int i = 0; i < coeffs.rows(); ++i) s(i) = std::abs(coeffs(i, -min_order));
    return s;
}

LaurentResult laurent_probe(const std::function<CVec(cplx)>& f, cplx center, double radius,
                            int min_order, int max_order, int nsamples)
{
    LaurentResult r;
    r.min_order = min_order;
    r.radius = radius;
    r.coeffs = dft(f, center, radius, min_order, max_order, nsamples);
    r.coeffs_half = dft(f, center, 0.5 * radius, min_order, max_order, nsamples);
    r.error = (r.coeffs - r.coeffs_half).cwiseAbs().rowwise().maxCoeff();
    return r;
}

} // namespace hecke
