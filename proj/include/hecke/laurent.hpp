#pragma once

#include <functional>

#include "hecke/linalg.hpp"

namespace hecke {

struct LaurentResult {
    int min_order = 0;  // coeffs column j holds order min_order + j
    CMat coeffs;        // rows: component functions
    CMat coeffs_half;   // same at half radius
    Eigen::VectorXd error; // per-row max |c(r) - c(r/2)|
    double radius = 0.0;

    cplx at(int row, int n) const { return coeffs(row, n - min_order); }
    Eigen::VectorXd regular_scale() const; // |c_0| per row
};

// f(x) returns the values of several functions at x. Laurent coefficients
// of orders min_order..max_order around center via an nsamples-point DFT on
// |x - center| = radius, repeated at radius/2 for an error estimate.
LaurentResult laurent_probe(const std::function<CVec(cplx)>& f, cplx center, double radius,
                            int min_order, int max_order, int nsamples = 48);

} // namespace hecke
