#pragma once
// The g = 2 configuration shipped as scenarios/g2-default.json.

#include "hecke/checks.hpp"

namespace fixtures {

inline hecke::CurveSpec g2_curve()
{
    return {{{-2.1, 0.1}, {-1.0, -0.05}, {0.05, 0.02}, {1.1, -0.1}, {2.0, 0.07}, {3.05, -0.03}}};
}

inline std::unique_ptr<hecke::checks::Sample> g2_sample()
{
    using hecke::cplx;
    std::vector<hecke::SurfacePoint> pts{{{-1.6, 0.8}, -1}, {{-0.4, -0.9}, 1}, {{0.6, 0.7}, -1},
                                         {{1.5, -0.8}, 1},  {{2.4, 0.9}, -1},  {{-0.2, 1.6}, 1}};
    hecke::CVec ell(6);
    ell << cplx(0.7, 0.3), cplx(-0.9, 0.5), cplx(0.4, -1.1), cplx(1.3, 0.6), cplx(-0.5, -0.8), cplx(0.2, 1.2);
    return hecke::checks::make_sample(g2_curve(), {{0.4, 1.3}, 1}, pts, ell);
}

} // namespace fixtures
