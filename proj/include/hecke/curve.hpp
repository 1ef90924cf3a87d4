#pragma once

// Hyperelliptic curve y^2 = prod (x - e_j), periods, Abel map.

#include <string>
#include <vector>

#include "hecke/linalg.hpp"
#include "hecke/quadrature.hpp"

namespace hecke {

struct CurveSpec {
    std::vector<cplx> branch_points; // 2g+1 or 2g+2 finite points
};

int genus_of(const CurveSpec& c);

// sheet +1 is y continued along the straight segment from the base point,
// sheet -1 is its negative.
struct SurfacePoint {
    cplx x;
    int sheet = 1;
};

// A point with everything the kernels need, computed once.
struct Located {
    cplx x;
    cplx y;
    int sheet = 1;
    CVec A;     // normalized Abel image (one lift)
    CVec omega; // dx-coefficients of the normalized differentials
};

struct CycleLoop {
    std::vector<cplx> vertices;  // closed polygon
    std::vector<int> enclosed;   // indices into sorted branch points
    double clearance = 0.0;      // min distance to a branch point
    cplx y_start = 0.0;          // lift at vertices[0]
    int sign = 1;                // orientation relative to the vertex order
};

struct PeriodSettings {
    double quad_tol = 1e-14;
    int loop_vertices = 40;
};

struct PeriodData {
    CurveSpec spec; // sorted by (Re, Im)
    int g = 0;
    double scale = 1.0;
    cplx x0, y0;                  // base point and y there
    std::vector<CycleLoop> a_loops, b_loops;
    CMat a_periods;               // (b, a) = int_{A_a} x^b dx / y
    CMat b_periods;               // (b, a) = int_{B_a} x^b dx / y, oriented
    CMat normalization;           // N = 2 pi i a_periods^{-1}
    CMat tau;
    CVec kappa0;
    CVec abel_e1;                 // A(e_1) along the straight segment
    PeriodSettings settings;
};

PeriodData compute_periods(const CurveSpec& spec, const PeriodSettings& s = {});
// Sorting, base point and cycle contours only; no integration.
PeriodData build_geometry(const CurveSpec& spec, const PeriodSettings& s = {});

// Straight-line continuation of y from (x_ref, y_ref) to x. Exact unless the
// segment hits a branch point.
cplx continue_y(const std::vector<cplx>& e, cplx x_ref, cplx y_ref, cplx x);
cplx y_star(const PeriodData& pd, cplx x);

CVec raw_differentials(int g, cplx x, cplx y);            // x^b / y
CVec raw_differentials_dx(const PeriodData& pd, cplx x, cplx y); // d/dx of x^b / y
CVec eval_omega(const PeriodData& pd, cplx x, cplx y);
CVec eval_omega_dx(const PeriodData& pd, cplx x, cplx y);

// Integral of the raw differentials along a polyline starting at (pts[0], y_start).
CVec integrate_raw_polyline(const PeriodData& pd, const std::vector<cplx>& pts, cplx y_start,
                            cplx* y_end = nullptr);

Located locate(const PeriodData& pd, const SurfacePoint& p);
// Nearby point reached along the straight segment from c.
Located locate_near(const PeriodData& pd, const Located& c, cplx x);
CVec abel_map(const PeriodData& pd, const SurfacePoint& p);
// sign * N * (closed-loop integral of the raw differentials), lift fixed at construction.
CVec cycle_integral(const PeriodData& pd, const CycleLoop& L);

// Distance from x to the nearest branch point.
double branch_distance(const PeriodData& pd, cplx x);
double segment_point_distance(cplx a, cplx b, cplx p);
double winding_number(const std::vector<cplx>& poly, cplx p);

std::string curve_hash(const CurveSpec& spec, const PeriodSettings& s);

} // namespace hecke
