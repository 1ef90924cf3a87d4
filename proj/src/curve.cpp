#include "hecke/curve.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <cstdio>

#include "hecke/theta.hpp"

namespace hecke {

namespace {

constexpr double kPathHitTol = 1e-9; // relative to curve scale

bool less_re_im(cplx a, cplx b)
{
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
}

std::vector<cplx> ellipse_polygon(cplx c, cplx u, double a, double b, int n)
{
    std::vector<cplx> v;
    for (int k = 0; k < n; ++k) {
        double t = 2.0 * M_PI * k / n;
        v.push_back(c + u * cplx(a * std::cos(t), b * std::sin(t)));
    }
    return v;
}

double polygon_clearance(const std::vector<cplx>& poly, const std::vector<cplx>& e)
{
    double best = 1e300;
    for (size_t k = 0; k < poly.size(); ++k) {
        cplx p = poly[k], q = poly[(k + 1) % poly.size()];
        for (cplx z : e) best = std::min(best, segment_point_distance(p, q, z));
    }
    return best;
}

// Loop around the contiguous block e[first..last].
CycleLoop make_loop(const std::vector<cplx>& e, int first, int last, int nv, double dmin)
{
    cplx c = 0.5 * (e[first] + e[last]);
    cplx u = e[last] - e[first];
    double half = 0.5 * std::abs(u);
    u /= std::abs(u);
    double spread = 0.0;
    for (int j = first; j <= last; ++j) spread = std::max(spread, std::abs(((e[j] - c) / u).imag()));
    CycleLoop best;
    best.clearance = -1.0;
    for (double m : {0.25, 0.4, 0.55}) {
        for (double b : {0.25, 0.4, 0.6, 0.9, 1.3}) {
            auto poly = ellipse_polygon(c, u, half + m * dmin, spread + b * dmin, nv);
            std::vector<int> inside;
            bool ok = true;
            for (int j = 0; j < (int)e.size(); ++j) {
                double w = winding_number(poly, e[j]);
                bool in = std::abs(w - 1.0) < 1e-6;
                if (!in && std::abs(w) > 1e-6) ok = false;
                if (in) inside.push_back(j);
            }
            if (!ok) continue;
            std::vector<int> want;
            for (int j = first; j <= last; ++j) want.push_back(j);
            if (inside != want) continue;
            double cl = polygon_clearance(poly, e);
            if (cl > best.clearance) {
                best.vertices = poly;
                best.enclosed = inside;
                best.clearance = cl;
            }
        }
    }
    if (best.clearance < 0.05 * dmin)
        throw Error(ErrorCode::UnsupportedConfiguration, "no cycle contour separates the branch points");
    return best;
}

CVec loop_integral(const PeriodData& pd, const CycleLoop& L)
{
    std::vector<cplx> pts = L.vertices;
    pts.push_back(L.vertices.front());
    return double(L.sign) * integrate_raw_polyline(pd, pts, L.y_start);
}

// Integral of the raw differentials along a -> b with y(a) = ya. If the
// segment ends at branch point e[kb] the endpoint substitution is used.
CVec integrate_raw_segment(const PeriodData& pd, cplx a, cplx b, cplx ya, int kb, cplx* yb)
{
    const auto& e = pd.spec.branch_points;
    for (int j = 0; j < (int)e.size(); ++j) {
        if (j == kb) continue;
        if (segment_point_distance(a, b, e[j]) < kPathHitTol * pd.scale)
            throw Error(ErrorCode::PathThroughBranchPoint, "integration segment meets a branch point");
    }
    double tol = pd.settings.quad_tol * pd.scale;
    if (kb < 0) {
        Segment s{a, b, false};
        auto g = [&](double t) -> CVec {
            cplx x = s.point(t);
            cplx y = continue_y(e, a, ya, x);
            return raw_differentials(pd.g, x, y) * s.deriv(t);
        };
        if (yb) *yb = continue_y(e, a, ya, b);
        return integrate_unit<CVec>(g, tol);
    }
    // x = a + (b-a)(1-s^2), s = 1-t; the factor for e[kb] is exactly s.
    auto g = [&](double t) -> CVec {
        double s = 1.0 - t;
        cplx x = a + (b - a) * (1.0 - s * s);
        cplx yr = ya;
        for (int j = 0; j < (int)e.size(); ++j)
            if (j != kb) yr *= std::sqrt((x - e[j]) / (a - e[j]));
        CVec v(pd.g);
        cplx p = 1.0;
        for (int k = 0; k < pd.g; ++k) {
            v(k) = p * 2.0 * (b - a) / yr;
            p *= x;
        }
        return v;
    };
    if (yb) *yb = 0.0;
    return integrate_unit<CVec>(g, tol);
}

} // namespace

int genus_of(const CurveSpec& c)
{
    int n = static_cast<int>(c.branch_points.size());
    return (n - 1) / 2;
}

double segment_point_distance(cplx a, cplx b, cplx p)
{
    cplx d = b - a;
    double L2 = std::norm(d);
    if (L2 == 0.0) return std::abs(p - a);
    double t = std::clamp(((p - a) * std::conj(d)).real() / L2, 0.0, 1.0);
    return std::abs(p - (a + t * d));
}

double winding_number(const std::vector<cplx>& poly, cplx p)
{
    double w = 0.0;
    for (size_t k = 0; k < poly.size(); ++k) w += std::arg((poly[(k + 1) % poly.size()] - p) / (poly[k] - p));
    return w / (2.0 * M_PI);
}

cplx continue_y(const std::vector<cplx>& e, cplx x_ref, cplx y_ref, cplx x)
{
    cplx y = y_ref;
    for (cplx ej : e) y *= std::sqrt((x - ej) / (x_ref - ej));
    return y;
}

cplx y_star(const PeriodData& pd, cplx x) { return continue_y(pd.spec.branch_points, pd.x0, pd.y0, x); }

CVec raw_differentials(int g, cplx x, cplx y)
{
    CVec v(g);
    cplx p = 1.0;
    for (int k = 0; k < g; ++k) {
        v(k) = p / y;
        p *= x;
    }
    return v;
}

CVec raw_differentials_dx(const PeriodData& pd, cplx x, cplx y)
{
    cplx s = 0.0;
    for (cplx ej : pd.spec.branch_points) s += 1.0 / (x - ej);
    cplx dlogy = 0.5 * s;
    CVec v(pd.g);
    for (int k = 0; k < pd.g; ++k) {
        cplx xk = std::pow(x, k);
        cplx dxk = k == 0 ? cplx(0.0) : double(k) * std::pow(x, k - 1);
        v(k) = (dxk - xk * dlogy) / y;
    }
    return v;
}

CVec eval_omega(const PeriodData& pd, cplx x, cplx y) { return pd.normalization * raw_differentials(pd.g, x, y); }
CVec eval_omega_dx(const PeriodData& pd, cplx x, cplx y) { return pd.normalization * raw_differentials_dx(pd, x, y); }

CVec integrate_raw_polyline(const PeriodData& pd, const std::vector<cplx>& pts, cplx y_start, cplx* y_end)
{
    CVec total = CVec::Zero(pd.g);
    cplx y = y_start;
    for (size_t k = 0; k + 1 < pts.size(); ++k) {
        cplx yn;
        total += integrate_raw_segment(pd, pts[k], pts[k + 1], y, -1, &yn);
        y = yn;
    }
    if (y_end) *y_end = y;
    return total;
}

double branch_distance(const PeriodData& pd, cplx x)
{
    double d = 1e300;
    for (cplx e : pd.spec.branch_points) d = std::min(d, std::abs(x - e));
    return d;
}

Located locate(const PeriodData& pd, const SurfacePoint& p)
{
    if (p.sheet != 1 && p.sheet != -1) throw Error(ErrorCode::InvalidInput, "sheet must be +1 or -1");
    if (branch_distance(pd, p.x) < kPathHitTol * pd.scale)
        throw Error(ErrorCode::PathThroughBranchPoint, "point coincides with a branch point");
    Located L;
    L.x = p.x;
    L.sheet = p.sheet;
    cplx yp = y_star(pd, p.x);
    CVec Ap = pd.normalization * integrate_raw_segment(pd, pd.x0, p.x, pd.y0, -1, nullptr);
    if (p.sheet == 1) {
        L.y = yp;
        L.A = Ap;
    } else {
        L.y = -yp;
        L.A = 2.0 * pd.abel_e1 - Ap;
    }
    L.omega = eval_omega(pd, L.x, L.y);
    return L;
}

Located locate_near(const PeriodData& pd, const Located& c, cplx x)
{
    Located L;
    L.x = x;
    L.y = continue_y(pd.spec.branch_points, c.x, c.y, x);
    L.A = c.A + pd.normalization * integrate_raw_segment(pd, c.x, x, c.y, -1, nullptr);
    L.omega = eval_omega(pd, x, L.y);
    L.sheet = std::abs(L.y - y_star(pd, x)) <= std::abs(L.y + y_star(pd, x)) ? 1 : -1;
    return L;
}

CVec abel_map(const PeriodData& pd, const SurfacePoint& p) { return locate(pd, p).A; }

CVec cycle_integral(const PeriodData& pd, const CycleLoop& L) { return pd.normalization * loop_integral(pd, L); }

PeriodData build_geometry(const CurveSpec& spec_in, const PeriodSettings& s)
{
    PeriodData pd;
    pd.settings = s;
    pd.spec = spec_in;
    auto& e = pd.spec.branch_points;
    const int n = static_cast<int>(e.size());
    if (n < 3) throw Error(ErrorCode::UnsupportedConfiguration, "need at least 3 branch points");
    std::sort(e.begin(), e.end(), less_re_im);
    pd.g = genus_of(pd.spec);
    cplx centroid = 0.0;
    for (cplx z : e) centroid += z;
    centroid /= double(n);
    double scale = 0.0, dmin = 1e300;
    for (int i = 0; i < n; ++i) {
        scale = std::max(scale, std::abs(e[i] - centroid));
        for (int j = i + 1; j < n; ++j) dmin = std::min(dmin, std::abs(e[i] - e[j]));
    }
    pd.scale = std::max(scale, 1e-300);
    if (dmin < 1e-8 * pd.scale) throw Error(ErrorCode::UnsupportedConfiguration, "coincident branch points");

    // Base point: the candidate whose rays to the branch points keep the most clearance.
    double best = -1.0;
    for (int k = 0; k < 16; ++k) {
        cplx cand = centroid + pd.scale * std::polar(1.1 + 0.05 * (k % 3), 0.37 + 2.0 * M_PI * k / 16.0);
        double cl = 1e300;
        for (int i = 0; i < n; ++i) {
            cl = std::min(cl, std::abs(cand - e[i]));
            for (int j = 0; j < n; ++j)
                if (j != i) cl = std::min(cl, segment_point_distance(cand, e[i], e[j]));
        }
        if (cl > best) {
            best = cl;
            pd.x0 = cand;
        }
    }
    pd.y0 = 1.0;
    for (cplx z : e) pd.y0 *= std::sqrt(pd.x0 - z);

    for (int a = 0; a < pd.g; ++a) {
        pd.a_loops.push_back(make_loop(e, 2 * a, 2 * a + 1, s.loop_vertices, dmin));
        pd.b_loops.push_back(make_loop(e, 2 * a + 1, 2 * pd.g, s.loop_vertices, dmin));
        pd.a_loops[a].y_start = y_star(pd, pd.a_loops[a].vertices.front());
        pd.b_loops[a].y_start = y_star(pd, pd.b_loops[a].vertices.front());
    }
    return pd;
}

PeriodData compute_periods(const CurveSpec& spec_in, const PeriodSettings& s)
{
    PeriodData pd = build_geometry(spec_in, s);
    const auto& e = pd.spec.branch_points;
    const int g = pd.g;
    pd.a_periods.resize(g, g);
    pd.b_periods.resize(g, g);
    for (int a = 0; a < g; ++a) {
        pd.a_periods.col(a) = loop_integral(pd, pd.a_loops[a]);
        pd.b_periods.col(a) = loop_integral(pd, pd.b_loops[a]);
    }
    Eigen::JacobiSVD<CMat> svd(pd.a_periods);
    auto sv = svd.singularValues();
    if (sv(g - 1) < 1e-10 * sv(0)) throw Error(ErrorCode::SingularPeriods, "A-period matrix is singular");
    pd.normalization = cplx(0.0, 2.0 * M_PI) * pd.a_periods.inverse();

    // B orientation: symmetric tau with Re tau < 0.
    CMat t0 = (pd.normalization * pd.b_periods).transpose(); // row a: int_{B_a} omega
    std::vector<int> sg(g, 1);
    if (t0(0, 0).real() > 0) sg[0] = -1;
    for (int a = 1; a < g; ++a) {
        cplx lhs = t0(a, 0), rhs = double(sg[0]) * t0(0, a);
        if (std::abs(lhs) > 1e-6 * std::abs(t0(a, a)))
            sg[a] = std::abs(lhs - rhs) <= std::abs(lhs + rhs) ? 1 : -1;
        else
            sg[a] = t0(a, a).real() < 0 ? 1 : -1;
    }
    for (int a = 0; a < g; ++a) {
        pd.b_periods.col(a) *= double(sg[a]);
        pd.b_loops[a].sign = sg[a];
    }
    pd.tau = pd.normalization * pd.b_periods;
    double asym = (pd.tau - pd.tau.transpose()).norm() / pd.tau.norm();
    if (asym > 1e-8) throw Error(ErrorCode::SingularPeriods, "period matrix is not symmetric");
    pd.tau = 0.5 * (pd.tau + pd.tau.transpose()).eval();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(Eigen::MatrixXd(pd.tau.real()));
    if (es.eigenvalues().maxCoeff() >= 0.0) throw Error(ErrorCode::SingularPeriods, "Re tau not negative definite");

    ThetaContext tc = make_theta_context(pd.tau);
    pd.kappa0 = select_kappa0(tc);
    pd.abel_e1 = pd.normalization * integrate_raw_segment(pd, pd.x0, e[0], pd.y0, 0, nullptr);
    return pd;
}

std::string curve_hash(const CurveSpec& spec, const PeriodSettings& s)
{
    // FNV-1a over the exact bit patterns of the inputs.
    std::uint64_t h = 1469598103934665603ULL;
    auto feed = [&](const void* p, size_t n) {
        const unsigned char* c = static_cast<const unsigned char*>(p);
        for (size_t i = 0; i < n; ++i) {
            h ^= c[i];
            h *= 1099511628211ULL;
        }
    };
    auto pts = spec.branch_points;
    std::sort(pts.begin(), pts.end(), less_re_im);
    for (cplx z : pts) {
        double re = z.real(), im = z.imag();
        feed(&re, sizeof re);
        feed(&im, sizeof im);
    }
    feed(&s.quad_tol, sizeof s.quad_tol);
    feed(&s.loop_vertices, sizeof s.loop_vertices);
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

} // namespace hecke
