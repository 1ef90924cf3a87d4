#pragma once

#include <cmath>
#include <functional>
#include <utility>
#include <vector>

#include "hecke/errors.hpp"
#include "hecke/linalg.hpp"

namespace hecke {

// Straight segment a -> b. With squared_end the parameter runs as
// x = a + (b-a)(1-(1-t)^2), which removes a square-root singularity at b.
struct Segment {
    cplx a, b;
    bool squared_end = false;

    cplx point(double t) const
    {
        if (!squared_end) return a + (b - a) * t;
        double s = 1.0 - t;
        return a + (b - a) * (1.0 - s * s);
    }
    cplx deriv(double t) const { return squared_end ? (b - a) * (2.0 * (1.0 - t)) : (b - a); }
};

struct Path {
    std::vector<Segment> segs;

    static Path line(cplx a, cplx b, bool squared_end = false) { return Path{{Segment{a, b, squared_end}}}; }
    static Path polyline(const std::vector<cplx>& pts, bool closed);
};

// Nodes and weights on [0,1].
const std::vector<std::pair<double, double>>& gauss_legendre(int n);

inline double qnorm(cplx z) { return std::abs(z); }
inline double qnorm(const CVec& v) { return v.size() ? v.cwiseAbs().maxCoeff() : 0.0; }

constexpr int kGaussOrder = 20;
constexpr int kMaxQuadDepth = 48;

template <class V, class G>
V gl_rule(const G& g, double a, double b)
{
    const auto& q = gauss_legendre(kGaussOrder);
    V s = g(a + (b - a) * q[0].first) * q[0].second;
    for (size_t i = 1; i < q.size(); ++i) s += g(a + (b - a) * q[i].first) * q[i].second;
    return s * (b - a);
}

template <class V, class G>
V integrate_adaptive(const G& g, double a, double b, double tol, const V& whole, int depth = 0)
{
    double m = 0.5 * (a + b);
    V left = gl_rule<V>(g, a, m);
    V right = gl_rule<V>(g, m, b);
    V both = left + right;
    // halving tol per level eventually asks for less than roundoff; stop at that floor.
    // Near a branch point the integrand itself carries roundoff ~ eps * scale / distance,
    // so narrow panels are accepted at a looser relative floor.
    double err = qnorm(V(both - whole));
    if (err <= tol || err <= 1e-14 * qnorm(both)) return both;
    if (b - a < 1e-5 && err <= 1e-10 * qnorm(both)) return both;
    if (depth >= kMaxQuadDepth) throw Error(ErrorCode::NoConvergence, "adaptive quadrature depth exceeded");
    return integrate_adaptive<V>(g, a, m, 0.5 * tol, left, depth + 1) +
           integrate_adaptive<V>(g, m, b, 0.5 * tol, right, depth + 1);
}

// Integral of g(t) over [0,1] with absolute tolerance tol.
template <class V, class G>
V integrate_unit(const G& g, double tol)
{
    V whole = gl_rule<V>(g, 0.0, 1.0);
    return integrate_adaptive<V>(g, 0.0, 1.0, tol, whole);
}

// Contour integral of f(x) dx along a path.
template <class V, class F>
V contour_integrate(const F& f, const Path& p, double tol = 1e-13)
{
    V total{};
    bool first = true;
    for (const auto& s : p.segs) {
        auto g = [&](double t) -> V { return V(f(s.point(t)) * s.deriv(t)); };
        V part = integrate_unit<V>(g, tol / p.segs.size());
        if (first) {
            total = part;
            first = false;
        } else {
            total += part;
        }
    }
    return total;
}

} // namespace hecke
