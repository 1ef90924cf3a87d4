#pragma once

// sl2 vectors in the basis (e, h, f): [h,e] = 2e, [h,f] = -2f, [e,f] = h.

namespace hecke {

template <class S>
struct SL2Vector {
    S e = S(0.0), h = S(0.0), f = S(0.0);

    SL2Vector& operator+=(const SL2Vector& o)
    {
        e = e + o.e;
        h = h + o.h;
        f = f + o.f;
        return *this;
    }
    friend SL2Vector operator+(SL2Vector a, const SL2Vector& b) { return a += b; }
    friend SL2Vector operator-(const SL2Vector& a, const SL2Vector& b) { return {a.e - b.e, a.h - b.h, a.f - b.f}; }
    template <class T>
    friend SL2Vector operator*(const T& s, const SL2Vector& a)
    {
        return {a.e * s, a.h * s, a.f * s};
    }
};

// Invariant form tr(rho(x) rho(y)) in the defining representation.
template <class S>
S pairing(const SL2Vector<S>& x, const SL2Vector<S>& y)
{
    return x.e * y.f + x.f * y.e + S(2.0) * x.h * y.h;
}

template <class S>
SL2Vector<S> lie_bracket(const SL2Vector<S>& x, const SL2Vector<S>& y)
{
    return {S(2.0) * (x.h * y.e - x.e * y.h), x.e * y.f - x.f * y.e, S(-2.0) * (x.h * y.f - x.f * y.h)};
}

// R(l) = -e + l h + l^2 f, the residue direction at a point with parameter l.
template <class S>
SL2Vector<S> residue_direction(const S& l)
{
    return {S(-1.0), l, l * l};
}

} // namespace hecke
