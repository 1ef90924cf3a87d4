#pragma once

// Dense truncated multivariate Taylor series.

#include <array>
#include <complex>
#include <vector>

#include <Eigen/Core>

namespace hecke {

using cplx = std::complex<double>;

struct JetLayout {
    int nvars = 0;
    int order = 0;
    std::vector<std::vector<int>> multi; // graded, then lexicographic
    std::vector<int> degree;
    std::vector<std::array<int, 3>> mul; // (i, j, k): x^i * x^j = x^k
    std::vector<std::vector<int>> inc;   // inc[v][i] = index of x^i * x_v, -1 if beyond order

    int size() const { return static_cast<int>(multi.size()); }
    int index(const std::vector<int>& m) const;

    // Thread-safe, layouts live for the whole program.
    static const JetLayout& get(int nvars, int order);
};

class Jet {
public:
    Jet() : c_{cplx(0.0)} {}
    Jet(double v) : c_{cplx(v)} {}
    Jet(cplx v) : c_{v} {}
    Jet(const JetLayout& L, cplx v);

    static Jet constant(int nvars, int order, cplx v);
    static Jet variable(int nvars, int order, int i, cplx v);

    bool is_scalar() const { return L_ == nullptr; }
    int nvars() const { return L_ ? L_->nvars : 0; }
    int order() const { return L_ ? L_->order : 0; }
    const JetLayout* layout() const { return L_; }

    cplx value() const { return c_[0]; }
    const std::vector<cplx>& coeffs() const { return c_; }
    std::vector<cplx>& coeffs() { return c_; }

    // Taylor coefficient of x^m.
    cplx coeff(const std::vector<int>& m) const;
    // Partial derivative d^m at the expansion point.
    cplx derivative(const std::vector<int>& m) const;
    cplx d(int i) const;
    cplx d2(int i, int j) const;

    // Result has order one lower.
    Jet partial(int v) const;
    Jet truncate(int ord) const;

    Jet& operator+=(const Jet& o);
    Jet& operator-=(const Jet& o);
    Jet& operator*=(const Jet& o);
    Jet& operator/=(const Jet& o);

    friend Jet operator-(const Jet& a);
    friend Jet operator+(const Jet& a, const Jet& b);
    friend Jet operator-(const Jet& a, const Jet& b);
    friend Jet operator*(const Jet& a, const Jet& b);
    friend Jet operator/(const Jet& a, const Jet& b);

private:
    const JetLayout* L_ = nullptr;
    std::vector<cplx> c_;
};

inline Jet operator+(const Jet& a, cplx b) { return a + Jet(b); }
inline Jet operator+(cplx a, const Jet& b) { return Jet(a) + b; }
inline Jet operator-(const Jet& a, cplx b) { return a - Jet(b); }
inline Jet operator-(cplx a, const Jet& b) { return Jet(a) - b; }
inline Jet operator*(const Jet& a, cplx b) { return a * Jet(b); }
inline Jet operator*(cplx a, const Jet& b) { return Jet(a) * b; }
inline Jet operator/(const Jet& a, cplx b) { return a / Jet(b); }
inline Jet operator/(cplx a, const Jet& b) { return Jet(a) / b; }
inline Jet operator*(const Jet& a, double b) { return a * Jet(b); }
inline Jet operator*(double a, const Jet& b) { return Jet(a) * b; }

Jet inv(const Jet& a);
Jet exp(const Jet& a);
Jet log(const Jet& a);
Jet pow(const Jet& a, int n);

// Magnitude used for pivoting; the constant term for jets.
inline double magnitude(cplx z) { return std::abs(z); }
inline double magnitude(const Jet& j) { return std::abs(j.value()); }
inline cplx value_of(cplx z) { return z; }
inline cplx value_of(const Jet& j) { return j.value(); }

} // namespace hecke

namespace Eigen {
template <>
struct NumTraits<hecke::Jet> : GenericNumTraits<hecke::Jet> {
    typedef double Real;
    typedef hecke::Jet NonInteger;
    typedef hecke::Jet Nested;
    typedef hecke::Jet Literal;
    enum {
        IsComplex = 1,
        IsInteger = 0,
        IsSigned = 1,
        RequireInitialization = 1,
        ReadCost = 8,
        AddCost = 32,
        MulCost = 256
    };
    static inline Real epsilon() { return 1e-16; }
    static inline Real dummy_precision() { return 1e-12; }
    static inline int digits10() { return 15; }
};
} // namespace Eigen
