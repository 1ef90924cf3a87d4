#include "hecke/jet.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>

#include "hecke/errors.hpp"

namespace hecke {

namespace {

constexpr double kJetDivEps = 1e-280;

void enumerate(int nvars, int deg, int v, std::vector<int>& cur, std::vector<std::vector<int>>& out)
{
    if (v == nvars - 1) {
        cur[v] = deg;
        out.push_back(cur);
        cur[v] = 0;
        return;
    }
    for (int e = deg; e >= 0; --e) {
        cur[v] = e;
        enumerate(nvars, deg - e, v + 1, cur, out);
    }
    cur[v] = 0;
}

std::unique_ptr<JetLayout> build_layout(int nvars, int order)
{
    auto L = std::make_unique<JetLayout>();
    L->nvars = nvars;
    L->order = order;
    std::vector<int> cur(nvars, 0);
    for (int d = 0; d <= order; ++d) {
        if (nvars == 0) {
            if (d == 0) L->multi.push_back({});
            continue;
        }
        enumerate(nvars, d, 0, cur, L->multi);
    }
    for (auto& m : L->multi) {
        int s = 0;
        for (int e : m) s += e;
        L->degree.push_back(s);
    }
    std::map<std::vector<int>, int> idx;
    for (int i = 0; i < L->size(); ++i) idx[L->multi[i]] = i;
    L->inc.assign(nvars, std::vector<int>(L->size(), -1));
    for (int v = 0; v < nvars; ++v)
        for (int i = 0; i < L->size(); ++i) {
            auto m = L->multi[i];
            m[v] += 1;
            auto it = idx.find(m);
            if (it != idx.end()) L->inc[v][i] = it->second;
        }
    for (int i = 0; i < L->size(); ++i)
        for (int j = 0; j < L->size(); ++j) {
            if (L->degree[i] + L->degree[j] > order) continue;
            std::vector<int> m(nvars);
            for (int v = 0; v < nvars; ++v) m[v] = L->multi[i][v] + L->multi[j][v];
            L->mul.push_back({i, j, idx.at(m)});
        }
    return L;
}

const JetLayout* common(const Jet& a, const Jet& b)
{
    if (a.nvars() != b.nvars())
        throw Error(ErrorCode::InvalidInput, "jets over different variable sets");
    return a.order() <= b.order() ? a.layout() : b.layout();
}

} // namespace

int JetLayout::index(const std::vector<int>& m) const
{
    for (int i = 0; i < size(); ++i)
        if (multi[i] == m) return i;
    return -1;
}

const JetLayout& JetLayout::get(int nvars, int order)
{
    static std::mutex mu;
    static std::map<std::pair<int, int>, std::unique_ptr<JetLayout>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto& slot = cache[{nvars, order}];
    if (!slot) slot = build_layout(nvars, order);
    return *slot;
}

Jet::Jet(const JetLayout& L, cplx v) : L_(&L), c_(L.size(), cplx(0.0)) { c_[0] = v; }

Jet Jet::constant(int nvars, int order, cplx v) { return Jet(JetLayout::get(nvars, order), v); }

Jet Jet::variable(int nvars, int order, int i, cplx v)
{
    Jet j(JetLayout::get(nvars, order), v);
    if (order >= 1) j.c_[1 + i] = 1.0; // degree-1 monomials follow the constant, x_0 first
    return j;
}

cplx Jet::coeff(const std::vector<int>& m) const
{
    if (!L_) {
        for (int e : m)
            if (e) return 0.0;
        return c_[0];
    }
    int i = L_->index(m);
    return i < 0 ? cplx(0.0) : c_[i];
}

cplx Jet::derivative(const std::vector<int>& m) const
{
    double f = 1.0;
    for (int e : m)
        for (int k = 2; k <= e; ++k) f *= k;
    return coeff(m) * f;
}

cplx Jet::d(int i) const
{
    if (!L_ || L_->order < 1) return 0.0;
    return c_[1 + i];
}

cplx Jet::d2(int i, int j) const
{
    if (!L_) return 0.0;
    std::vector<int> m(L_->nvars, 0);
    m[i] += 1;
    m[j] += 1;
    return derivative(m);
}

Jet Jet::partial(int v) const
{
    if (!L_) return Jet(0.0);
    if (L_->order < 1) throw Error(ErrorCode::JetOrderTooLow, "partial of an order-0 jet");
    const JetLayout& lo = JetLayout::get(L_->nvars, L_->order - 1);
    Jet r(lo, 0.0);
    for (int i = 0; i < lo.size(); ++i) {
        int k = L_->inc[v][i];
        r.c_[i] = c_[k] * double(L_->multi[k][v]);
    }
    return r;
}

Jet Jet::truncate(int ord) const
{
    if (!L_ || ord >= L_->order) return *this;
    const JetLayout& lo = JetLayout::get(L_->nvars, ord);
    Jet r(lo, 0.0);
    std::copy(c_.begin(), c_.begin() + lo.size(), r.c_.begin());
    return r;
}

Jet& Jet::operator+=(const Jet& o)
{
    if (o.is_scalar()) {
        c_[0] += o.c_[0];
        return *this;
    }
    if (is_scalar()) {
        cplx v = c_[0];
        *this = o;
        c_[0] += v;
        return *this;
    }
    const JetLayout* L = common(*this, o);
    if (L != L_) *this = truncate(L->order);
    for (int i = 0; i < L->size(); ++i) c_[i] += o.c_[i];
    return *this;
}

Jet& Jet::operator-=(const Jet& o) { return *this += -o; }

Jet& Jet::operator*=(const Jet& o)
{
    *this = *this * o;
    return *this;
}

Jet& Jet::operator/=(const Jet& o)
{
    *this = *this / o;
    return *this;
}

Jet operator-(const Jet& a)
{
    Jet r = a;
    for (auto& c : r.c_) c = -c;
    return r;
}

Jet operator+(const Jet& a, const Jet& b)
{
    Jet r = a;
    r += b;
    return r;
}

Jet operator-(const Jet& a, const Jet& b)
{
    Jet r = a;
    r += -b;
    return r;
}

Jet operator*(const Jet& a, const Jet& b)
{
    if (b.is_scalar()) {
        Jet r = a;
        for (auto& c : r.c_) c *= b.c_[0];
        return r;
    }
    if (a.is_scalar()) return b * a;
    const JetLayout* L = common(a, b);
    Jet r(*L, 0.0);
    for (const auto& t : L->mul) r.c_[t[2]] += a.c_[t[0]] * b.c_[t[1]];
    return r;
}

Jet operator/(const Jet& a, const Jet& b)
{
    if (b.is_scalar()) {
        if (std::abs(b.c_[0]) < kJetDivEps)
            throw Error(ErrorCode::DivisionByZeroJet, "constant term of divisor vanishes");
        Jet r = a;
        for (auto& c : r.c_) c /= b.c_[0];
        return r;
    }
    return a * inv(b);
}

Jet inv(const Jet& a)
{
    cplx a0 = a.value();
    if (std::abs(a0) < kJetDivEps)
        throw Error(ErrorCode::DivisionByZeroJet, "constant term of divisor vanishes");
    if (a.is_scalar()) return Jet(1.0 / a0);
    // 1/a = (1/a0) sum (-delta)^n with delta = a/a0 - 1 nilpotent
    Jet delta = a / a0;
    delta.coeffs()[0] = 0.0;
    Jet r = Jet::constant(a.nvars(), a.order(), 1.0);
    for (int n = 0; n < a.order(); ++n) r = Jet(1.0) - delta * r;
    return r / a0;
}

Jet exp(const Jet& a)
{
    cplx e0 = std::exp(a.value());
    if (a.is_scalar()) return Jet(e0);
    Jet delta = a;
    delta.coeffs()[0] = 0.0;
    Jet r = Jet::constant(a.nvars(), a.order(), 1.0);
    for (int n = a.order(); n >= 1; --n) r = Jet(1.0) + delta * r / cplx(double(n));
    return r * e0;
}

Jet log(const Jet& a)
{
    cplx a0 = a.value();
    if (std::abs(a0) < kJetDivEps) throw Error(ErrorCode::DivisionByZeroJet, "log of zero");
    if (a.is_scalar()) return Jet(std::log(a0));
    Jet delta = a / a0;
    delta.coeffs()[0] = 0.0;
    // log(1 + d) = d - d^2/2 + ...
    Jet sum = Jet::constant(a.nvars(), a.order(), 0.0);
    Jet p = delta;
    for (int n = 1; n <= a.order(); ++n) {
        double s = (n % 2 == 1) ? 1.0 : -1.0;
        sum += p * (s / n);
        p = p * delta;
    }
    sum.coeffs()[0] += std::log(a0);
    return sum;
}

Jet pow(const Jet& a, int n)
{
    if (n < 0) return pow(inv(a), -n);
    Jet r = a.is_scalar() ? Jet(1.0) : Jet::constant(a.nvars(), a.order(), 1.0);
    Jet b = a;
    while (n) {
        if (n & 1) r = r * b;
        n >>= 1;
        if (n) b = b * b;
    }
    return r;
}

} // namespace hecke
