#include "hecke/quadrature.hpp"

#include <map>
#include <mutex>

namespace hecke {

Path Path::polyline(const std::vector<cplx>& pts, bool closed)
{
    Path p;
    for (size_t i = 0; i + 1 < pts.size(); ++i) p.segs.push_back({pts[i], pts[i + 1], false});
    if (closed && pts.size() > 1) p.segs.push_back({pts.back(), pts.front(), false});
    return p;
}

const std::vector<std::pair<double, double>>& gauss_legendre(int n)
{
    static std::mutex mu;
    static std::map<int, std::vector<std::pair<double, double>>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    std::vector<std::pair<double, double>> q(n);
    for (int i = 0; i < n; ++i) {
        // Newton on P_n from the Chebyshev guess
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it2 = 0; it2 < 100; ++it2) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = pk;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        double w = 2.0 / ((1.0 - x * x) * dp * dp);
        q[i] = {0.5 * (1.0 - x), 0.5 * w};
    }
    return cache[n] = q;
}

} // namespace hecke
