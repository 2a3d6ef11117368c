#pragma once

#include <cmath>
#include <map>
#include <vector>

#include "confmap/core.hpp"
#include "confmap/basis.hpp"

namespace confmap {

struct QuadRule {
    std::vector<double> x; // nodes in (-1,1)
    std::vector<double> w;
    int size() const { return static_cast<int>(x.size()); }
};

// n-point Gauss-Legendre rule, exact for degree 2n-1. Nodes are the roots of
// P_n computed by Newton iteration from the Chebyshev-based initial guess.
inline QuadRule gauss_legendre(int n) {
    if (n < 1) throw GeometryError("quadrature rule needs at least one point");
    static std::map<int, QuadRule> cache;
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;

    QuadRule r;
    r.x.resize(n);
    r.w.resize(n);
    std::vector<double> P(n + 1), dP(n + 1);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(PI * (i + 0.75) / (n + 0.5));
        for (int it2 = 0; it2 < 100; ++it2) {
            legendre_all_deriv(n, x, P.data(), dP.data());
            double dx = P[n] / dP[n];
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        legendre_all_deriv(n, x, P.data(), dP.data());
        double w = 2.0 / ((1.0 - x * x) * dP[n] * dP[n]);
        r.x[i] = -x; // ascending order
        r.w[i] = w;
        r.x[n - 1 - i] = x;
        r.w[n - 1 - i] = w;
    }
    if (n % 2 == 1) r.x[n / 2] = 0.0; // exact middle root

    cache[n] = r;
    return r;
}

} // namespace confmap
