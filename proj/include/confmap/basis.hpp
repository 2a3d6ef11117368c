#pragma once

#include <array>
#include <cmath>
#include <vector>

#include "confmap/core.hpp"

namespace confmap {

// Legendre values P_0..P_n at x by the three-term recurrence
// (n+1) P_{n+1} = (2n+1) x P_n - n P_{n-1}.
inline void legendre_all(int n, double x, double* P) {
    P[0] = 1.0;
    if (n == 0) return;
    P[1] = x;
    for (int k = 1; k < n; ++k)
        P[k + 1] = ((2 * k + 1) * x * P[k] - k * P[k - 1]) / (k + 1);
}

// Values and derivatives together. Derivatives use
// P'_{n+1} = P'_{n-1} + (2n+1) P_n, which is exact at x = ±1 where the
// (1-x^2) form of the derivative identity degenerates.
inline void legendre_all_deriv(int n, double x, double* P, double* dP) {
    legendre_all(n, x, P);
    dP[0] = 0.0;
    if (n == 0) return;
    dP[1] = 1.0;
    for (int k = 1; k < n; ++k)
        dP[k + 1] = dP[k - 1] + (2 * k + 1) * P[k];
}

// Integrated Legendre polynomials phi_n, n >= 2:
//   phi_n(x) = (P_n(x) - P_{n-2}(x)) / sqrt(2(2n-1)),  phi'_n = sqrt((2n-1)/2) P_{n-1}.
// The scaling makes the derivatives orthonormal: ∫ phi'_i phi'_j = δ_ij.
inline void integrated_legendre_all(int p, double x, double* phi, double* dphi) {
    // phi[i], dphi[i] filled for i = 2..p (slots 0,1 unused)
    std::vector<double> P(p + 1);
    legendre_all(p, x, P.data());
    for (int nn = 2; nn <= p; ++nn) {
        double s = std::sqrt(2.0 * (2 * nn - 1));
        phi[nn] = (P[nn] - P[nn - 2]) / s;
        dphi[nn] = std::sqrt((2 * nn - 1) / 2.0) * P[nn - 1];
    }
}

inline double legendre(int n, double x) {
    std::vector<double> P(n + 1);
    legendre_all(n, x, P.data());
    return P[n];
}

inline double integrated_legendre(int n, double x) {
    std::vector<double> phi(n + 1), dphi(n + 1);
    integrated_legendre_all(n, x, phi.data(), dphi.data());
    return phi[n];
}

enum class ModeKind : uint8_t { node, side, internal };

// Hierarchic shape functions on the reference square [-1,1]^2 for order p:
// 4 bilinear vertex modes, p-1 modes per side, (p-1)^2 internal modes.
//
// Vertex numbering: v0=(-1,-1), v1=(1,-1), v2=(1,1), v3=(-1,1) (counterclockwise).
// Side s connects v_s -> v_{s+1}. Side modes blend an edge bubble with a linear
// cutoff toward the opposite side:
//   side 0: 1/2 (1-eta) phi_i(xi)     side 1: 1/2 (1+xi) phi_i(eta)
//   side 2: 1/2 (1+eta) phi_i(xi)     side 3: 1/2 (1-xi) phi_i(eta)
// The intrinsic coordinate runs v0->v1, v1->v2, v3->v2, v0->v3; elements whose
// global edge direction opposes the intrinsic one flip odd-degree modes, using
// phi_i(-x) = (-1)^i phi_i(x).
class ShapeSet {
public:
    struct Mode {
        ModeKind kind;
        int entity; // vertex or side index; unused for internal
        int i, j;   // degrees: side modes use i, internal use (i,j)
    };

    explicit ShapeSet(int p) : p_(p) {
        if (p < 1) throw GeometryError("polynomial order must be >= 1");
        modes_.reserve(count());
        for (int v = 0; v < 4; ++v) modes_.push_back({ModeKind::node, v, 0, 0});
        for (int s = 0; s < 4; ++s)
            for (int i = 2; i <= p; ++i) modes_.push_back({ModeKind::side, s, i, 0});
        for (int i = 2; i <= p; ++i)
            for (int j = 2; j <= p; ++j) modes_.push_back({ModeKind::internal, -1, i, j});
    }

    int order() const { return p_; }
    int count() const { return (p_ + 1) * (p_ + 1); }
    int side_modes() const { return p_ - 1; }
    int internal_modes() const { return (p_ - 1) * (p_ - 1); }
    const std::vector<Mode>& modes() const { return modes_; }

    // Evaluate all modes and their reference gradients at (xi, eta).
    // val/dxi/deta must hold count() entries.
    void eval(double xi, double eta, double* val, double* dxi, double* deta) const {
        const int p = p_;
        std::vector<double> fx(p + 1, 0.0), dfx(p + 1, 0.0), fy(p + 1, 0.0), dfy(p + 1, 0.0);
        if (p >= 2) {
            integrated_legendre_all(p, xi, fx.data(), dfx.data());
            integrated_legendre_all(p, eta, fy.data(), dfy.data());
        }
        int m = 0;
        // vertex modes: 1/4 (1 + xi xi_v)(1 + eta eta_v)
        static constexpr double VX[4] = {-1, 1, 1, -1};
        static constexpr double VY[4] = {-1, -1, 1, 1};
        for (int v = 0; v < 4; ++v, ++m) {
            val[m] = 0.25 * (1 + VX[v] * xi) * (1 + VY[v] * eta);
            dxi[m] = 0.25 * VX[v] * (1 + VY[v] * eta);
            deta[m] = 0.25 * (1 + VX[v] * xi) * VY[v];
        }
        for (int s = 0; s < 4; ++s) {
            for (int i = 2; i <= p_; ++i, ++m) {
                switch (s) {
                case 0:
                    val[m] = 0.5 * (1 - eta) * fx[i];
                    dxi[m] = 0.5 * (1 - eta) * dfx[i];
                    deta[m] = -0.5 * fx[i];
                    break;
                case 1:
                    val[m] = 0.5 * (1 + xi) * fy[i];
                    dxi[m] = 0.5 * fy[i];
                    deta[m] = 0.5 * (1 + xi) * dfy[i];
                    break;
                case 2:
                    val[m] = 0.5 * (1 + eta) * fx[i];
                    dxi[m] = 0.5 * (1 + eta) * dfx[i];
                    deta[m] = 0.5 * fx[i];
                    break;
                default:
                    val[m] = 0.5 * (1 - xi) * fy[i];
                    dxi[m] = -0.5 * fy[i];
                    deta[m] = 0.5 * (1 - xi) * dfy[i];
                    break;
                }
            }
        }
        for (int i = 2; i <= p_; ++i)
            for (int j = 2; j <= p_; ++j, ++m) {
                val[m] = fx[i] * fy[j];
                dxi[m] = dfx[i] * fy[j];
                deta[m] = fx[i] * dfy[j];
            }
    }

private:
    int p_;
    std::vector<Mode> modes_;
};

} // namespace confmap
