#pragma once

#include <complex>

#include "confmap/core.hpp"

// Analytic reference maps for the test suite. Everything here is built from
// the arithmetic-geometric mean and the Landen transformation alone, so the
// library carries no special-function dependency.
namespace confmap::oracles {

inline double agm(double a, double b) {
    for (int i = 0; i < 64 && std::abs(a - b) > 1e-17 * a; ++i) {
        double an = 0.5 * (a + b);
        b = std::sqrt(a * b);
        a = an;
    }
    return 0.5 * (a + b);
}

// Complete elliptic integral of the first kind, modulus k.
inline double elliptic_K(double k) {
    if (!(k >= 0 && k < 1)) throw Error("elliptic modulus must be in [0,1)");
    return PI / (2 * agm(1.0, std::sqrt((1 - k) * (1 + k))));
}

// Jacobi sn, cn, dn for real argument by descending Landen transformation:
// k drops quadratically through k1 = (1-k')/(1+k'), the trig base case picks
// up an O(k^2) correction, and the values ascend through
//   sn = (1+k1) s1 / (1+k1 s1^2),  cn = c1 d1 / (1+k1 s1^2),
//   dn = (1-k1 s1^2) / (1+k1 s1^2).
// Every step is rational in the lower-level values, so nothing loses digits
// the way phase/asin chains do near the quarter periods. dn never touches
// the identity dn^2 = 1 - k^2 sn^2, which keeps that a meaningful check.
struct JacobiValues {
    double sn, cn, dn;
};

inline JacobiValues jacobi_real(double u, double k) {
    double ks[32];
    int m = 0;
    while (k > 1e-9 && m < 30) {
        double kp = std::sqrt((1 - k) * (1 + k));
        k = (1 - kp) / (1 + kp);
        ks[m++] = k;
        u /= 1 + k;
    }
    double s = std::sin(u), c = std::cos(u);
    double corr = 0.25 * k * k * (u - s * c);
    JacobiValues v{s - corr * c, c + corr * s, 1 - 0.5 * k * k * s * s};
    for (int i = m; i-- > 0;) {
        double k1 = ks[i], q = k1 * v.sn * v.sn;
        v = {(1 + k1) * v.sn / (1 + q), v.cn * v.dn / (1 + q), (1 - q) / (1 + q)};
    }
    return v;
}

// Rectangle [0,1] x [0,h] onto the unit disk. The aspect fixes the elliptic
// parameter through K(k')/(2K(k)) = h; z -> K(2z-1) sends the rectangle to
// the standard sn rectangle [-K,K] x [0,K'], and the Mobius
// w = (sqrt(k) sn - i)/(sqrt(k) sn + i) takes the upper half plane to the
// disk with the rectangle center landing on 0 (sn(iK'/2) = i/sqrt(k)).
struct EllipticParams {
    double h = 1, k = 0, K = 0, Kp = 0;
};

inline EllipticParams elliptic_params(double h) {
    if (!(h > 0)) throw Error("rectangle aspect must be positive");
    // K(k')/(2K(k)) decreases monotonically in k from +inf to 0
    auto aspect = [](double k) {
        return elliptic_K(std::sqrt((1 - k) * (1 + k))) / (2 * elliptic_K(k));
    };
    double lo = 1e-300, hi = 1 - 1e-16;
    for (int i = 0; i < 200 && hi - lo > 1e-17 * hi; ++i) {
        double mid = 0.5 * (lo + hi);
        (aspect(mid) > h ? lo : hi) = mid;
    }
    EllipticParams ep;
    ep.h = h;
    ep.k = 0.5 * (lo + hi);
    ep.K = elliptic_K(ep.k);
    ep.Kp = elliptic_K(std::sqrt((1 - ep.k) * (1 + ep.k)));
    return ep;
}

// Corner images on the circle: {-theta, theta, pi-theta, pi+theta} with
// theta = 2 atan(sqrt(k)), in the z1..z4 order of the rectangle template.
inline double disk_corner_angle(const EllipticParams& ep) {
    return 2 * std::atan(std::sqrt(ep.k));
}

inline Complex rect_to_disk(const EllipticParams& ep, Complex z) {
    const double pad = 1e-9;
    if (z.real() < -pad || z.real() > 1 + pad || z.imag() < -pad || z.imag() > ep.h + pad)
        throw Error("point outside the source rectangle");
    double k = ep.k, kp = std::sqrt((1 - k) * (1 + k));
    double x = ep.K * (2 * z.real() - 1);
    double y = 2 * ep.K * z.imag(); // = K' at the top edge

    // sn(x+iy) as a numerator/denominator pair (A&S 16.21.1). The pair
    // degenerates to 0/0 at the pole iK', so points in the upper half of the
    // rectangle go through 1/sn(u) = k sn(u - iK') instead; either way the
    // Mobius is evaluated projectively and never forms an infinity.
    bool flip = y > ep.Kp / 2;
    JacobiValues re = jacobi_real(x, k);
    JacobiValues im = jacobi_real(flip ? y - ep.Kp : y, kp);
    double den = im.cn * im.cn + k * k * re.sn * re.sn * im.sn * im.sn;
    Complex num{re.sn * im.dn, re.cn * re.dn * im.sn * im.cn};
    double rk = std::sqrt(k);
    Complex a, b; // w = a / b
    if (flip) {
        // t = 1/sn = k sn(x + i(y-K')): w = (sqrt(k) den - i k num) / (...)
        a = rk * den - Complex{0, 1} * (k * num);
        b = rk * den + Complex{0, 1} * (k * num);
    } else {
        a = rk * num - Complex{0, 1} * den;
        b = rk * num + Complex{0, 1} * den;
    }
    return a / b;
}

// Harmonic potential of the concentric condenser: 1 on |p| = r_in, 0 on
// |p| = r_out, log-linear in between.
inline double annulus_potential(double r_in, double r_out, Vec2 p) {
    double r = p.norm();
    const double pad = 1e-12 * r_out;
    if (!(r_in < r_out) || r < r_in - pad || r > r_out + pad)
        throw Error("point outside the annulus");
    return std::log(r / r_out) / std::log(r_in / r_out);
}

} // namespace confmap::oracles
