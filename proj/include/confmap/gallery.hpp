#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "confmap/problem.hpp"

namespace confmap::gallery {

// Rectangle [0,1] x [0,h]; the map is the identity and the modulus h.
// Corners (1,h), (0,h), (0,0), (1,0) in z1..z4 order.
inline Domain rectangle(double h = 1.0) {
    TemplateBuilder tb;
    int a = tb.vertex({0, 0}), b = tb.vertex({1, 0});
    int c = tb.vertex({1, h}), d = tb.vertex({0, h});
    tb.edge(a, b, ArcTag::gamma3);
    tb.edge(b, c, ArcTag::gamma4);
    tb.edge(c, d, ArcTag::gamma1);
    tb.edge(d, a, ArcTag::gamma2);
    tb.quad(a, b, c, d);
    return tb.finish(DomainKind::quadrilateral, {c, d, a, b});
}

// Quadrilateral on the closed unit disk with corners at the given
// counterclockwise angles. Eight ring blocks between the circle and a half
// radius octagon (stations at the corners and arc midpoints) plus four
// blocks fanning the octagon from the center; each ring block touches
// exactly one corner, which is marked: the boundary condition changes type
// there, so the potentials behave like r^(1/2) and need grading.
inline Domain disk_quad(std::array<double, 4> th = {PI / 4, 3 * PI / 4, 5 * PI / 4,
                                                    7 * PI / 4}) {
    for (int j = 0; j < 4; ++j)
        if (j > 0 && th[j] <= th[j - 1])
            throw GeometryError("disk corner angles must increase");
    if (th[3] >= th[0] + 2 * PI) throw GeometryError("disk corner angles must span < 2 pi");

    TemplateBuilder tb;
    int circle = tb.curve(Curve::circular_arc({0, 0}, 1.0, th[0], th[0] + 2 * PI));
    auto tof = [&](double ang) { return (ang - th[0]) / (2 * PI); };

    double ang[9];
    for (int j = 0; j < 4; ++j) {
        double next = j == 3 ? th[0] + 2 * PI : th[j + 1];
        ang[2 * j] = th[j];
        ang[2 * j + 1] = 0.5 * (th[j] + next);
    }
    ang[8] = th[0] + 2 * PI;

    int O = tb.vertex({0, 0});
    int in[8], out[8];
    for (int k = 0; k < 8; ++k) {
        Vec2 u{std::cos(ang[k]), std::sin(ang[k])};
        in[k] = tb.vertex(u * 0.5);
        out[k] = tb.vertex(u);
    }
    ArcTag g[4] = {ArcTag::gamma1, ArcTag::gamma2, ArcTag::gamma3, ArcTag::gamma4};
    for (int k = 0; k < 8; ++k)
        tb.edge(out[k], out[(k + 1) % 8], circle, tof(ang[k]), tof(ang[k + 1]), g[k / 2]);
    for (int k = 0; k < 8; ++k) tb.quad(in[k], out[k], out[(k + 1) % 8], in[(k + 1) % 8]);
    for (int j = 0; j < 4; ++j) tb.quad(O, in[2 * j], in[2 * j + 1], in[(2 * j + 2) % 8]);
    for (int j = 0; j < 4; ++j) tb.mark(out[2 * j]);
    return tb.finish(DomainKind::quadrilateral, {out[0], out[2], out[4], out[6]});
}

// Unit-disk flavor with the boundary r(th) = 0.8 + 0.1 cos(6 th) and corners
// on the two axes; same block layout as disk_quad but with sixteen sectors:
// the boundary wiggles on a 60-degree wavelength and the p-version converges
// visibly faster once each boundary element spans well under one wiggle.
// The modulus is 1 by symmetry.
inline Domain flower_quad() {
    TemplateBuilder tb;
    auto rho = [](double th) { return 0.8 + 0.1 * std::cos(6 * th); };
    auto bnd = [&](double th) {
        return Vec2{rho(th) * std::cos(th), rho(th) * std::sin(th)};
    };

    const int n = 16;
    int O = tb.vertex({0, 0});
    int in[n], out[n];
    for (int k = 0; k < n; ++k) {
        double a = 2 * PI * k / n;
        in[k] = tb.vertex(Vec2{std::cos(a), std::sin(a)} * 0.35);
        out[k] = tb.vertex(bnd(a));
    }
    ArcTag g[4] = {ArcTag::gamma1, ArcTag::gamma2, ArcTag::gamma3, ArcTag::gamma4};
    for (int k = 0; k < n; ++k) {
        double a = 2 * PI * k / n, b = 2 * PI * (k + 1) / n;
        int c = tb.curve(Curve::fit([&](double s) { return bnd(a + s * (b - a)); }, 16));
        tb.edge(out[k], out[(k + 1) % n], c, 0, 1, g[k / 4]);
    }
    for (int k = 0; k < n; ++k) tb.quad(in[k], out[k], out[(k + 1) % n], in[(k + 1) % n]);
    for (int j = 0; j < n / 2; ++j) tb.quad(O, in[2 * j], in[2 * j + 1], in[(2 * j + 2) % n]);
    for (int j = 0; j < 4; ++j) tb.mark(out[j * n / 4]);
    return tb.finish(DomainKind::quadrilateral, {out[0], out[4], out[8], out[12]});
}

// Unit disk with two bites cut away by circular arcs orthogonal to the
// boundary circle: corners z1..z4 = e^{ia}, e^{ib}, e^{ic}, 1 where the
// bites join (1, e^{ia}) and (e^{ib}, e^{ic}). The corner angles are right
// angles, but a bite leaves its endpoints radially, so the spokes next to
// the corners are rotated away from the bites to keep the blocks open and
// each bite is split at its deepest point, where the spoke is radial again.
inline Domain circular_quad(double a = PI / 12, double b = 17 * PI / 12,
                            double c = 3 * PI / 2) {
    if (!(0 < a && a < b && b < c && c < 2 * PI))
        throw GeometryError("circular quadrilateral needs 0 < a < b < c < 2 pi");
    if (a >= PI / 6 || c - b >= PI / 6 || b - a <= PI || 2 * PI - c <= PI / 4)
        throw GeometryError("circular quadrilateral layout expects short bites");

    // circle through e^{i al}, e^{i be} meeting the unit circle at right
    // angles: center e^{i (al+be)/2} / cos((be-al)/2), radius tan((be-al)/2)
    auto ortho_arc = [](double al, double be) {
        double half = 0.5 * (be - al);
        Vec2 ctr = Vec2{std::cos(0.5 * (al + be)), std::sin(0.5 * (al + be))} / std::cos(half);
        double rho = std::tan(half);
        double f0 = std::atan2(std::sin(al) - ctr.y, std::cos(al) - ctr.x);
        double f1 = std::atan2(std::sin(be) - ctr.y, std::cos(be) - ctr.x);
        if (f1 - f0 > PI) f1 -= 2 * PI;
        if (f1 - f0 < -PI) f1 += 2 * PI;
        return Curve::circular_arc(ctr, rho, f0, f1);
    };
    Curve bite1 = ortho_arc(0, a), bite2 = ortho_arc(b, c);

    // outer stations: corners at 0, 2, 8, 10; bite midpoints at 1, 9; five
    // stations splitting the long arc (z1,z2) and one splitting (z3,z4)
    double ang[12];
    ang[0] = 0;
    ang[2] = a;
    for (int j = 1; j <= 5; ++j) ang[2 + j] = a + j * (b - a) / 6;
    ang[8] = b;
    ang[10] = c;
    ang[11] = 0.5 * (c + 2 * PI);

    double s1 = 1.8 * a, s2 = 1.8 * (c - b);
    double ia[12];
    ia[0] = -s1;
    ia[1] = 0.5 * a;
    ia[2] = a + s1;
    ia[8] = b - s2;
    ia[9] = 0.5 * (b + c);
    ia[10] = c + s2;
    ia[11] = 0.5 * (c + 2 * PI);
    for (int j = 3; j <= 7; ++j) ia[j] = ia[2] + (j - 2) * (ia[8] - ia[2]) / 6;

    TemplateBuilder tb;
    int O = tb.vertex({0, 0});
    int in[12], out[12];
    for (int k = 0; k < 12; ++k) {
        in[k] = tb.vertex(Vec2{std::cos(ia[k]), std::sin(ia[k])} * 0.5);
        out[k] = k == 1   ? tb.vertex(bite1.point(0.5))
                 : k == 9 ? tb.vertex(bite2.point(0.5))
                          : tb.vertex({std::cos(ang[k]), std::sin(ang[k])});
    }
    int circle = tb.curve(Curve::circular_arc({0, 0}, 1.0, 0, 2 * PI));
    int cb1 = tb.curve(bite1), cb2 = tb.curve(bite2);
    auto tof = [](double t) { return t / (2 * PI); };
    tb.edge(out[0], out[1], cb1, 0, 0.5, ArcTag::gamma4);
    tb.edge(out[1], out[2], cb1, 0.5, 1, ArcTag::gamma4);
    for (int k = 2; k < 8; ++k)
        tb.edge(out[k], out[k + 1], circle, tof(ang[k]), tof(ang[k + 1]), ArcTag::gamma1);
    tb.edge(out[8], out[9], cb2, 0, 0.5, ArcTag::gamma2);
    tb.edge(out[9], out[10], cb2, 0.5, 1, ArcTag::gamma2);
    tb.edge(out[10], out[11], circle, tof(ang[10]), tof(ang[11]), ArcTag::gamma3);
    tb.edge(out[11], out[0], circle, tof(ang[11]), 1.0, ArcTag::gamma3);
    for (int k = 0; k < 12; ++k) tb.quad(in[k], out[k], out[(k + 1) % 12], in[(k + 1) % 12]);
    for (int j = 0; j < 6; ++j) tb.quad(O, in[2 * j], in[2 * j + 1], in[(2 * j + 2) % 12]);
    int corner[4] = {out[2], out[8], out[10], out[0]};
    for (int j = 0; j < 4; ++j) tb.mark(corner[j], 4);
    return tb.finish(DomainKind::quadrilateral, {out[2], out[8], out[10], out[0]});
}

// Square (-1,1)^2 whose left side is replaced by the inward-bulging curve
// -1 + cos^3 t + i sin^3 t; the tip at the origin is a full 2 pi cusp of the
// domain and the curve meets the corners -1 +- i tangentially, so those
// three vertices get deep grading. Corners z1..z4 = 1-i, 1+i, -1+i, -1-i.
inline Domain asteroid_quad() {
    auto cusp = [](double t) {
        double ct = std::cos(t), st = std::sin(t);
        return Vec2{-1 + ct * ct * ct, st * st * st};
    };
    auto piece = [&](double t0, double t1) {
        return Curve::fit([&](double s) { return cusp(t0 + s * (t1 - t0)); }, 20);
    };

    TemplateBuilder tb;
    int z1 = tb.vertex({1, -1}), z2 = tb.vertex({1, 1});
    int z3 = tb.vertex({-1, 1}), z4 = tb.vertex({-1, -1});
    int C = tb.vertex({0, 0});
    int T = tb.vertex({0, 1}), Bo = tb.vertex({0, -1});
    int S1 = tb.vertex({0, 0.5}), S2 = tb.vertex({0, -0.5});
    int R1 = tb.vertex({1, 0.5}), R0 = tb.vertex({1, 0}), R2 = tb.vertex({1, -0.5});
    Vec2 u = cusp(PI / 4);
    int U = tb.vertex(u), L = tb.vertex({u.x, -u.y});
    int Mt = tb.vertex({-0.5, 1}), Mb = tb.vertex({-0.5, -1});
    Vec2 g = (u + Vec2{0, 0.5} + Vec2{-0.5, 1}) / 3.0;
    int G1 = tb.vertex(g), G2 = tb.vertex({g.x, -g.y});

    tb.edge(z1, R2, ArcTag::gamma1);
    tb.edge(R2, R0, ArcTag::gamma1);
    tb.edge(R0, R1, ArcTag::gamma1);
    tb.edge(R1, z2, ArcTag::gamma1);
    tb.edge(z2, T, ArcTag::gamma2);
    tb.edge(T, Mt, ArcTag::gamma2);
    tb.edge(Mt, z3, ArcTag::gamma2);
    // r'(t) = 0 at the cusp and at z3/z4: distances there grow with the
    // square of the parameter, which the refinement must counteract
    int a0 = tb.edge(z3, U, tb.curve(piece(PI / 2, PI / 4)), 0, 1, ArcTag::gamma3);
    int a1 = tb.edge(U, C, tb.curve(piece(PI / 4, 0)), 0, 1, ArcTag::gamma3);
    int a2 = tb.edge(C, L, tb.curve(piece(0, -PI / 4)), 0, 1, ArcTag::gamma3);
    int a3 = tb.edge(L, z4, tb.curve(piece(-PI / 4, -PI / 2)), 0, 1, ArcTag::gamma3);
    tb.edge_order(a0, 2, 1);
    tb.edge_order(a1, 1, 2);
    tb.edge_order(a2, 2, 1);
    tb.edge_order(a3, 1, 2);
    tb.edge(z4, Mb, ArcTag::gamma4);
    tb.edge(Mb, Bo, ArcTag::gamma4);
    tb.edge(Bo, z1, ArcTag::gamma4);

    // left side: two curved triangles, each split into three quads
    tb.quad(z3, U, G1, Mt);
    tb.quad(C, S1, G1, U);
    tb.quad(T, Mt, G1, S1);
    tb.quad(C, L, G2, S2);
    tb.quad(z4, Mb, G2, L);
    tb.quad(Bo, S2, G2, Mb);
    // right column
    tb.quad(S1, R1, z2, T);
    tb.quad(C, R0, R1, S1);
    tb.quad(S2, R2, R0, C);
    tb.quad(Bo, z1, R2, S2);

    tb.mark(C);
    tb.mark(z3);
    tb.mark(z4);
    return tb.finish(DomainKind::quadrilateral, {z1, z2, z3, z4});
}

struct RingDomain {
    Domain ring;
    std::vector<int> cut; // vertex chain, inner loop to outer loop
};

// Concentric annulus r < |z| < 1 in four quarter blocks, cut along the
// positive real axis. Exact solution material: capacity 2 pi / log(1/r)
// and annulus map w = r / z.
inline RingDomain annulus(double r) {
    if (r <= 0 || r >= 1) throw GeometryError("annulus radius must be in (0,1)");
    TemplateBuilder tb;
    int ci = tb.curve(Curve::circular_arc({0, 0}, r, 0, 2 * PI));
    int co = tb.curve(Curve::circular_arc({0, 0}, 1.0, 0, 2 * PI));
    int I[4], O[4];
    for (int k = 0; k < 4; ++k) {
        double a = k * PI / 2;
        I[k] = tb.vertex(Vec2{std::cos(a), std::sin(a)} * r);
        O[k] = tb.vertex({std::cos(a), std::sin(a)});
    }
    for (int k = 0; k < 4; ++k) {
        tb.edge(I[k], I[(k + 1) % 4], ci, k / 4.0, (k + 1) / 4.0, ArcTag::inner);
        tb.edge(O[k], O[(k + 1) % 4], co, k / 4.0, (k + 1) / 4.0, ArcTag::outer);
    }
    for (int k = 0; k < 4; ++k) tb.quad(I[k], O[k], O[(k + 1) % 4], I[(k + 1) % 4]);
    return {tb.finish(DomainKind::ring), {I[0], O[0]}};
}

// Square [-1.5,1.5]^2 with the circle of radius 0.6 removed, eight radial
// blocks, cut along the positive real axis. The square corners are right
// angles of a single Dirichlet condition and need no grading.
inline RingDomain circle_in_square() {
    TemplateBuilder tb;
    const double r = 0.6, s = 1.5;
    int ci = tb.curve(Curve::circular_arc({0, 0}, r, 0, 2 * PI));
    Vec2 outer[8] = {{s, 0}, {s, s}, {0, s}, {-s, s}, {-s, 0}, {-s, -s}, {0, -s}, {s, -s}};
    int C[8], S[8];
    for (int k = 0; k < 8; ++k) {
        double a = k * PI / 4;
        C[k] = tb.vertex(Vec2{std::cos(a), std::sin(a)} * r);
        S[k] = tb.vertex(outer[k]);
    }
    for (int k = 0; k < 8; ++k) {
        tb.edge(C[k], C[(k + 1) % 8], ci, k / 8.0, (k + 1) / 8.0, ArcTag::inner);
        tb.edge(S[k], S[(k + 1) % 8], ArcTag::outer);
    }
    for (int k = 0; k < 8; ++k) tb.quad(C[k], S[k], S[(k + 1) % 8], C[(k + 1) % 8]);
    return {tb.finish(DomainKind::ring), {C[0], S[0]}};
}

// Square [-1.5,1.5]^2 with the flower r(th) = 0.8 + 0.1 cos(6 th) removed,
// cut along the positive real axis. Sixteen sectors (one boundary element
// per half wiggle, as in flower_quad), split radially by a circle at 1.1:
// without the collar the sector blocks reaching the square corners are the
// longest elements touching the flower and their approximation is limited
// by the continuation of the potential a short way past the wavy boundary.
// Both boundary components are smooth, so nothing is marked.
inline RingDomain flower_in_square() {
    TemplateBuilder tb;
    auto bnd = [](double th) {
        double rho = 0.8 + 0.1 * std::cos(6 * th);
        return Vec2{rho * std::cos(th), rho * std::sin(th)};
    };
    const double s = 1.5, rc = 1.1;
    const int n = 16;
    int F[n], C[n], S[n];
    int circ = tb.curve(Curve::circular_arc({0, 0}, rc, 0, 2 * PI));
    for (int k = 0; k < n; ++k) {
        double a = 2 * PI * k / n;
        Vec2 u{std::cos(a), std::sin(a)};
        F[k] = tb.vertex(bnd(a));
        C[k] = tb.vertex(u * rc);
        S[k] = tb.vertex(u * (s / std::max(std::abs(u.x), std::abs(u.y))));
    }
    for (int k = 0; k < n; ++k) {
        double a0 = 2 * PI * k / n, a1 = 2 * PI * (k + 1) / n;
        int cp = tb.curve(Curve::fit([&](double t) { return bnd(a0 + t * (a1 - a0)); }, 16));
        tb.edge(F[k], F[(k + 1) % n], cp, 0, 1, ArcTag::inner);
        tb.edge(C[k], C[(k + 1) % n], circ, k / (double)n, (k + 1) / (double)n);
        tb.edge(S[k], S[(k + 1) % n], ArcTag::outer);
    }
    for (int k = 0; k < n; ++k) {
        tb.quad(F[k], C[k], C[(k + 1) % n], F[(k + 1) % n]);
        tb.quad(C[k], S[k], S[(k + 1) % n], C[(k + 1) % n]);
    }
    return {tb.finish(DomainKind::ring), {F[0], C[0], S[0]}};
}

// Square [-1.5,1.5]^2 with a plus-shaped hole: arms of half width a reaching
// +-b along both axes. Each quadrant is tiled by eleven axis-aligned
// rectangles (the square between the arms is split at the midlines so no
// rectangle touches two marked corners), so the eight arm-end corners --
// which turn 3 pi / 2 inside the ring and are marked -- meet three blocks
// of 90 degrees each. The graded layers approximate the corner singularity
// far better in right-angle blocks than in the skewed blocks a radial
// 16-block layout would give. Cut from (b,0) to (1.5,0).
inline RingDomain cross_in_square(double a = 0.5, double b = 1.2) {
    const double s = 1.5;
    if (!(0 < a && a < b && b < s)) throw GeometryError("cross needs 0 < a < b < 1.5");
    const double m = (a + b) / 2;
    TemplateBuilder tb;
    auto rot = [](Vec2 v, int q) {
        while (q--) v = {-v.y, v.x};
        return v;
    };
    int H[24], S[32], P[4], W1[4], W2[4], C[4];
    for (int q = 0; q < 4; ++q) {
        Vec2 hv[6] = {{b, 0}, {b, a}, {m, a}, {a, a}, {a, m}, {a, b}};
        Vec2 sv[8] = {{s, 0}, {s, a}, {s, m}, {s, b}, {s, s}, {b, s}, {m, s}, {a, s}};
        for (int i = 0; i < 6; ++i) H[6 * q + i] = tb.vertex(rot(hv[i], q));
        for (int i = 0; i < 8; ++i) S[8 * q + i] = tb.vertex(rot(sv[i], q));
        P[q] = tb.vertex(rot({b, b}, q));
        W1[q] = tb.vertex(rot({b, m}, q));
        W2[q] = tb.vertex(rot({m, b}, q));
        C[q] = tb.vertex(rot({m, m}, q));
    }
    for (int k = 0; k < 24; ++k) tb.edge(H[k], H[(k + 1) % 24], ArcTag::inner);
    for (int k = 0; k < 32; ++k) tb.edge(S[k], S[(k + 1) % 32], ArcTag::outer);
    for (int q = 0; q < 4; ++q) {
        int h0 = H[6 * q], h1 = H[6 * q + 1], v1 = H[6 * q + 2], h2 = H[6 * q + 3];
        int v2 = H[6 * q + 4], h3 = H[6 * q + 5], h4 = H[(6 * q + 6) % 24];
        int s0 = S[8 * q], s1 = S[8 * q + 1], s2 = S[8 * q + 2], s3 = S[8 * q + 3];
        int s5 = S[8 * q + 5], s6 = S[8 * q + 6], s7 = S[8 * q + 7];
        int s4 = S[8 * q + 4], s8 = S[(8 * q + 8) % 32];
        tb.quad(h0, s0, s1, h1);
        tb.quad(h1, s1, s2, W1[q]);
        tb.quad(W1[q], s2, s3, P[q]);
        tb.quad(P[q], s3, s4, s5);
        tb.quad(W2[q], P[q], s5, s6);
        tb.quad(h3, W2[q], s6, s7);
        tb.quad(h3, s7, s8, h4);
        tb.quad(h2, v1, C[q], v2);
        tb.quad(v1, h1, W1[q], C[q]);
        tb.quad(C[q], W1[q], P[q], W2[q]);
        tb.quad(v2, C[q], W2[q], h3);
    }
    for (int q = 0; q < 4; ++q) {
        tb.mark(H[6 * q + 1]);
        tb.mark(H[6 * q + 5]);
    }
    return {tb.finish(DomainKind::ring), {H[0], S[0]}};
}

// Square [0,1] x [-1/2,1/2] with a drop-shaped hole; the drop's Bezier
// control points span exactly that box. The tip at (0.1,0) points left and
// the ring turns a full 2 pi around it; spokes toward the collar split that
// turn into four wedge fans of roughly 90 degrees each, which the graded
// layers there need to approximate the r^(1/2) behavior well. The branch on
// each side is split at t = 0.3, 0.6, 0.85 with a collar point over every
// anchor, giving twelve azimuthal columns between the collar loop and the
// square: the conjugate potential winds once around the ring and its error
// stays spread thin only when no column swallows too large an angular slice.
// Cut from the nose of the drop (0.7328125, 0) to (1,0).
inline RingDomain droplet_in_square() {
    auto drop = [](double t) {
        double t2 = t * t;
        double x = ((45 * t2 + 75) * t2 * t2 - 525 * t2 + 469) / 640;
        double w = t2 - 1;
        return Vec2{x, (15.0 / 32) * t * w * w};
    };
    auto piece = [&](double t0, double t1) {
        return Curve::fit([&](double u) { return drop(t0 + u * (t1 - t0)); }, 10);
    };
    TemplateBuilder tb;
    int D0 = tb.vertex(drop(-1));
    int Dml = tb.vertex(drop(-0.85)), Dl = tb.vertex(drop(-0.6)), Dbl = tb.vertex(drop(-0.3));
    int N = tb.vertex(drop(0));
    int Dbu = tb.vertex(drop(0.3)), Du = tb.vertex(drop(0.6)), Dmu = tb.vertex(drop(0.85));
    Vec2 sq[12] = {{1, 0},   {1, 0.5},    {0.65, 0.5},  {0.35, 0.5},
                   {0.15, 0.5}, {0, 0.5}, {0, 0},       {0, -0.5},
                   {0.15, -0.5}, {0.35, -0.5}, {0.65, -0.5}, {1, -0.5}};
    int S[12];
    for (int k = 0; k < 12; ++k) S[k] = tb.vertex(sq[k]);
    int K3 = tb.vertex({0.87, 0});
    int Kbu = tb.vertex({0.72, 0.31}), Kdu = tb.vertex({0.46, 0.35});
    int Kmu = tb.vertex({0.26, 0.33}), K1 = tb.vertex({0.14, 0.32});
    int Ku = tb.vertex({0.04, 0.22}), K0 = tb.vertex({0.05, 0});
    int Kl = tb.vertex({0.04, -0.22}), K5 = tb.vertex({0.14, -0.32});
    int Kml = tb.vertex({0.26, -0.33}), Kdl = tb.vertex({0.46, -0.35});
    int Kbl = tb.vertex({0.72, -0.31});

    tb.edge(D0, Dml, tb.curve(piece(-1, -0.85)), 0, 1, ArcTag::inner);
    tb.edge(Dml, Dl, tb.curve(piece(-0.85, -0.6)), 0, 1, ArcTag::inner);
    tb.edge(Dl, Dbl, tb.curve(piece(-0.6, -0.3)), 0, 1, ArcTag::inner);
    tb.edge(Dbl, N, tb.curve(piece(-0.3, 0)), 0, 1, ArcTag::inner);
    tb.edge(N, Dbu, tb.curve(piece(0, 0.3)), 0, 1, ArcTag::inner);
    tb.edge(Dbu, Du, tb.curve(piece(0.3, 0.6)), 0, 1, ArcTag::inner);
    tb.edge(Du, Dmu, tb.curve(piece(0.6, 0.85)), 0, 1, ArcTag::inner);
    tb.edge(Dmu, D0, tb.curve(piece(0.85, 1)), 0, 1, ArcTag::inner);
    for (int k = 0; k < 12; ++k) tb.edge(S[k], S[(k + 1) % 12], ArcTag::outer);

    tb.quad(D0, Dmu, Kmu, K1); // wedges over the upper branch
    tb.quad(Dmu, Du, Kdu, Kmu);
    tb.quad(Du, Dbu, Kbu, Kdu);
    tb.quad(Dbu, N, K3, Kbu);
    tb.quad(D0, K1, Ku, K0); // upper left wedge
    tb.quad(D0, K0, Kl, K5); // lower left wedge
    tb.quad(D0, K5, Kml, Dml); // wedges under the lower branch
    tb.quad(Dml, Kml, Kdl, Dl);
    tb.quad(Dl, Kdl, Kbl, Dbl);
    tb.quad(Dbl, Kbl, K3, N);
    int col[13] = {K3, Kbu, Kdu, Kmu, K1, Ku, K0, Kl, K5, Kml, Kdl, Kbl, K3};
    for (int k = 0; k < 12; ++k) tb.quad(col[k], S[k], S[(k + 1) % 12], col[k + 1]);
    tb.mark(D0);
    return {tb.finish(DomainKind::ring), {N, K3, S[0]}};
}

// L-shaped region ([0,3]x[0,1] union [0,1]x[0,2]) with the circle of radius
// 0.2 about (1.6, 0.4) removed. A square collar around the circle reaches
// the bottom edge and the rest of the L is tiled by axis-aligned blocks,
// split at x = 1 so the reentrant corner (1,1) is a block corner (marked).
// Cut straight down from the circle to (1.6, 0).
inline RingDomain circle_in_L() {
    const Vec2 z0{1.6, 0.4};
    const double r = 0.2;
    TemplateBuilder tb;
    int ci = tb.curve(Curve::circular_arc(z0, r, 0, 2 * PI));
    int C[8];
    for (int k = 0; k < 8; ++k) {
        double a = k * PI / 4;
        C[k] = tb.vertex(z0 + Vec2{std::cos(a), std::sin(a)} * r);
    }
    for (int k = 0; k < 8; ++k)
        tb.edge(C[k], C[(k + 1) % 8], ci, k / 8.0, (k + 1) / 8.0, ArcTag::inner);

    int G0 = tb.vertex({2.0, 0.4}), G1 = tb.vertex({2.0, 0.8}), G2 = tb.vertex({1.6, 0.8});
    int G3 = tb.vertex({1.2, 0.8}), G4 = tb.vertex({1.2, 0.4}), G5 = tb.vertex({1.2, 0.0});
    int G6 = tb.vertex({1.6, 0.0}), G7 = tb.vertex({2.0, 0.0});
    int A = tb.vertex({0, 0}), B = tb.vertex({3, 0}), Cr = tb.vertex({3, 1});
    int D = tb.vertex({1, 1}), E = tb.vertex({1, 2}), F = tb.vertex({0, 2});
    int V10 = tb.vertex({1, 0}), V34 = tb.vertex({3, 0.4}), V38 = tb.vertex({3, 0.8});
    int V21 = tb.vertex({2, 1}), V161 = tb.vertex({1.6, 1}), V121 = tb.vertex({1.2, 1});
    int V01 = tb.vertex({0, 1}), V008 = tb.vertex({0, 0.8}), V004 = tb.vertex({0, 0.4});
    int V104 = tb.vertex({1, 0.4}), V108 = tb.vertex({1, 0.8});

    int loop[19] = {A,    V10,  G5, G6,   G7,   B,    V34,  V38, Cr, V21,
                    V161, V121, D,  E,    F,    V01,  V008, V004, A};
    for (int k = 0; k < 18; ++k) tb.edge(loop[k], loop[k + 1], ArcTag::outer);

    int G[8] = {G0, G1, G2, G3, G4, G5, G6, G7};
    for (int k = 0; k < 8; ++k) tb.quad(C[k], G[k], G[(k + 1) % 8], C[(k + 1) % 8]);
    tb.quad(G7, B, V34, G0);
    tb.quad(G0, V34, V38, G1);
    tb.quad(G1, V38, Cr, V21);
    tb.quad(G2, G1, V21, V161);
    tb.quad(G3, G2, V161, V121);
    tb.quad(V108, G3, V121, D);
    tb.quad(V104, G4, G3, V108);
    tb.quad(V10, G5, G4, V104);
    tb.quad(A, V10, V104, V004);
    tb.quad(V004, V104, V108, V008);
    tb.quad(V008, V108, D, V01);
    tb.quad(V01, D, E, F);
    tb.mark(D);
    return {tb.finish(DomainKind::ring), {C[6], G6}};
}

// Regular pentagon with unit apothem (corners at distance sec(pi/5)) minus
// the concentric disk of radius r, rings of blocks between rays of the
// common center. Rays run through the corners and the edge feet; when the
// foot gap 1-r is thin relative to the corner gap, extra rays accumulate
// toward each foot geometrically so no block straddles the full thickness
// change. When the hole is small the log-like potential varies across a
// large radial ratio, so intermediate collar rings cap the ratio per block
// near 3. Cut along the positive real axis, which passes through a corner.
inline RingDomain disk_in_pentagon(double r) {
    const double R = 1.0 / std::cos(PI / 5);
    if (r <= 0 || r >= 1) throw GeometryError("pentagon hole radius must be in (0,1)");
    const double step = PI / 5;
    double grel = (1 - r) / (R - r);
    int J = std::clamp((int)std::ceil(std::log(grel) / std::log(0.3)), 0, 8);

    std::vector<double> rays;
    for (int k = 0; k < 5; ++k) {
        double corner = 2 * PI * k / 5, foot = corner + step;
        rays.push_back(corner);
        for (int j = 1; j <= J; ++j) rays.push_back(foot - step * std::pow(0.3, j));
        rays.push_back(foot);
        for (int j = J; j >= 1; --j) rays.push_back(foot + step * std::pow(0.3, j));
    }
    int n = (int)rays.size();
    int L = std::max(1, (int)std::ceil(std::log(1 / r) / std::log(3.2)));

    TemplateBuilder tb;
    int ci = tb.curve(Curve::circular_arc({0, 0}, r, 0, 2 * PI));
    std::vector<std::vector<int>> ring(L + 1, std::vector<int>(n));
    for (int k = 0; k < n; ++k) {
        double th = rays[k];
        double foot = step * (2 * std::floor(th / (2 * step)) + 1);
        double d = 1.0 / std::cos(th - foot);
        Vec2 u{std::cos(th), std::sin(th)};
        for (int j = 0; j <= L; ++j) {
            double rad = j == L ? d : r * std::pow(1 / r, double(j) / L);
            ring[j][k] = tb.vertex(u * rad);
        }
    }
    for (int k = 0; k < n; ++k) {
        int k1 = (k + 1) % n;
        tb.edge(ring[0][k], ring[0][k1], ci, rays[k] / (2 * PI), k1 ? rays[k1] / (2 * PI) : 1.0,
                ArcTag::inner);
        tb.edge(ring[L][k], ring[L][k1], ArcTag::outer);
    }
    for (int j = 0; j < L; ++j)
        for (int k = 0; k < n; ++k) {
            int k1 = (k + 1) % n;
            tb.quad(ring[j][k], ring[j + 1][k], ring[j + 1][k1], ring[j][k1]);
        }
    for (int k = 0; k < 5; ++k) tb.mark(ring[L][k * (2 * J + 2)], 6);
    std::vector<int> cut(L + 1);
    for (int j = 0; j <= L; ++j) cut[j] = ring[j][0];
    return {tb.finish(DomainKind::ring), cut};
}

} // namespace confmap::gallery
