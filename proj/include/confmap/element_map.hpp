#pragma once

#include <array>

#include "confmap/mesh.hpp"

namespace confmap {

struct Jacobian {
    Vec2 dxi, deta;
    double det() const { return dxi.cross(deta); }
};

// Geometry of one element: bilinear for straight-sided elements, transfinite
// interpolation of the side curves otherwise. Side parameters run in the
// same intrinsic directions as the shape functions (side 0: v0->v1 by xi,
// side 1: v1->v2 by eta, side 2: v3->v2 by xi, side 3: v0->v3 by eta).
class ElementMap {
public:
    ElementMap(const Mesh& m, int elem) {
        const MeshElement& el = m.elems[elem];
        for (int i = 0; i < 4; ++i) corner_[i] = m.xy[el.v[i]];
        curved_ = false;
        // traversal side s -> intrinsic direction: sides 2 and 3 reverse
        for (int s = 0; s < 4; ++s) {
            const MeshEdge& ed = m.edges[el.edge[s]];
            side_[s].curve = ed.curve >= 0 ? &m.domain.curves[ed.curve] : nullptr;
            if (!side_[s].curve) continue;
            curved_ = true;
            bool fwd = m.edge_forward(elem, s); // traversal v[s] -> v[s+1]
            if (s >= 2) fwd = !fwd;             // intrinsic runs against traversal
            side_[s].ta = fwd ? ed.t0 : ed.t1;
            side_[s].tb = fwd ? ed.t1 : ed.t0;
        }
    }

    bool curved() const { return curved_; }
    Vec2 corner(int i) const { return corner_[i]; }

    Vec2 point(double xi, double eta) const {
        if (!curved_) return bilinear(xi, eta);
        Vec2 p = side_point(0, xi, corner_[0], corner_[1]) * (0.5 * (1 - eta)) +
                 side_point(2, xi, corner_[3], corner_[2]) * (0.5 * (1 + eta)) +
                 side_point(3, eta, corner_[0], corner_[3]) * (0.5 * (1 - xi)) +
                 side_point(1, eta, corner_[1], corner_[2]) * (0.5 * (1 + xi));
        return p - bilinear(xi, eta);
    }

    Jacobian jacobian(double xi, double eta) const {
        if (!curved_) {
            Jacobian J;
            J.dxi = (corner_[1] - corner_[0]) * (0.25 * (1 - eta)) +
                    (corner_[2] - corner_[3]) * (0.25 * (1 + eta));
            J.deta = (corner_[3] - corner_[0]) * (0.25 * (1 - xi)) +
                     (corner_[2] - corner_[1]) * (0.25 * (1 + xi));
            return J;
        }
        Jacobian J;
        Vec2 c0 = side_point(0, xi, corner_[0], corner_[1]);
        Vec2 c2 = side_point(2, xi, corner_[3], corner_[2]);
        Vec2 c1 = side_point(1, eta, corner_[1], corner_[2]);
        Vec2 c3 = side_point(3, eta, corner_[0], corner_[3]);
        Vec2 d0 = side_deriv(0, xi, corner_[0], corner_[1]);
        Vec2 d2 = side_deriv(2, xi, corner_[3], corner_[2]);
        Vec2 d1 = side_deriv(1, eta, corner_[1], corner_[2]);
        Vec2 d3 = side_deriv(3, eta, corner_[0], corner_[3]);
        J.dxi = d0 * (0.5 * (1 - eta)) + d2 * (0.5 * (1 + eta)) + (c1 - c3) * 0.5;
        J.deta = (c2 - c0) * 0.5 + d3 * (0.5 * (1 - xi)) + d1 * (0.5 * (1 + xi));
        Jacobian B;
        B.dxi = (corner_[1] - corner_[0]) * (0.25 * (1 - eta)) +
                (corner_[2] - corner_[3]) * (0.25 * (1 + eta));
        B.deta = (corner_[3] - corner_[0]) * (0.25 * (1 - xi)) +
                 (corner_[2] - corner_[1]) * (0.25 * (1 + xi));
        J.dxi -= B.dxi;
        J.deta -= B.deta;
        return J;
    }

private:
    struct Side {
        const Curve* curve = nullptr;
        double ta = 0, tb = 1;
    };

    Vec2 bilinear(double xi, double eta) const {
        return corner_[0] * (0.25 * (1 - xi) * (1 - eta)) +
               corner_[1] * (0.25 * (1 + xi) * (1 - eta)) +
               corner_[2] * (0.25 * (1 + xi) * (1 + eta)) +
               corner_[3] * (0.25 * (1 - xi) * (1 + eta));
    }

    Vec2 side_point(int s, double x, Vec2 a, Vec2 b) const {
        double u = 0.5 * (x + 1);
        if (!side_[s].curve) return a * (1 - u) + b * u;
        return side_[s].curve->point(side_[s].ta + u * (side_[s].tb - side_[s].ta));
    }

    Vec2 side_deriv(int s, double x, Vec2 a, Vec2 b) const { // d/dx, x in [-1,1]
        if (!side_[s].curve) return (b - a) * 0.5;
        double u = 0.5 * (x + 1);
        double dt = side_[s].tb - side_[s].ta;
        return side_[s].curve->derivative(side_[s].ta + u * dt) * (0.5 * dt);
    }

    std::array<Vec2, 4> corner_;
    std::array<Side, 4> side_;
    bool curved_;
};

} // namespace confmap
