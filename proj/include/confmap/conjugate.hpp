#pragma once

#include <chrono>
#include <memory>

#include "confmap/field.hpp"
#include "confmap/solve.hpp"

namespace confmap {

namespace detail {
inline double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}
} // namespace detail

// Conformal map of a quadrilateral onto the rectangle [0,1] x [0,h]:
// f = u1 + i h u2 built from the conjugate pair of potentials on one
// discretization. h equals the Dirichlet energy of u1 (the modulus), and
// |m1 m2 - 1| is the reciprocal identity error of the pair.
struct QuadMap {
    std::shared_ptr<const Mesh> mesh;
    DofTable dofs;
    Eigen::VectorXd u1, u2;
    std::shared_ptr<const FieldEval> ev1, ev2;
    double m1 = 0, m2 = 0, h = 0, rec = 0;
    SolveStats stats;
    double t_mesh = 0, t_setup = 0, t_solve = 0; // phase timings, seconds

    Complex f(int elem, double xi, double eta) const {
        return {ev1->value(elem, xi, eta), h * ev2->value(elem, xi, eta)};
    }
    Vec2 point(int elem, double xi, double eta) const {
        return ElementMap(*mesh, elem).point(xi, eta);
    }
};

inline QuadMap solve_quad_map(const Domain& d, int p, const MeshOptions& opt = {}) {
    QuadMap qm;
    auto t0 = std::chrono::steady_clock::now();
    qm.mesh = std::make_shared<Mesh>(build_mesh(d, opt));
    qm.t_mesh = detail::seconds_since(t0);
    t0 = std::chrono::steady_clock::now();
    ConjugateSolver cs(*qm.mesh, p);
    qm.t_setup = detail::seconds_since(t0);
    t0 = std::chrono::steady_clock::now();
    auto s1 = cs.solve_primal();
    auto s2 = cs.solve_conjugate();
    qm.t_solve = detail::seconds_since(t0);
    qm.dofs = cs.dofs();
    qm.u1 = std::move(s1.x);
    qm.u2 = std::move(s2.x);
    qm.m1 = s1.energy;
    qm.m2 = s2.energy;
    qm.h = qm.m1;
    qm.rec = std::abs(qm.m1 * qm.m2 - 1.0);
    qm.stats = cs.stats;
    qm.ev1 = std::make_shared<FieldEval>(*qm.mesh, qm.dofs, qm.u1);
    qm.ev2 = std::make_shared<FieldEval>(*qm.mesh, qm.dofs, qm.u2);
    return qm;
}

// Ring domains: the cut ring is a quadrilateral whose primal energy is the
// capacity; modulus M = 2 pi / cap, and w = exp((2 pi / h)(f - 1)) maps the
// ring onto the annulus exp(-M) < |w| < 1 with the inner boundary going to
// the unit circle.
struct RingMap {
    QuadMap quad;
    double cap = 0, modulus = 0, rho = 0;

    Complex w(int elem, double xi, double eta) const {
        Complex fv = quad.f(elem, xi, eta);
        return std::exp(2 * PI / quad.h * (fv - Complex{1, 0}));
    }
};

inline RingMap solve_ring_map(const Domain& cut_quad, int p, const MeshOptions& opt = {}) {
    RingMap rm;
    rm.quad = solve_quad_map(cut_quad, p, opt);
    rm.cap = rm.quad.m1;
    rm.modulus = 2 * PI / rm.cap;
    rm.rho = std::exp(-rm.modulus);
    return rm;
}

// Capacity of an uncut ring (pure Dirichlet solve, conjugate unavailable).
inline double ring_capacity(const Domain& ring, int p, const MeshOptions& opt = {}) {
    Mesh m = build_mesh(ring, opt);
    ConjugateSolver cs(m, p);
    return cs.solve_primal().energy;
}

// Condenser potential of an uncut ring kept evaluable: u = 1 on the inner
// boundary, 0 on the outer. This is what the steepest-descent cut descends.
struct RingPotential {
    std::shared_ptr<const Mesh> mesh;
    DofTable dofs;
    Eigen::VectorXd u;
    std::shared_ptr<const FieldEval> ev;
    double cap = 0, modulus = 0;
};

inline RingPotential solve_ring_potential(const Domain& ring, int p, const MeshOptions& opt = {}) {
    if (ring.kind != DomainKind::ring) throw GeometryError("ring potential needs a ring domain");
    RingPotential rp;
    rp.mesh = std::make_shared<Mesh>(build_mesh(ring, opt));
    ConjugateSolver cs(*rp.mesh, p);
    auto s = cs.solve_primal();
    rp.dofs = cs.dofs();
    rp.u = std::move(s.x);
    rp.cap = s.energy;
    rp.modulus = 2 * PI / rp.cap;
    rp.ev = std::make_shared<FieldEval>(*rp.mesh, rp.dofs, rp.u);
    return rp;
}

} // namespace confmap
