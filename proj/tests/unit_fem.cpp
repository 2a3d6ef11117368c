#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "confmap/conjugate.hpp"
#include "confmap/gallery.hpp"

using namespace confmap;

TEST_CASE("rectangle: modulus equals the height, map is the identity") {
    for (double h : {1.0, 2.5}) {
        QuadMap qm = solve_quad_map(gallery::rectangle(h), 4, {0, 0.15});
        CHECK(qm.m1 == Catch::Approx(h).epsilon(1e-13));
        CHECK(qm.m2 == Catch::Approx(1.0 / h).epsilon(1e-13));
        CHECK(qm.rec < 1e-12);
        CHECK(qm.stats.base_factorizations == 1);

        std::mt19937 rng(42);
        std::uniform_real_distribution<double> U(-1.0, 1.0);
        for (int rep = 0; rep < 8; ++rep) {
            double xi = U(rng), eta = U(rng);
            Vec2 z = qm.point(0, xi, eta);
            Complex fz = qm.f(0, xi, eta);
            CHECK(std::abs(fz - Complex{z.x, z.y}) < 1e-12);
        }
    }
}

TEST_CASE("boundary values are interpolated exactly") {
    QuadMap qm = solve_quad_map(gallery::disk_quad(), 6, {4, 0.15});
    const Mesh& m = *qm.mesh;
    for (int e = 0; e < (int)m.elems.size(); ++e)
        for (int s = 0; s < 4; ++s) {
            int role = arc_role(m.edges[m.elems[e].edge[s]].tag);
            if (role != 2 && role != 4) continue;
            double want = role == 4 ? 1.0 : 0.0;
            for (double t : {-0.8, 0.0, 0.5}) {
                double xi = s == 0 || s == 2 ? t : (s == 1 ? 1.0 : -1.0);
                double eta = s == 1 || s == 3 ? t : (s == 2 ? 1.0 : -1.0);
                CHECK(qm.ev1->value(e, xi, eta) == Catch::Approx(want).margin(1e-13));
            }
        }
}

TEST_CASE("disk modulus converges to one") {
    QuadMap qm = solve_quad_map(gallery::disk_quad(), 8, {8, 0.15});
    CHECK(std::abs(qm.m1 - 1.0) < 1e-7);
    CHECK(qm.rec < 1e-7);
    CHECK(qm.stats.base_factorizations == 1);
}

TEST_CASE("concentric annulus capacity") {
    for (double r : {0.3, 0.7}) {
        auto rd = gallery::annulus(r);
        double cap = ring_capacity(rd.ring, 10, {0, 0.15});
        double exact = 2 * PI / std::log(1.0 / r);
        CHECK(cap == Catch::Approx(exact).epsilon(1e-8));

        // the cut quadrilateral reproduces the capacity as its modulus
        RingMap rm = solve_ring_map(cut_ring(rd.ring, rd.cut), 10, {0, 0.15});
        CHECK(rm.cap == Catch::Approx(exact).epsilon(1e-8));
        CHECK(rm.rho == Catch::Approx(r).epsilon(1e-7));
        CHECK(rm.quad.rec < 1e-9);
    }
}

TEST_CASE("annulus map matches r/z") {
    double r = 0.5;
    auto rd = gallery::annulus(r);
    RingMap rm = solve_ring_map(cut_ring(rd.ring, rd.cut), 12, {0, 0.15});
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> U(-0.95, 0.95);
    double worst = 0;
    for (int e = 0; e < (int)rm.quad.mesh->elems.size(); ++e)
        for (int rep = 0; rep < 5; ++rep) {
            double xi = U(rng), eta = U(rng);
            Vec2 zv = rm.quad.point(e, xi, eta);
            Complex z{zv.x, zv.y};
            worst = std::max(worst, std::abs(rm.w(e, xi, eta) - r / z));
        }
    CHECK(worst < 1e-8);
}

TEST_CASE("one factorization serves both potentials") {
    Mesh m = build_mesh(gallery::disk_quad(), {3, 0.15});
    ConjugateSolver cs(m, 5);
    auto s1 = cs.solve_primal();
    auto s2 = cs.solve_conjugate();
    CHECK(cs.stats.base_factorizations == 1);
    CHECK(cs.stats.schur_builds == 1);
    CHECK(s1.energy > 0);
    CHECK(s2.energy > 0);
}
