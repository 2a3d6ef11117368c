#include <catch2/catch_amalgamated.hpp>

#include "confmap/element_map.hpp"
#include "confmap/gallery.hpp"
#include "confmap/mesh.hpp"

using namespace confmap;

namespace {
int euler_characteristic(const Mesh& m) {
    return (int)m.xy.size() - (int)m.edges.size() + (int)m.elems.size();
}
} // namespace

TEST_CASE("rectangle domain meshes to one element") {
    Domain d = gallery::rectangle(2.0);
    CHECK(d.blocks.size() == 1);
    Mesh m = build_mesh(d, {6, 0.15});
    CHECK(m.elems.size() == 1);
    CHECK(m.edges.size() == 4);
    CHECK(m.xy.size() == 4);
    CHECK(euler_characteristic(m) == 1);
}

TEST_CASE("corner pattern counts and split positions") {
    // one square block, one marked corner at the origin
    TemplateBuilder tb;
    int a = tb.vertex({0, 0}), b = tb.vertex({1, 0}), c = tb.vertex({1, 1}), e = tb.vertex({0, 1});
    tb.edge(a, b, ArcTag::gamma3);
    tb.edge(b, c, ArcTag::gamma4);
    tb.edge(c, e, ArcTag::gamma1);
    tb.edge(e, a, ArcTag::gamma2);
    tb.quad(a, b, c, e);
    tb.mark(a, 3); // cap below the requested level count
    Domain d = tb.finish(DomainKind::quadrilateral, {c, e, a, b});

    Mesh m = build_mesh(d, {10, 0.15});
    CHECK(m.elems.size() == 7); // capped at 3 levels
    CHECK(euler_characteristic(m) == 1);

    // subdivision points sit at ratio^k on both adjacent edges
    std::vector<double> xs;
    for (const auto& p : m.xy)
        if (p.y == 0.0 && p.x > 0 && p.x < 1) xs.push_back(p.x);
    std::sort(xs.begin(), xs.end());
    REQUIRE(xs.size() == 3);
    CHECK(xs[0] == Catch::Approx(0.15 * 0.15 * 0.15).epsilon(1e-15));
    CHECK(xs[2] == Catch::Approx(0.15).epsilon(1e-15));

    Mesh m0 = build_mesh(d, {0, 0.15});
    CHECK(m0.elems.size() == 1);
}

TEST_CASE("disk template refinement") {
    Domain d = gallery::disk_quad();
    CHECK(d.blocks.size() == 12);
    CHECK(d.marked.size() == 4);

    Mesh m0 = build_mesh(d, {0, 0.15});
    CHECK(m0.elems.size() == 12);

    int L = 6;
    Mesh m = build_mesh(d, {L, 0.15});
    CHECK(m.elems.size() == 8 * (2 * L + 1) + 4);
    // each marked corner refines two blocks sharing the radial edge:
    // per level 5 new vertices (2 arc splits, 1 shared radial split, 2 interior)
    CHECK(m.xy.size() == 17 + 20 * (size_t)L);
    CHECK(m.edges.size() == 36 * (size_t)L + 28);
    CHECK(euler_characteristic(m) == 1);

    // curved boundary sub-edges truly live on the unit circle
    int curved_checked = 0;
    for (int e = 0; e < (int)m.elems.size(); ++e) {
        ElementMap map(m, e);
        for (int s = 0; s < 4; ++s) {
            const MeshEdge& ed = m.edges[m.elems[e].edge[s]];
            if (ed.curve < 0) continue;
            for (double t : {-0.6, 0.2, 0.9}) {
                double xi = s == 0 || s == 2 ? t : (s == 1 ? 1.0 : -1.0);
                double eta = s == 1 || s == 3 ? t : (s == 2 ? 1.0 : -1.0);
                CHECK(map.point(xi, eta).norm() == Catch::Approx(1.0).margin(1e-13));
            }
            ++curved_checked;
        }
    }
    CHECK(curved_checked == 8 * (L + 1));

    // positive Jacobians everywhere, including the curved trapezoids
    for (int e = 0; e < (int)m.elems.size(); ++e) {
        ElementMap map(m, e);
        for (double xi : {-0.9, 0.0, 0.9})
            for (double eta : {-0.9, 0.0, 0.9}) CHECK(map.jacobian(xi, eta).det() > 0);
    }
}

TEST_CASE("shared refined edges are bitwise consistent") {
    Domain d = gallery::disk_quad();
    Mesh m = build_mesh(d, {8, 0.15});
    // every mesh edge appears once; elements referencing it agree on the
    // endpoint ids, hence on the coordinates
    std::map<std::pair<int, int>, int> count;
    for (const auto& el : m.elems)
        for (int s = 0; s < 4; ++s) {
            auto& ed = m.edges[el.edge[s]];
            ++count[std::minmax(ed.v0, ed.v1)];
        }
    for (auto& [k, c] : count) CHECK((c == 1 || c == 2));
}

TEST_CASE("annulus ring domain and cut") {
    auto rd = gallery::annulus(0.5);
    CHECK(rd.ring.kind == DomainKind::ring);
    CHECK(rd.ring.blocks.size() == 4);

    Domain cut = cut_ring(rd.ring, rd.cut);
    CHECK(cut.kind == DomainKind::quadrilateral);
    CHECK(cut.vertices.size() == 10);
    CHECK(cut.corners[0] != cut.corners[3]);
    CHECK((cut.vertices[cut.corners[0]] - Vec2{0.5, 0}).norm() < 1e-15);
    CHECK((cut.vertices[cut.corners[3]] - Vec2{0.5, 0}).norm() < 1e-15);
    CHECK((cut.vertices[cut.corners[1]] - Vec2{1, 0}).norm() < 1e-15);
    CHECK((cut.vertices[cut.corners[2]] - Vec2{1, 0}).norm() < 1e-15);

    int n_hi = 0, n_lo = 0;
    for (auto& ed : cut.edges) {
        n_hi += ed.tag == ArcTag::cut_hi;
        n_lo += ed.tag == ArcTag::cut_lo;
    }
    CHECK(n_hi == 1);
    CHECK(n_lo == 1);

    Mesh m = build_mesh(cut, {0, 0.15});
    CHECK(m.elems.size() == 4);
    CHECK(euler_characteristic(m) == 1);

    Mesh muncut = build_mesh(rd.ring, {0, 0.15});
    CHECK(euler_characteristic(muncut) == 0); // two boundary loops
}

TEST_CASE("circle in square ring") {
    auto rd = gallery::circle_in_square();
    CHECK(rd.ring.blocks.size() == 8);
    Domain cut = cut_ring(rd.ring, rd.cut);
    Mesh m = build_mesh(cut, {0, 0.15});
    CHECK(m.elems.size() == 8);
    for (int e = 0; e < (int)m.elems.size(); ++e) {
        ElementMap map(m, e);
        for (double xi : {-0.9, 0.0, 0.9})
            for (double eta : {-0.9, 0.0, 0.9}) CHECK(map.jacobian(xi, eta).det() > 0);
    }
}

TEST_CASE("invalid domains are rejected") {
    // block corners listed clockwise
    {
        TemplateBuilder tb;
        int a = tb.vertex({0, 0}), b = tb.vertex({1, 0});
        int c = tb.vertex({1, 1}), e = tb.vertex({0, 1});
        tb.edge(a, e, ArcTag::gamma1);
        tb.edge(e, c, ArcTag::gamma2);
        tb.edge(c, b, ArcTag::gamma3);
        tb.edge(b, a, ArcTag::gamma4);
        tb.quad(a, e, c, b);
        CHECK_THROWS_AS(tb.finish(DomainKind::quadrilateral, {a, e, c, b}), GeometryError);
    }
    // two marked corners on one block
    {
        TemplateBuilder tb;
        int a = tb.vertex({0, 0}), b = tb.vertex({1, 0});
        int c = tb.vertex({1, 1}), e = tb.vertex({0, 1});
        tb.edge(a, b, ArcTag::gamma3);
        tb.edge(b, c, ArcTag::gamma4);
        tb.edge(c, e, ArcTag::gamma1);
        tb.edge(e, a, ArcTag::gamma2);
        tb.quad(a, b, c, e);
        tb.mark(a);
        tb.mark(c);
        CHECK_THROWS_AS(tb.finish(DomainKind::quadrilateral, {c, e, a, b}), GeometryError);
    }
    // boundary arc order swapped
    {
        TemplateBuilder tb;
        int a = tb.vertex({0, 0}), b = tb.vertex({1, 0});
        int c = tb.vertex({1, 1}), e = tb.vertex({0, 1});
        tb.edge(a, b, ArcTag::gamma1);
        tb.edge(b, c, ArcTag::gamma4);
        tb.edge(c, e, ArcTag::gamma3);
        tb.edge(e, a, ArcTag::gamma2);
        tb.quad(a, b, c, e);
        CHECK_THROWS_AS(tb.finish(DomainKind::quadrilateral, {c, e, a, b}), GeometryError);
    }
}

TEST_CASE("gallery quadrilateral templates mesh cleanly") {
    auto check = [](const Domain& dom, int levels) {
        Mesh m = build_mesh(dom, {levels, 0.15});
        CHECK(euler_characteristic(m) == 1);
        for (int e = 0; e < (int)m.elems.size(); ++e) {
            ElementMap map(m, e);
            for (double xi : {-0.97, -0.4, 0.3, 0.9})
                for (double eta : {-0.97, -0.4, 0.3, 0.9})
                    CHECK(map.jacobian(xi, eta).det() > 0);
        }
        return m.elems.size();
    };

    CHECK(check(gallery::flower_quad(), 0) == 24);
    check(gallery::flower_quad(), 3);
    CHECK(check(gallery::circular_quad(), 0) == 18);
    check(gallery::circular_quad(), 4);
    CHECK(check(gallery::asteroid_quad(), 0) == 10);
    check(gallery::asteroid_quad(), 5);
}

TEST_CASE("gallery ring templates mesh and cut cleanly") {
    auto check = [](const gallery::RingDomain& rd, size_t blocks, int levels) {
        CHECK(rd.ring.blocks.size() == blocks);
        Mesh ring = build_mesh(rd.ring, {levels, 0.15});
        CHECK(euler_characteristic(ring) == 0);
        Domain cutq = cut_ring(rd.ring, rd.cut);
        Mesh m = build_mesh(cutq, {levels, 0.15});
        CHECK(euler_characteristic(m) == 1);
        for (int e = 0; e < (int)m.elems.size(); ++e) {
            ElementMap map(m, e);
            for (double xi : {-0.97, -0.4, 0.3, 0.9})
                for (double eta : {-0.97, -0.4, 0.3, 0.9})
                    CHECK(map.jacobian(xi, eta).det() > 0);
        }
    };
    check(gallery::flower_in_square(), 32, 2);
    check(gallery::cross_in_square(), 44, 2);
    check(gallery::droplet_in_square(), 22, 2);
    check(gallery::circle_in_L(), 20, 2);
    check(gallery::disk_in_pentagon(0.5), 20, 1);
}

TEST_CASE("pentagon ring keeps positive jacobians near touching") {
    for (double r : {0.9, 0.99, 0.999}) {
        auto rd = gallery::disk_in_pentagon(r);
        Domain cutq = cut_ring(rd.ring, rd.cut);
        Mesh m = build_mesh(cutq, {0, 0.15});
        CHECK(euler_characteristic(m) == 1);
        for (int e = 0; e < (int)m.elems.size(); ++e) {
            ElementMap map(m, e);
            for (double xi : {-0.97, 0.0, 0.9})
                for (double eta : {-0.97, 0.0, 0.9})
                    CHECK(map.jacobian(xi, eta).det() > 0);
        }
    }
}

TEST_CASE("fitted template curves match their generators") {
    auto flower = [](double th) {
        double rho = 0.8 + 0.1 * std::cos(6 * th);
        return Vec2{rho * std::cos(th), rho * std::sin(th)};
    };
    auto fseg = [&](double s) { return flower(s * PI / 4); };
    CHECK(Curve::fit(fseg, 16).max_deviation(fseg) < 1e-11);

    auto cusp = [](double t) {
        double ct = std::cos(t), st = std::sin(t);
        return Vec2{-1 + ct * ct * ct, st * st * st};
    };
    auto aseg = [&](double s) { return cusp(PI / 2 - s * PI / 4); };
    CHECK(Curve::fit(aseg, 16).max_deviation(aseg) < 1e-11);

    auto drop = [](double t) {
        double t2 = t * t;
        return Vec2{((45 * t2 + 75) * t2 * t2 - 525 * t2 + 469) / 640,
                    (15.0 / 32) * t * (t2 - 1) * (t2 - 1)};
    };
    auto dseg = [&](double s) { return drop(-1 + 0.4 * s); };
    CHECK(Curve::fit(dseg, 10).max_deviation(dseg) < 1e-12);
}
