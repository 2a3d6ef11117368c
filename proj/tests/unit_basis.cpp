#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "confmap/basis.hpp"
#include "confmap/curve.hpp"
#include "confmap/quadrature.hpp"

using namespace confmap;

TEST_CASE("Legendre values and derivatives") {
    CHECK(legendre(2, 0.5) == Catch::Approx(-0.125).margin(1e-15));
    CHECK(legendre(3, -0.3) == Catch::Approx(0.3825).margin(1e-15));
    CHECK(legendre(0, 0.77) == 1.0);
    CHECK(legendre(1, 0.77) == 0.77);

    // endpoint derivatives: P'_n(+-1) = (+-1)^{n+1} n(n+1)/2
    std::vector<double> P(13), dP(13);
    for (double s : {-1.0, 1.0}) {
        legendre_all_deriv(12, s, P.data(), dP.data());
        for (int n = 0; n <= 12; ++n) {
            double expect = 0.5 * n * (n + 1) * ((n % 2 == 0) ? s : 1.0);
            CHECK(dP[n] == Catch::Approx(expect).margin(1e-10));
        }
    }

    // (1-x^2) P'_n = n (P_{n-1} - x P_n) at interior points
    std::mt19937 rng(1234);
    std::uniform_real_distribution<double> U(-0.999, 0.999);
    for (int rep = 0; rep < 20; ++rep) {
        double x = U(rng);
        legendre_all_deriv(12, x, P.data(), dP.data());
        for (int n = 1; n <= 12; ++n) {
            double lhs = (1 - x * x) * dP[n];
            double rhs = n * (P[n - 1] - x * P[n]);
            CHECK(lhs == Catch::Approx(rhs).margin(1e-12));
        }
    }
}

TEST_CASE("Legendre orthogonality under Gauss quadrature") {
    const int p = 10;
    auto q = gauss_legendre(p + 2);
    std::vector<double> P(p + 1);
    std::vector<std::vector<double>> G(p + 1, std::vector<double>(p + 1, 0.0));
    for (int k = 0; k < q.size(); ++k) {
        legendre_all(p, q.x[k], P.data());
        for (int i = 0; i <= p; ++i)
            for (int j = 0; j <= p; ++j) G[i][j] += q.w[k] * P[i] * P[j];
    }
    for (int i = 0; i <= p; ++i)
        for (int j = 0; j <= p; ++j) {
            double expect = (i == j) ? 2.0 / (2 * i + 1) : 0.0;
            CHECK(G[i][j] == Catch::Approx(expect).margin(1e-13));
        }
}

TEST_CASE("integrated Legendre kernel") {
    // phi_2(0) = (P_2(0) - P_0(0)) / sqrt(6) = -1.5/sqrt(6)
    CHECK(integrated_legendre(2, 0.0) == Catch::Approx(-0.6123724356957945).epsilon(1e-14));
    // vanish at both endpoints
    for (int n = 2; n <= 12; ++n) {
        CHECK(integrated_legendre(n, -1.0) == Catch::Approx(0.0).margin(1e-13));
        CHECK(integrated_legendre(n, 1.0) == Catch::Approx(0.0).margin(1e-13));
    }
    // derivative orthonormality: ∫ phi'_i phi'_j dx = δ_ij
    const int p = 12;
    auto q = gauss_legendre(p + 2);
    std::vector<double> phi(p + 1), dphi(p + 1);
    std::vector<std::vector<double>> G(p + 1, std::vector<double>(p + 1, 0.0));
    for (int k = 0; k < q.size(); ++k) {
        integrated_legendre_all(p, q.x[k], phi.data(), dphi.data());
        for (int i = 2; i <= p; ++i)
            for (int j = 2; j <= p; ++j) G[i][j] += q.w[k] * dphi[i] * dphi[j];
    }
    for (int i = 2; i <= p; ++i)
        for (int j = 2; j <= p; ++j)
            CHECK(G[i][j] == Catch::Approx(i == j ? 1.0 : 0.0).margin(1e-13));
    // parity phi_i(-x) = (-1)^i phi_i(x)
    for (int i = 2; i <= 9; ++i) {
        double a = integrated_legendre(i, 0.37), b = integrated_legendre(i, -0.37);
        CHECK(b == Catch::Approx((i % 2 ? -1.0 : 1.0) * a).margin(1e-15));
    }
}

TEST_CASE("quadrature exactness") {
    // n points integrate monomials up to degree 2n-1 exactly
    for (int n = 1; n <= 14; ++n) {
        auto q = gauss_legendre(n);
        double wsum = 0;
        for (double w : q.w) wsum += w;
        CHECK(wsum == Catch::Approx(2.0).epsilon(1e-14));
        for (int d = 0; d <= 2 * n - 1; ++d) {
            double s = 0;
            for (int k = 0; k < n; ++k) s += q.w[k] * std::pow(q.x[k], d);
            double exact = (d % 2 == 0) ? 2.0 / (d + 1) : 0.0;
            CHECK(s == Catch::Approx(exact).margin(1e-13));
        }
    }
}

TEST_CASE("shape set structure") {
    ShapeSet S(6);
    CHECK(S.count() == 49);
    CHECK(S.side_modes() == 5);
    CHECK(S.internal_modes() == 25);

    std::vector<double> v(S.count()), dx(S.count()), dy(S.count());

    // vertex modes form a partition of unity together (higher modes vanish sum-free)
    std::mt19937 rng(77);
    std::uniform_real_distribution<double> U(-1.0, 1.0);
    for (int rep = 0; rep < 10; ++rep) {
        double xi = U(rng), eta = U(rng);
        S.eval(xi, eta, v.data(), dx.data(), dy.data());
        double s = v[0] + v[1] + v[2] + v[3];
        CHECK(s == Catch::Approx(1.0).margin(1e-14));
    }

    // nodal interpolation at vertices
    const double VX[4] = {-1, 1, 1, -1}, VY[4] = {-1, -1, 1, 1};
    for (int a = 0; a < 4; ++a) {
        S.eval(VX[a], VY[a], v.data(), dx.data(), dy.data());
        for (int b = 0; b < 4; ++b) CHECK(v[b] == Catch::Approx(a == b ? 1.0 : 0.0).margin(1e-15));
        // every side and internal mode vanishes at vertices
        for (int m = 4; m < S.count(); ++m) CHECK(v[m] == Catch::Approx(0.0).margin(1e-13));
    }

    // side modes vanish on the other three sides
    auto side_point = [&](int s, double t) {
        switch (s) {
        case 0: return std::pair<double, double>{t, -1.0};
        case 1: return std::pair<double, double>{1.0, t};
        case 2: return std::pair<double, double>{t, 1.0};
        default: return std::pair<double, double>{-1.0, t};
        }
    };
    for (int s = 0; s < 4; ++s) {
        for (double t : {-0.7, 0.1, 0.9}) {
            auto [xi, eta] = side_point(s, t);
            S.eval(xi, eta, v.data(), dx.data(), dy.data());
            int m = 4;
            for (int so = 0; so < 4; ++so)
                for (int i = 2; i <= 6; ++i, ++m)
                    if (so != s) CHECK(v[m] == Catch::Approx(0.0).margin(1e-13));
            // internal modes vanish on all sides
            for (; m < S.count(); ++m) CHECK(v[m] == Catch::Approx(0.0).margin(1e-13));
        }
    }

    // internal mode (2,2) at the origin: phi_2(0)^2 = 6/16
    ShapeSet S2(2);
    std::vector<double> v2(9), g2(9), h2(9);
    S2.eval(0.0, 0.0, v2.data(), g2.data(), h2.data());
    CHECK(S2.modes()[8].kind == ModeKind::internal);
    CHECK(v2[8] == Catch::Approx(0.375).epsilon(1e-14));
}

TEST_CASE("shape gradients match finite differences") {
    ShapeSet S(8);
    int n = S.count();
    std::vector<double> v0(n), dx(n), dy(n), vp(n), vm(n), t1(n), t2(n);
    const double h = 1e-6;
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> U(-0.95, 0.95);
    for (int rep = 0; rep < 6; ++rep) {
        double xi = U(rng), eta = U(rng);
        S.eval(xi, eta, v0.data(), dx.data(), dy.data());
        S.eval(xi + h, eta, vp.data(), t1.data(), t2.data());
        S.eval(xi - h, eta, vm.data(), t1.data(), t2.data());
        for (int m = 0; m < n; ++m)
            CHECK(dx[m] == Catch::Approx((vp[m] - vm[m]) / (2 * h)).margin(1e-6));
        S.eval(xi, eta + h, vp.data(), t1.data(), t2.data());
        S.eval(xi, eta - h, vm.data(), t1.data(), t2.data());
        for (int m = 0; m < n; ++m)
            CHECK(dy[m] == Catch::Approx((vp[m] - vm[m]) / (2 * h)).margin(1e-6));
    }
}

TEST_CASE("curves") {
    auto seg = Curve::segment({0, 0}, {2, 4});
    CHECK(seg.point(0.5).x == Catch::Approx(1.0));
    CHECK(seg.point(0.5).y == Catch::Approx(2.0));
    CHECK(seg.derivative(0.3).x == Catch::Approx(2.0));

    auto arc = Curve::circular_arc({1, 0}, 2.0, 0.0, PI / 2);
    CHECK(arc.point(0).x == Catch::Approx(3.0));
    CHECK(arc.point(1).x == Catch::Approx(1.0).margin(1e-15));
    CHECK(arc.point(1).y == Catch::Approx(2.0));
    // derivative magnitude = r * |sweep|
    CHECK(arc.derivative(0.2).norm() == Catch::Approx(2.0 * PI / 2));

    auto pl = Curve::polyline({{0, 0}, {1, 0}, {1, 1}});
    CHECK(pl.point(0.5).x == Catch::Approx(1.0));
    CHECK(pl.point(0.5).y == Catch::Approx(0.0).margin(1e-15));
    CHECK(pl.point(0.75).y == Catch::Approx(0.5));
}

TEST_CASE("polynomial fit of smooth curves") {
    auto f = [](double t) { return Vec2{std::cos(PI / 2 * t), std::sin(PI / 2 * t)}; };
    auto fit = Curve::fit(f, 16);
    CHECK(fit.max_deviation(f, 200) < 1e-12);
    // endpoints pinned exactly
    CHECK(fit.point(0).x == Catch::Approx(1.0).margin(1e-15));
    CHECK(fit.point(0).y == Catch::Approx(0.0).margin(1e-15));
    CHECK(fit.point(1).x == Catch::Approx(0.0).margin(1e-14));
    CHECK(fit.point(1).y == Catch::Approx(1.0).margin(1e-14));

    // derivative of the fit tracks the true tangent
    auto d = fit.derivative(0.37);
    Vec2 dtrue{-PI / 2 * std::sin(PI / 2 * 0.37), PI / 2 * std::cos(PI / 2 * 0.37)};
    CHECK((d - dtrue).norm() < 1e-9);
}

TEST_CASE("self-intersection scan") {
    auto f_good = [](double t) { return Vec2{t, t * t}; };
    CHECK(curve_is_simple(Curve::fit(f_good, 4)));
    auto fig8 = [](double t) {
        double a = 2 * PI * t;
        return Vec2{std::sin(2 * a), std::sin(a)};
    };
    CHECK_FALSE(curve_is_simple(Curve::fit(fig8, 24)));
}
