#pragma once

#include <functional>
#include <variant>
#include <vector>

#include "confmap/core.hpp"

namespace confmap {

// A parametric boundary piece over t in [0,1]. Four kinds: straight segment,
// circular arc, complex polynomial in a normalized parameter, and polyline
// (parameterized by arc-length fraction). Polynomials store monomial
// coefficients in s = 2t-1 over [-1,1]; high-degree fits are produced in the
// Chebyshev basis first, so the monomial round-off stays near machine level
// for the degrees used here (<= 24).
class Curve {
public:
    struct Segment {
        Vec2 a, b;
    };
    struct Arc {
        Vec2 center;
        double radius;
        double a0, a1; // radians; a1 < a0 gives clockwise sweep
    };
    struct Poly {
        std::vector<double> re, im; // monomial coefficients in s ∈ [-1,1]
    };
    struct Polyline {
        std::vector<Vec2> pts;
        std::vector<double> cum; // cumulative arc length, cum[0] = 0
    };

    Curve() : rep_(Segment{{0, 0}, {1, 0}}) {}

    static Curve segment(Vec2 a, Vec2 b) { return Curve(Segment{a, b}); }

    static Curve circular_arc(Vec2 center, double radius, double a0, double a1) {
        if (radius <= 0.0) throw GeometryError("circular arc needs positive radius");
        return Curve(Arc{center, radius, a0, a1});
    }

    static Curve polynomial(std::vector<double> re, std::vector<double> im) {
        if (re.empty() || im.empty()) throw GeometryError("empty polynomial curve");
        return Curve(Poly{std::move(re), std::move(im)});
    }

    static Curve polyline(std::vector<Vec2> pts) {
        if (pts.size() < 2) throw GeometryError("polyline needs at least 2 points");
        Polyline pl{std::move(pts), {}};
        pl.cum.resize(pl.pts.size());
        pl.cum[0] = 0.0;
        for (size_t i = 1; i < pl.pts.size(); ++i) {
            double d = (pl.pts[i] - pl.pts[i - 1]).norm();
            if (d <= 0.0) throw GeometryError("polyline has a repeated point");
            pl.cum[i] = pl.cum[i - 1] + d;
        }
        return Curve(pl);
    }

    // Chebyshev-interpolate an analytic map t -> plane over [0,1] and convert to
    // the monomial basis. Endpoints are pinned exactly afterwards with a linear
    // correction (block decompositions require vertices to match to ~1e-12).
    static Curve fit(const std::function<Vec2(double)>& f, int degree);

    Vec2 point(double t) const;
    Vec2 derivative(double t) const;

    bool is_segment() const { return std::holds_alternative<Segment>(rep_); }
    bool is_arc() const { return std::holds_alternative<Arc>(rep_); }
    bool is_polynomial() const { return std::holds_alternative<Poly>(rep_); }
    bool is_polyline() const { return std::holds_alternative<Polyline>(rep_); }
    const Segment* as_segment() const { return std::get_if<Segment>(&rep_); }
    const Arc* as_arc() const { return std::get_if<Arc>(&rep_); }
    const Poly* as_polynomial() const { return std::get_if<Poly>(&rep_); }
    const Polyline* as_polyline() const { return std::get_if<Polyline>(&rep_); }

    // Max distance from f over a dense sample; used by tests and by fit().
    double max_deviation(const std::function<Vec2(double)>& f, int samples = 257) const {
        double worst = 0.0;
        for (int i = 0; i <= samples; ++i) {
            double t = double(i) / samples;
            worst = std::max(worst, (point(t) - f(t)).norm());
        }
        return worst;
    }

private:
    template <class T>
    explicit Curve(T rep) : rep_(std::move(rep)) {}

    std::variant<Segment, Arc, Poly, Polyline> rep_;
};

inline Vec2 Curve::point(double t) const {
    if (auto* s = std::get_if<Segment>(&rep_)) {
        return s->a + (s->b - s->a) * t;
    }
    if (auto* a = std::get_if<Arc>(&rep_)) {
        double ang = a->a0 + (a->a1 - a->a0) * t;
        return {a->center.x + a->radius * std::cos(ang), a->center.y + a->radius * std::sin(ang)};
    }
    if (auto* p = std::get_if<Poly>(&rep_)) {
        double s = 2.0 * t - 1.0;
        double xr = 0.0, xi = 0.0;
        for (size_t k = p->re.size(); k-- > 0;) xr = xr * s + p->re[k];
        for (size_t k = p->im.size(); k-- > 0;) xi = xi * s + p->im[k];
        return {xr, xi};
    }
    const Polyline& pl = std::get<Polyline>(rep_);
    double target = t * pl.cum.back();
    // binary search for the segment containing the arc-length target
    size_t lo = 0, hi = pl.cum.size() - 1;
    while (hi - lo > 1) {
        size_t mid = (lo + hi) / 2;
        (pl.cum[mid] <= target ? lo : hi) = mid;
    }
    double seg = pl.cum[hi] - pl.cum[lo];
    double u = seg > 0 ? (target - pl.cum[lo]) / seg : 0.0;
    return pl.pts[lo] + (pl.pts[hi] - pl.pts[lo]) * u;
}

inline Vec2 Curve::derivative(double t) const {
    if (auto* s = std::get_if<Segment>(&rep_)) {
        return s->b - s->a;
    }
    if (auto* a = std::get_if<Arc>(&rep_)) {
        double ang = a->a0 + (a->a1 - a->a0) * t;
        double sp = a->radius * (a->a1 - a->a0);
        return {-sp * std::sin(ang), sp * std::cos(ang)};
    }
    if (auto* p = std::get_if<Poly>(&rep_)) {
        double s = 2.0 * t - 1.0;
        double xr = 0.0, xi = 0.0;
        for (size_t k = p->re.size(); k-- > 1;) xr = xr * s + p->re[k] * double(k);
        for (size_t k = p->im.size(); k-- > 1;) xi = xi * s + p->im[k] * double(k);
        return {2.0 * xr, 2.0 * xi}; // ds/dt = 2
    }
    const Polyline& pl = std::get<Polyline>(rep_);
    double target = std::min(std::max(t, 0.0), 1.0) * pl.cum.back();
    size_t lo = 0, hi = pl.cum.size() - 1;
    while (hi - lo > 1) {
        size_t mid = (lo + hi) / 2;
        (pl.cum[mid] <= target ? lo : hi) = mid;
    }
    double seg = pl.cum[hi] - pl.cum[lo];
    return (pl.pts[hi] - pl.pts[lo]) * (pl.cum.back() / (seg > 0 ? seg : 1.0));
}

inline Curve Curve::fit(const std::function<Vec2(double)>& f, int degree) {
    int n = degree;
    if (n < 1 || n > 64) throw GeometryError("curve fit degree out of range");
    // Chebyshev coefficients from values at Chebyshev points of the 2nd kind.
    int m = n;
    std::vector<Vec2> vals(m + 1);
    for (int j = 0; j <= m; ++j) {
        double s = std::cos(PI * j / m);       // s ∈ [-1,1]
        vals[j] = f(0.5 * (s + 1.0));
    }
    auto cheb_coef = [&](auto comp) {
        std::vector<double> c(m + 1, 0.0);
        for (int k = 0; k <= m; ++k) {
            double acc = 0.0;
            for (int j = 0; j <= m; ++j) {
                double w = (j == 0 || j == m) ? 0.5 : 1.0;
                acc += w * comp(vals[j]) * std::cos(PI * k * j / m);
            }
            c[k] = 2.0 * acc / m;
            if (k == 0 || k == m) c[k] *= 0.5;
        }
        return c;
    };
    std::vector<double> cx = cheb_coef([](const Vec2& v) { return v.x; });
    std::vector<double> cy = cheb_coef([](const Vec2& v) { return v.y; });

    // Chebyshev -> monomial via the T_{k+1} = 2 s T_k - T_{k-1} recurrence.
    std::vector<std::vector<double>> T(m + 1);
    T[0] = {1.0};
    if (m >= 1) T[1] = {0.0, 1.0};
    for (int k = 2; k <= m; ++k) {
        T[k].assign(k + 1, 0.0);
        for (size_t i = 0; i < T[k - 1].size(); ++i) T[k][i + 1] += 2.0 * T[k - 1][i];
        for (size_t i = 0; i < T[k - 2].size(); ++i) T[k][i] -= T[k - 2][i];
    }
    std::vector<double> ax(m + 1, 0.0), ay(m + 1, 0.0);
    for (int k = 0; k <= m; ++k)
        for (size_t i = 0; i < T[k].size(); ++i) {
            ax[i] += cx[k] * T[k][i];
            ay[i] += cy[k] * T[k][i];
        }

    Curve c = Curve::polynomial(std::move(ax), std::move(ay));
    // pin endpoints exactly
    Vec2 e0 = f(0.0) - c.point(0.0);
    Vec2 e1 = f(1.0) - c.point(1.0);
    auto* p = std::get_if<Poly>(&c.rep_);
    // linear correction l(s) = 0.5(1-s) e0 + 0.5(1+s) e1
    p->re[0] += 0.5 * (e0.x + e1.x);
    p->im[0] += 0.5 * (e0.y + e1.y);
    if (p->re.size() < 2) p->re.resize(2, 0.0);
    if (p->im.size() < 2) p->im.resize(2, 0.0);
    p->re[1] += 0.5 * (e1.x - e0.x);
    p->im[1] += 0.5 * (e1.y - e0.y);
    return c;
}

// Self-intersection scan over a dense polygonal sample. O(n^2) in the sample
// count; meant for validating user input and gallery construction, not per-query.
inline bool curve_is_simple(const Curve& c, int samples = 256, bool closed = false) {
    std::vector<Vec2> p(samples + 1);
    for (int i = 0; i <= samples; ++i) p[i] = c.point(double(i) / samples);
    auto seg_intersect = [](Vec2 a, Vec2 b, Vec2 c2, Vec2 d) {
        auto orient = [](Vec2 u, Vec2 v, Vec2 w) { return (v - u).cross(w - u); };
        double o1 = orient(a, b, c2), o2 = orient(a, b, d);
        double o3 = orient(c2, d, a), o4 = orient(c2, d, b);
        return ((o1 > 0) != (o2 > 0)) && ((o3 > 0) != (o4 > 0));
    };
    for (int i = 0; i < samples; ++i) {
        for (int j = i + 2; j < samples; ++j) {
            if (closed && i == 0 && j == samples - 1) continue;
            if (seg_intersect(p[i], p[i + 1], p[j], p[j + 1])) return false;
        }
    }
    return true;
}

} // namespace confmap
