#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <vector>

#include "confmap/conjugate.hpp"

namespace confmap {

struct FieldHit {
    int elem = -1;
    double xi = 0, eta = 0;
};

// Point location: padded element bounding boxes in a uniform cell grid, local
// coordinates by Newton inversion of the element map seeded with the closed
// form bilinear inverse. The last successful element is tried first, which
// makes contour tracing (many nearby queries) mostly grid-free.
class Locator {
public:
    explicit Locator(const Mesh& m) : mesh_(&m) {
        int ne = (int)m.elems.size();
        boxes_.resize(ne);
        static const double ts[5] = {-1, -0.5, 0, 0.5, 1};
        for (int e = 0; e < ne; ++e) {
            ElementMap em(m, e);
            for (double t : ts) {
                boxes_[e].absorb(em.point(t, -1));
                boxes_[e].absorb(em.point(t, 1));
                boxes_[e].absorb(em.point(-1, t));
                boxes_[e].absorb(em.point(1, t));
            }
        }
        BBox all;
        for (const BBox& b : boxes_) {
            all.absorb({b.xmin, b.ymin});
            all.absorb({b.xmax, b.ymax});
        }
        diam_ = all.diag();
        for (BBox& b : boxes_) b.pad(0.05 * b.diag() + 1e-13 * diam_);
        box_ = BBox{};
        for (const BBox& b : boxes_) {
            box_.absorb({b.xmin, b.ymin});
            box_.absorb({b.xmax, b.ymax});
        }
        n_ = std::max(1, (int)std::ceil(std::sqrt((double)std::max(ne, 1))));
        cells_.resize((size_t)n_ * n_);
        for (int e = 0; e < ne; ++e) {
            auto [i0, j0] = cell_of({boxes_[e].xmin, boxes_[e].ymin});
            auto [i1, j1] = cell_of({boxes_[e].xmax, boxes_[e].ymax});
            for (int j = j0; j <= j1; ++j)
                for (int i = i0; i <= i1; ++i) cells_[(size_t)j * n_ + i].push_back(e);
        }
    }

    double diameter() const { return diam_; }

    std::optional<FieldHit> locate(Vec2 p) const {
        if (cache_ >= 0 && boxes_[cache_].contains(p))
            if (auto h = invert(cache_, p)) return h;
        if (!box_.contains(p)) return std::nullopt;
        auto [i, j] = cell_of(p);
        for (int e : cells_[(size_t)j * n_ + i]) {
            if (e == cache_ || !boxes_[e].contains(p)) continue;
            if (auto h = invert(e, p)) {
                cache_ = e;
                return h;
            }
        }
        return std::nullopt;
    }

private:
    std::pair<int, int> cell_of(Vec2 p) const {
        double fx = (p.x - box_.xmin) / (box_.xmax - box_.xmin);
        double fy = (p.y - box_.ymin) / (box_.ymax - box_.ymin);
        int i = std::clamp((int)(fx * n_), 0, n_ - 1);
        int j = std::clamp((int)(fy * n_), 0, n_ - 1);
        return {i, j};
    }

    std::optional<FieldHit> invert(int e, Vec2 p) const {
        ElementMap em(*mesh_, e);
        Vec2 c0 = em.corner(0), c1 = em.corner(1), c2 = em.corner(2), c3 = em.corner(3);
        Vec2 r = p - (c0 + c1 + c2 + c3) * 0.25;
        Vec2 a1 = (c1 - c0 + c2 - c3) * 0.25; // xi
        Vec2 a2 = (c3 - c0 + c2 - c1) * 0.25; // eta
        Vec2 a3 = (c0 - c1 + c2 - c3) * 0.25; // xi*eta
        // eta solves (a2 x a3) eta^2 + (a2 x a1 - r x a3) eta - r x a1 = 0,
        // then xi comes from projecting the remainder on a1 + a3 eta.
        double A = a2.cross(a3), B = a2.cross(a1) - r.cross(a3), C = -r.cross(a1);
        double eta;
        if (std::abs(A) < 1e-14 * (std::abs(B) + std::abs(C))) {
            eta = B != 0 ? -C / B : 0;
        } else {
            double disc = std::max(B * B - 4 * A * C, 0.0);
            double q = -0.5 * (B + (B >= 0 ? 1 : -1) * std::sqrt(disc));
            double e1 = q / A, e2 = q != 0 ? C / q : e1;
            eta = std::abs(e1) < std::abs(e2) ? e1 : e2;
        }
        if (!std::isfinite(eta)) eta = 0;
        eta = std::clamp(eta, -1.5, 1.5);
        Vec2 dir = a1 + a3 * eta;
        double dn = dir.norm2();
        double xi = dn > 0 ? std::clamp((r - a2 * eta).dot(dir) / dn, -1.5, 1.5) : 0;
        // Newton on the true (possibly transfinite) map
        double tol = 1e-12 * diam_;
        for (int it = 0; it < 30; ++it) {
            Vec2 res = em.point(xi, eta) - p;
            if (res.norm() <= tol) {
                const double slack = 1e-9;
                if (std::abs(xi) > 1 + slack || std::abs(eta) > 1 + slack) return std::nullopt;
                return FieldHit{e, std::clamp(xi, -1.0, 1.0), std::clamp(eta, -1.0, 1.0)};
            }
            Jacobian J = em.jacobian(xi, eta);
            double det = J.det();
            if (det == 0) return std::nullopt;
            xi -= (J.deta.y * res.x - J.deta.x * res.y) / det;
            eta -= (J.dxi.x * res.y - J.dxi.y * res.x) / det;
            if (std::abs(xi) > 4 || std::abs(eta) > 4) return std::nullopt;
        }
        return std::nullopt;
    }

    const Mesh* mesh_;
    std::vector<BBox> boxes_;
    std::vector<std::vector<int>> cells_;
    BBox box_;
    double diam_ = 0;
    int n_ = 1;
    mutable int cache_ = -1;
};

// One boundary element side. Chains are ordered along the boundary traversal
// that keeps the domain on the left (element sides already run that way).
struct BoundaryPart {
    int elem = -1, side = -1;
    ArcTag tag = ArcTag::interior;
};

// Local coordinates of the point at fraction t in [0,1] along the part.
inline FieldHit side_hit(const BoundaryPart& bp, double t) {
    double a = 2 * t - 1;
    switch (bp.side) {
    case 0: return {bp.elem, a, -1};
    case 1: return {bp.elem, 1, a};
    case 2: return {bp.elem, -a, 1};
    default: return {bp.elem, -1, -a};
    }
}

// Boundary sides grouped by arc role (index 1..4), each group ordered along
// its traversal run. Loops are rotated to start at a role change so no run is
// split; a loop with a single role (uncut ring circles) starts at its lowest
// numbered vertex, which keeps the result deterministic.
using BoundaryChains = std::array<std::vector<BoundaryPart>, 5>;

inline BoundaryChains boundary_chains(const Mesh& m) {
    std::map<int, std::pair<int, int>> by_start;
    for (int e = 0; e < (int)m.elems.size(); ++e)
        for (int s = 0; s < 4; ++s)
            if (m.edges[m.elems[e].edge[s]].tag != ArcTag::interior)
                by_start[m.elems[e].v[s]] = {e, s};
    BoundaryChains ch;
    std::map<int, bool> used;
    for (const auto& [v0, es0] : by_start) {
        if (used[v0]) continue;
        std::vector<BoundaryPart> loop;
        int v = v0;
        do {
            auto [e, s] = by_start.at(v);
            used[v] = true;
            loop.push_back({e, s, m.edges[m.elems[e].edge[s]].tag});
            v = m.elems[e].v[(s + 1) % 4];
        } while (v != v0);
        int n = (int)loop.size(), start = 0;
        for (int i = 0; i < n; ++i)
            if (arc_role(loop[i].tag) != arc_role(loop[(i + n - 1) % n].tag)) {
                start = i;
                break;
            }
        for (int i = 0; i < n; ++i) {
            const BoundaryPart& bp = loop[(start + i) % n];
            int r = arc_role(bp.tag);
            if (r >= 1) ch[r].push_back(bp);
        }
    }
    return ch;
}

enum class Potential { u1 = 1, u2 = 2 };

enum class TraceStatus { reached_opposite_boundary, closed_loop, stalled };

struct ContourPolyline {
    Potential which = Potential::u1;
    double level = 0;
    std::vector<Vec2> pts;
    TraceStatus status = TraceStatus::stalled;
};

// Contour tracing over a solved map. A u1 contour starts where the level
// crosses the gamma3 chain and runs to gamma1; a u2 contour runs from gamma4
// to gamma2. The predictor steps sigma along the rotated gradient (the
// direction in which the conjugate potential grows); the corrector is a
// safeguarded one dimensional Newton along the local gradient, capped at
// 0.9 sigma so consecutive points stay within 2 sigma. On a cut ring the u1
// chains are the two cut banks and the contour closes onto itself.
class Tracer {
public:
    Tracer(std::shared_ptr<const Mesh> mesh, std::shared_ptr<const FieldEval> u1,
           std::shared_ptr<const FieldEval> u2)
        : mesh_(std::move(mesh)),
          ev_{std::move(u1), std::move(u2)},
          loc_(*mesh_),
          chains_(boundary_chains(*mesh_)) {}

    explicit Tracer(const QuadMap& qm) : Tracer(qm.mesh, qm.ev1, qm.ev2) {}

    const Locator& locator() const { return loc_; }
    double default_step() const { return 0.02 * loc_.diameter(); }
    long long evals() const { return evals_; }

    ContourPolyline trace(Potential which, double c, double sigma = 0,
                          double eps = 1e-6) const {
        if (sigma <= 0) sigma = default_step();
        if (!(eps > 0)) throw TraceError("contour tolerance must be positive");
        if (!(c > 0 && c < 1)) throw TraceError("contour level must lie in (0,1)");
        ContourPolyline out = trace_impl(which, c, sigma, eps, true);
        if (out.status == TraceStatus::stalled && out.pts.size() <= 2) {
            // the start sat on a singular boundary point (cusp or reentrant
            // corner); approach it from the far chain instead, where the
            // finish needs only boundary values, never the gradient
            try {
                ContourPolyline back = trace_impl(which, c, sigma, eps, false);
                if (back.status != TraceStatus::stalled) {
                    std::reverse(back.pts.begin(), back.pts.end());
                    return back;
                }
            } catch (const TraceError&) {
            }
        }
        return out;
    }

    std::vector<ContourPolyline> grid(int nu, int nv, double sigma = 0,
                                      double eps = 1e-6) const {
        std::vector<double> lu(std::max(nu, 0)), lv(std::max(nv, 0));
        for (int k = 0; k < (int)lu.size(); ++k) lu[k] = (k + 1) / (nu + 1.0);
        for (int k = 0; k < (int)lv.size(); ++k) lv[k] = (k + 1) / (nv + 1.0);
        return grid(lu, lv, sigma, eps);
    }

    std::vector<ContourPolyline> grid(std::vector<double> levels_u,
                                       std::vector<double> levels_v, double sigma = 0,
                                       double eps = 1e-6) const {
        std::sort(levels_u.begin(), levels_u.end());
        std::sort(levels_v.begin(), levels_v.end());
        std::vector<ContourPolyline> out;
        out.reserve(levels_u.size() + levels_v.size());
        for (int fam = 0; fam < 2; ++fam)
            for (double c : fam == 0 ? levels_u : levels_v) {
                Potential which = fam == 0 ? Potential::u1 : Potential::u2;
                try {
                    out.push_back(trace(which, c, sigma, eps));
                } catch (const TraceError&) {
                    ContourPolyline bad;
                    bad.which = which;
                    bad.level = c;
                    out.push_back(std::move(bad)); // empty, status stalled
                }
            }
        return out;
    }

private:
    struct ChainPoint {
        FieldHit hit;
        Vec2 p;
        bool ok = false;
    };

    ContourPolyline trace_impl(Potential which, double c, double sigma, double eps,
                               bool forward) const {
        int w = (int)which;
        const auto& start_chain = chains_[forward ? w + 2 : w];
        const auto& end_chain = chains_[forward ? w : w + 2];
        if (start_chain.empty() || end_chain.empty())
            throw TraceError("boundary chains missing for this contour family");

        ContourPolyline out;
        out.which = which;
        double diam = loc_.diameter();

        // start point by bisection; levels landing close to a corner are
        // nudged one eps toward the middle of the chain's value range
        double level = c;
        ChainPoint s = chain_find(start_chain, w, level);
        if (s.ok) {
            Vec2 e0 = point(side_hit(start_chain.front(), 0));
            Vec2 e1 = point(side_hit(start_chain.back(), 1));
            if (std::min((s.p - e0).norm(), (s.p - e1).norm()) < 1e-3 * diam) {
                bool near0 = (s.p - e0).norm() < (s.p - e1).norm();
                double vnear = value(w, side_hit(near0 ? start_chain.front()
                                                       : start_chain.back(),
                                                 near0 ? 0 : 1));
                double shifted = c + (vnear < 0.5 ? eps : -eps);
                ChainPoint s2 = chain_find(start_chain, w, shifted);
                if (s2.ok) {
                    s = s2;
                    level = shifted;
                }
            }
        }
        if (!s.ok) throw TraceError("contour level not found on the starting boundary");
        out.level = level;

        ChainPoint fin = chain_find(end_chain, w, level);
        // u1 contours of a cut ring end on the other bank of the cut, which
        // welds them into loops
        bool loops = w == 1 && !chains_[1].empty() &&
                     chains_[1].front().tag == ArcTag::cut_hi;

        out.pts.push_back(s.p);
        Vec2 p = s.p;
        FieldHit h = s.hit;
        int max_steps = (int)(40 * diam / sigma) + 64;
        for (int step = 0; step < max_steps; ++step) {
            // finish when the conjugate coordinate has nearly run out and the
            // end point is close enough to keep the spacing bound
            if (fin.ok) {
                double v = value(3 - w, h);
                double rem = (w == 1) == forward ? 1 - v : v;
                if (rem <= 1.15 * sigma * grad(3 - w, h).norm() &&
                    (fin.p - p).norm() <= 2 * sigma) {
                    out.pts.push_back(fin.p);
                    out.status = loops ? TraceStatus::closed_loop
                                       : TraceStatus::reached_opposite_boundary;
                    return out;
                }
            }
            Vec2 g = grad(w, h);
            double gn = g.norm();
            if (gn < 1e-14) return out; // critical point: give up where we stand
            Vec2 dir = g.perp() * ((forward ? 1 : -1) / gn);
            double step_len = sigma;
            std::optional<FieldHit> hq;
            Vec2 q;
            for (int halve = 0; halve <= 6 && !hq; ++halve) {
                q = p + dir * step_len;
                hq = loc_.locate(q);
                if (!hq) step_len *= 0.5;
            }
            if (!hq) return out;
            Vec2 gq = grad(w, *hq);
            double gqn = gq.norm();
            if (gqn < 1e-14) return out;
            if (!correct(q, *hq, gq * (1 / gqn), w, level, sigma, eps, p, h)) return out;
            out.pts.push_back(p);
        }
        return out; // ran out of steps: stalled
    }

    double value(int which, const FieldHit& h) const {
        ++evals_;
        return ev_[which - 1]->value(h.elem, h.xi, h.eta);
    }
    Vec2 grad(int which, const FieldHit& h) const {
        ++evals_;
        return ev_[which - 1]->gradient(h.elem, h.xi, h.eta);
    }
    Vec2 point(const FieldHit& h) const {
        return ElementMap(*mesh_, h.elem).point(h.xi, h.eta);
    }

    // the chains carry monotone boundary values with exact 0/1 corner pins,
    // so a linear scan for a sign change plus bisection is enough
    ChainPoint chain_find(const std::vector<BoundaryPart>& chain, int w, double c) const {
        for (const BoundaryPart& bp : chain) {
            double v0 = value(w, side_hit(bp, 0));
            double v1 = value(w, side_hit(bp, 1));
            if ((v0 - c) * (v1 - c) > 0) continue;
            double a = 0, b = 1, va = v0;
            for (int i = 0; i < 60; ++i) {
                double mid = 0.5 * (a + b);
                double vm = value(w, side_hit(bp, mid));
                if ((va - c) * (vm - c) <= 0) {
                    b = mid;
                } else {
                    a = mid;
                    va = vm;
                }
            }
            FieldHit h = side_hit(bp, 0.5 * (a + b));
            return {h, point(h), true};
        }
        return {};
    }

    // 1-D Newton for u(q + t g) = c with a sign bracket once one is found;
    // |t| stays under 0.9 sigma so the spacing bound survives the correction
    bool correct(Vec2 q, FieldHit hq, Vec2 gdir, int w, double c, double sigma,
                 double eps, Vec2& out_p, FieldHit& out_h) const {
        double tmax = 0.9 * sigma;
        double t = 0;
        FieldHit h = hq;
        Vec2 pcur = q;
        double phi = value(w, h) - c;
        double ta = 0, tb = 0;
        bool has_lo = phi <= 0, has_hi = phi > 0;
        (phi <= 0 ? ta : tb) = 0;
        for (int it = 0; it < 50; ++it) {
            if (std::abs(phi) <= 0.5 * eps) {
                out_p = pcur;
                out_h = h;
                return true;
            }
            double d = grad(w, h).dot(gdir);
            double tn;
            if (has_lo && has_hi) {
                tn = d != 0 ? t - phi / d : 0.5 * (ta + tb);
                if (!(tn > std::min(ta, tb) && tn < std::max(ta, tb))) tn = 0.5 * (ta + tb);
            } else {
                if (d == 0) return false;
                tn = std::clamp(t - phi / d, -tmax, tmax);
                if (tn == t) return false; // root beyond the cap
            }
            Vec2 pn = q + gdir * tn;
            auto hn = loc_.locate(pn);
            for (int k = 0; k < 6 && !hn; ++k) { // pull back inside the domain
                tn = 0.5 * (tn + t);
                pn = q + gdir * tn;
                hn = loc_.locate(pn);
            }
            if (!hn) return false;
            t = tn;
            h = *hn;
            pcur = pn;
            phi = value(w, h) - c;
            if (phi <= 0) {
                ta = t;
                has_lo = true;
            } else {
                tb = t;
                has_hi = true;
            }
        }
        return false;
    }

    std::shared_ptr<const Mesh> mesh_;
    std::array<std::shared_ptr<const FieldEval>, 2> ev_;
    Locator loc_;
    BoundaryChains chains_;
    mutable long long evals_ = 0;
};

// Where a cut endpoint sits on a boundary chain: part index plus fraction.
struct CutAttachment {
    int part = -1;
    double t = 0;
};

struct CutCurve {
    std::vector<Vec2> pts; // inner boundary -> outer boundary
    CutAttachment inner, outer;
};

// Integral curve of -grad u from the inner boundary (u = 1) down to the outer
// (u = 0): unit-speed RK4 with the step capped at 0.45 u/|grad u| so the
// descent lands on the outer boundary instead of shooting past it. With no
// seed the start is the inner-boundary sample of largest |grad u|; a seed
// point is projected onto the inner chain first.
inline CutCurve steepest_descent_cut(const Mesh& m, const FieldEval& u,
                                     std::optional<Vec2> seed = {}) {
    if (m.domain.kind != DomainKind::ring)
        throw TraceError("steepest-descent cut needs an uncut ring");
    Locator loc(m);
    BoundaryChains ch = boundary_chains(m);
    const auto& inner = ch[4];
    const auto& outer = ch[2];
    if (inner.empty() || outer.empty()) throw TraceError("ring boundary chains not found");
    double diam = loc.diameter();

    auto chain_pt = [&](const BoundaryPart& bp, double t) {
        FieldHit h = side_hit(bp, t);
        return ElementMap(m, bp.elem).point(h.xi, h.eta);
    };

    const int ns = 8;
    int best_part = 0;
    double best_t = 0.5, best = -1e300;
    for (int ip = 0; ip < (int)inner.size(); ++ip)
        for (int j = 0; j < ns; ++j) {
            double t = (j + 0.5) / ns;
            FieldHit h = side_hit(inner[ip], t);
            double score = seed ? -(chain_pt(inner[ip], t) - *seed).norm()
                                : u.gradient(h.elem, h.xi, h.eta).norm();
            if (score > best) {
                best = score;
                best_part = ip;
                best_t = t;
            }
        }
    if (seed) { // refine the projection so a symmetric seed stays symmetric
        double a = std::max(0.0, best_t - 1.0 / ns), b = std::min(1.0, best_t + 1.0 / ns);
        for (int i = 0; i < 80; ++i) {
            double t1 = a + (b - a) / 3, t2 = b - (b - a) / 3;
            double d1 = (chain_pt(inner[best_part], t1) - *seed).norm();
            double d2 = (chain_pt(inner[best_part], t2) - *seed).norm();
            (d1 < d2 ? b : a) = d1 < d2 ? t2 : t1;
        }
        best_t = 0.5 * (a + b);
    }

    CutCurve cut;
    cut.inner = {best_part, best_t};
    FieldHit h = side_hit(inner[best_part], best_t);
    Vec2 p = chain_pt(inner[best_part], best_t);
    cut.pts.push_back(p);

    double base = 0.02 * diam;
    int max_steps = (int)(80 * diam / base) + 64;
    auto fail = [&](Vec2 at) {
        throw TraceError("steepest descent hit a critical point near (" +
                         std::to_string(at.x) + ", " + std::to_string(at.y) + ")");
    };
    for (int step = 0; step < max_steps; ++step) {
        double uval = u.value(h.elem, h.xi, h.eta);
        if (uval <= 1e-11) break;
        Vec2 g = u.gradient(h.elem, h.xi, h.eta);
        double gn = g.norm();
        if (gn < 1e-12) fail(p);
        double delta = std::min(base, 0.45 * uval / gn);
        auto slope = [&](Vec2 x, Vec2 fallback) {
            auto hx = loc.locate(x);
            if (!hx) return fallback;
            Vec2 gg = u.gradient(hx->elem, hx->xi, hx->eta);
            double n = gg.norm();
            return n < 1e-12 ? fallback : gg * (-1 / n);
        };
        Vec2 k1 = g * (-1 / gn);
        Vec2 k2 = slope(p + k1 * (0.5 * delta), k1);
        Vec2 k3 = slope(p + k2 * (0.5 * delta), k1);
        Vec2 k4 = slope(p + k3 * delta, k1);
        Vec2 pn = p + (k1 + (k2 + k3) * 2.0 + k4) * (delta / 6.0);
        auto hn = loc.locate(pn);
        for (int k = 0; k < 8 && !hn; ++k) {
            pn = p + (pn - p) * 0.5;
            hn = loc.locate(pn);
        }
        if (!hn) break; // grazing the outer boundary; the projection finishes
        p = pn;
        h = *hn;
        cut.pts.push_back(p);
        if (step + 1 == max_steps) fail(p);
    }

    // attach the tail to the outer chain: coarse scan, then ternary refine
    best_part = 0;
    best_t = 0.5;
    best = 1e300;
    const int ms = 16;
    for (int ip = 0; ip < (int)outer.size(); ++ip)
        for (int j = 0; j <= ms; ++j) {
            double t = (double)j / ms;
            double dist = (chain_pt(outer[ip], t) - p).norm();
            if (dist < best) {
                best = dist;
                best_part = ip;
                best_t = t;
            }
        }
    double a = std::max(0.0, best_t - 1.0 / ms), b = std::min(1.0, best_t + 1.0 / ms);
    for (int i = 0; i < 80; ++i) {
        double t1 = a + (b - a) / 3, t2 = b - (b - a) / 3;
        double d1 = (chain_pt(outer[best_part], t1) - p).norm();
        double d2 = (chain_pt(outer[best_part], t2) - p).norm();
        (d1 < d2 ? b : a) = d1 < d2 ? t2 : t1;
    }
    best_t = 0.5 * (a + b);
    cut.pts.push_back(chain_pt(outer[best_part], best_t));
    cut.outer = {best_part, best_t};
    return cut;
}

inline CutCurve steepest_descent_cut(const RingPotential& rp,
                                     std::optional<Vec2> seed = {}) {
    return steepest_descent_cut(*rp.mesh, *rp.ev, seed);
}

} // namespace confmap
