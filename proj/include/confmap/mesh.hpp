#pragma once

#include <bit>
#include <cmath>
#include <cstdint>
#include <map>
#include <vector>

#include "confmap/problem.hpp"

namespace confmap {

struct MeshEdge {
    int v0, v1;
    int curve = -1; // domain curve id, -1: straight
    double t0 = 0, t1 = 1;
    ArcTag tag = ArcTag::interior;
    int domain_edge = -1;
};

struct MeshElement {
    std::array<int, 4> v;    // counterclockwise
    std::array<int, 4> edge; // side s connects v[s] -> v[(s+1)%4]
    int block = -1;
};

struct Mesh {
    Domain domain; // kept for curve geometry
    std::vector<Vec2> xy;
    std::vector<MeshEdge> edges;
    std::vector<MeshElement> elems;

    bool edge_forward(int elem, int side) const {
        return edges[elems[elem].edge[side]].v0 == elems[elem].v[side];
    }
};

// Transfinite interpolation of a block's four boundary curves onto [0,1]^2.
struct BlockMap {
    const Domain* d;
    const DomainBlock* b;

    Vec2 side(int s, double t) const { // t in [0,1] along traversal v[s] -> v[s+1]
        return d->edge_point(b->edge[s], b->fwd[s] ? t : 1 - t);
    }

    Vec2 point(double x, double y) const {
        Vec2 p0 = d->vertices[b->v[0]], p1 = d->vertices[b->v[1]];
        Vec2 p2 = d->vertices[b->v[2]], p3 = d->vertices[b->v[3]];
        Vec2 lin = side(0, x) * (1 - y) + side(2, 1 - x) * y +
                   side(3, 1 - y) * (1 - x) + side(1, y) * x;
        Vec2 bil = p0 * ((1 - x) * (1 - y)) + p1 * (x * (1 - y)) + p2 * (x * y) +
                   p3 * ((1 - x) * y);
        return lin - bil;
    }
};

struct MeshOptions {
    int levels = 8;
    double ratio = 0.15;
};

// Builds a conforming mesh from the block decomposition. Unmarked blocks
// stay single elements. A block whose corner is a marked vertex is split
// into 2L+1 elements: L trapezoid layers shrinking geometrically toward the
// corner plus an innermost quad. Only the two block edges meeting the marked
// corner are subdivided, so neighbours refine compatibly as long as marking
// is per-vertex. Subdivision fractions come from one global table so that
// the two blocks sharing an edge generate bit-identical split keys; cut
// banks stay distinct because vertices are shared by id, never by position.
inline Mesh build_mesh(const Domain& d, const MeshOptions& opt = {}) {
    if (opt.levels < 0 || opt.ratio <= 0 || opt.ratio >= 1)
        throw GeometryError("invalid refinement parameters");
    Mesh m;
    m.domain = d;
    m.xy = d.vertices;

    int lmax = 0;
    auto eff_levels = [&](int mi) {
        const MarkedVertex& mv = d.marked[mi];
        return mv.max_levels > 0 ? std::min(opt.levels, mv.max_levels) : opt.levels;
    };
    for (int i = 0; i < (int)d.marked.size(); ++i) lmax = std::max(lmax, eff_levels(i));
    std::vector<double> delta(lmax + 1), comp(lmax + 1);
    for (int k = 0; k <= lmax; ++k) {
        delta[k] = std::pow(opt.ratio, k);
        comp[k] = 1 - delta[k];
    }

    std::map<std::pair<int, long long>, int> split; // (domain edge, fraction bits) -> vertex
    auto split_vertex = [&](int e, double f) {
        auto key = std::make_pair(e, (long long)std::bit_cast<int64_t>(f));
        auto it = split.find(key);
        if (it != split.end()) return it->second;
        int id = (int)m.xy.size();
        m.xy.push_back(d.edge_point(e, f));
        split.emplace(key, id);
        return id;
    };

    std::map<std::pair<int, int>, int> edge_ids;
    auto add_edge = [&](int a, int b, MeshEdge proto) {
        auto key = std::minmax(a, b);
        auto it = edge_ids.find(key);
        if (it != edge_ids.end()) return it->second;
        int id = (int)m.edges.size();
        m.edges.push_back(proto);
        edge_ids.emplace(key, id);
        return id;
    };
    auto straight_edge = [&](int a, int b) {
        return add_edge(a, b, MeshEdge{a, b, -1, 0, 1, ArcTag::interior, -1});
    };
    // sub-interval [fa,fb] of a domain edge, endpoints already registered
    auto domain_sub_edge = [&](int e, int va, double fa, int vb, double fb) {
        if (fa > fb) {
            std::swap(fa, fb);
            std::swap(va, vb);
        }
        const DomainEdge& ed = d.edges[e];
        MeshEdge proto{va, vb, ed.curve, ed.t0 + fa * (ed.t1 - ed.t0),
                       ed.t0 + fb * (ed.t1 - ed.t0), ed.tag, e};
        if (ed.curve < 0) proto.t0 = 0, proto.t1 = 1;
        return add_edge(va, vb, proto);
    };
    auto full_edge = [&](int e) {
        const DomainEdge& ed = d.edges[e];
        return add_edge(ed.v0, ed.v1, MeshEdge{ed.v0, ed.v1, ed.curve, ed.t0, ed.t1, ed.tag, e});
    };

    for (int bi = 0; bi < (int)d.blocks.size(); ++bi) {
        const DomainBlock& blk = d.blocks[bi];
        int c = -1, mi = -1;
        for (int s = 0; s < 4; ++s)
            if ((mi = d.marked_index(blk.v[s])) >= 0) {
                c = s;
                break;
            }
        int L = c >= 0 ? eff_levels(d.marked_index(blk.v[c])) : 0;

        if (c < 0 || L == 0) {
            MeshElement el;
            el.v = blk.v;
            el.block = bi;
            for (int s = 0; s < 4; ++s) el.edge[s] = full_edge(blk.edge[s]);
            m.elems.push_back(el);
            continue;
        }

        int w = blk.v[c];
        int vb0 = blk.v[(c + 1) % 4], vdiag = blk.v[(c + 2) % 4], vl0 = blk.v[(c + 3) % 4];
        int e_bot = blk.edge[c], e_left = blk.edge[(c + 3) % 4];
        // fraction of edge e at depth k measured from the w end, adjusted for
        // a degenerate parameterization there (see DomainEdge::order0)
        auto wdist = [&](int e, int k) {
            const DomainEdge& ed = d.edges[e];
            double q = ed.v0 == w ? ed.order0 : ed.order1;
            return q == 1 ? delta[k] : std::pow(opt.ratio, k / q);
        };
        auto canon = [&](int e, int k) {
            return d.edges[e].v0 == w ? wdist(e, k) : 1 - wdist(e, k);
        };
        auto wfrac = [&](int e) { return d.edges[e].v0 == w ? 0.0 : 1.0; };

        std::vector<int> bot(L + 1), lef(L + 1), dia(L + 1);
        bot[0] = vb0;
        lef[0] = vl0;
        dia[0] = vdiag;
        BlockMap bm{&d, &blk};
        for (int k = 1; k <= L; ++k) {
            bot[k] = split_vertex(e_bot, canon(e_bot, k));
            lef[k] = split_vertex(e_left, canon(e_left, k));
            // diagonal point at the per-side fractions, rotated into block coords
            double fb = wdist(e_bot, k), fl = wdist(e_left, k), x, y;
            switch (c) {
            case 0: x = fb, y = fl; break;
            case 1: x = 1 - fl, y = fb; break;
            case 2: x = 1 - fb, y = 1 - fl; break;
            default: x = fl, y = 1 - fb; break;
            }
            dia[k] = (int)m.xy.size();
            m.xy.push_back(bm.point(x, y));
        }

        auto emit = [&](std::array<int, 4> v, std::array<int, 4> e) {
            m.elems.push_back(MeshElement{v, e, bi});
        };
        for (int k = 0; k < L; ++k) {
            int eb = domain_sub_edge(e_bot, bot[k + 1], canon(e_bot, k + 1), bot[k],
                                     canon(e_bot, k));
            int el = domain_sub_edge(e_left, lef[k], canon(e_left, k), lef[k + 1],
                                     canon(e_left, k + 1));
            int up = k == 0 ? full_edge(blk.edge[(c + 1) % 4]) : straight_edge(bot[k], dia[k]);
            int across = k == 0 ? full_edge(blk.edge[(c + 2) % 4]) : straight_edge(dia[k], lef[k]);
            int diag_in = straight_edge(dia[k + 1], dia[k]);
            emit({bot[k + 1], bot[k], dia[k], dia[k + 1]},
                 {eb, up, diag_in, straight_edge(dia[k + 1], bot[k + 1])});
            emit({lef[k + 1], dia[k + 1], dia[k], lef[k]},
                 {straight_edge(lef[k + 1], dia[k + 1]), diag_in, across, el});
        }
        emit({w, bot[L], dia[L], lef[L]},
             {domain_sub_edge(e_bot, w, wfrac(e_bot), bot[L], canon(e_bot, L)),
              straight_edge(bot[L], dia[L]), straight_edge(dia[L], lef[L]),
              domain_sub_edge(e_left, lef[L], canon(e_left, L), w, wfrac(e_left))});
    }

    // conformity: boundary edges belong to one element, interior ones to two
    std::vector<int> uses(m.edges.size(), 0);
    for (const auto& el : m.elems)
        for (int s = 0; s < 4; ++s) ++uses[el.edge[s]];
    for (size_t e = 0; e < m.edges.size(); ++e) {
        int want = m.edges[e].tag == ArcTag::interior ? 2 : 1;
        if (uses[e] != want) throw GeometryError("mesh conformity check failed");
    }
    for (const auto& el : m.elems) {
        // shoelace about the first corner: deep refinement makes elements
        // whose area would drown in cancellation noise against the raw
        // coordinate magnitudes
        Vec2 o = m.xy[el.v[0]];
        double area2 = 0;
        for (int s = 1; s < 3; ++s)
            area2 += (m.xy[el.v[s]] - o).cross(m.xy[el.v[s + 1]] - o);
        if (!(area2 > 0)) throw GeometryError("inverted element corners");
    }
    return m;
}

} // namespace confmap
