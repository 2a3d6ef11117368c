#pragma once

#include <algorithm>
#include <array>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "confmap/core.hpp"
#include "confmap/curve.hpp"

namespace confmap {

// Boundary arc roles. A quadrilateral boundary is gamma1..gamma4 in
// counterclockwise order; a ring has an inner and an outer loop. Cutting a
// ring produces a quadrilateral whose sides keep the ring-specific names:
// cut_hi plays gamma1, outer gamma2, cut_lo gamma3, inner gamma4.
enum class ArcTag : uint8_t {
    interior,
    gamma1,
    gamma2,
    gamma3,
    gamma4,
    inner,
    outer,
    cut_hi,
    cut_lo,
};

// Role of a tag on a quadrilateral boundary: 1..4, or 0 for interior.
inline int arc_role(ArcTag t) {
    switch (t) {
    case ArcTag::gamma1:
    case ArcTag::cut_hi: return 1;
    case ArcTag::gamma2:
    case ArcTag::outer: return 2;
    case ArcTag::gamma3:
    case ArcTag::cut_lo: return 3;
    case ArcTag::gamma4:
    case ArcTag::inner: return 4;
    default: return 0;
    }
}

inline const char* arc_tag_name(ArcTag t) {
    switch (t) {
    case ArcTag::interior: return "interior";
    case ArcTag::gamma1: return "gamma1";
    case ArcTag::gamma2: return "gamma2";
    case ArcTag::gamma3: return "gamma3";
    case ArcTag::gamma4: return "gamma4";
    case ArcTag::inner: return "inner";
    case ArcTag::outer: return "outer";
    case ArcTag::cut_hi: return "cut_hi";
    default: return "cut_lo";
    }
}

inline ArcTag arc_tag_from(std::string_view s) {
    for (int i = 0; i <= int(ArcTag::cut_lo); ++i)
        if (s == arc_tag_name(ArcTag(i))) return ArcTag(i);
    throw GeometryError("unknown edge tag: " + std::string(s));
}

struct DomainEdge {
    int v0 = -1, v1 = -1;
    int curve = -1;         // -1: straight chord
    double t0 = 0, t1 = 1;  // curve sub-interval; t0 > t1 traverses backwards
    ArcTag tag = ArcTag::interior;
    // Parameterization order at each endpoint: q means the distance from the
    // endpoint grows like parameter^q, so q > 1 where the curve derivative
    // vanishes. Graded refinement takes fractions ratio^(k/q) along such an
    // edge to keep the layer sizes geometric in space; otherwise a layer
    // spans a huge range of distances to the corner and the approximation
    // of the corner singularity inside it stalls.
    double order0 = 1, order1 = 1;
};

struct DomainBlock {
    std::array<int, 4> v{};     // corners, counterclockwise
    std::array<int, 4> edge{};  // side i connects v[i] -> v[(i+1)%4]
    std::array<bool, 4> fwd{};  // edge stored in traversal direction?
};

struct MarkedVertex {
    int vertex = -1;
    int max_levels = 0; // 0: no cap
};

enum class DomainKind : uint8_t { quadrilateral, ring };

// A curved block decomposition of the computational domain. Blocks are
// quadrilateral patches whose sides may follow curves; refinement and
// analysis never change this description.
struct Domain {
    DomainKind kind = DomainKind::quadrilateral;
    std::vector<Vec2> vertices;
    std::vector<Curve> curves;
    std::vector<DomainEdge> edges;
    std::vector<DomainBlock> blocks;
    std::array<int, 4> corners{-1, -1, -1, -1}; // z1..z4 for quadrilaterals
    std::vector<MarkedVertex> marked;           // corners given graded refinement

    Vec2 edge_point(int e, double f) const {
        const DomainEdge& ed = edges[e];
        if (ed.curve < 0) return vertices[ed.v0] * (1 - f) + vertices[ed.v1] * f;
        return curves[ed.curve].point(ed.t0 + f * (ed.t1 - ed.t0));
    }

    Vec2 edge_tangent(int e, double f) const { // d/df along v0 -> v1
        const DomainEdge& ed = edges[e];
        if (ed.curve < 0) return vertices[ed.v1] - vertices[ed.v0];
        return curves[ed.curve].derivative(ed.t0 + f * (ed.t1 - ed.t0)) * (ed.t1 - ed.t0);
    }

    int find_edge(int a, int b) const {
        for (int e = 0; e < (int)edges.size(); ++e)
            if ((edges[e].v0 == a && edges[e].v1 == b) || (edges[e].v0 == b && edges[e].v1 == a))
                return e;
        return -1;
    }

    int marked_index(int v) const {
        for (int i = 0; i < (int)marked.size(); ++i)
            if (marked[i].vertex == v) return i;
        return -1;
    }

    double diameter() const {
        BBox bb;
        for (const Vec2& p : vertices) bb.absorb(p);
        return bb.diag();
    }

    // Ordered boundary walk entries, interior kept on the left.
    struct LoopEntry {
        int edge;
        bool fwd;  // traversal runs edge.v0 -> edge.v1?
        int block; // the single block using this edge
        int side;
    };

    std::vector<int> edge_use_count() const {
        std::vector<int> uses(edges.size(), 0);
        for (const auto& b : blocks)
            for (int s = 0; s < 4; ++s) ++uses[b.edge[s]];
        return uses;
    }

    std::vector<std::vector<LoopEntry>> boundary_loops() const;

    void link_blocks();   // derive block edge ids / orientations from corner ids
    void validate() const;
};

inline std::vector<std::vector<Domain::LoopEntry>> Domain::boundary_loops() const {
    auto uses = edge_use_count();
    // start vertex -> loop entry, following block traversal direction
    std::map<int, LoopEntry> next;
    for (int b = 0; b < (int)blocks.size(); ++b)
        for (int s = 0; s < 4; ++s) {
            int e = blocks[b].edge[s];
            if (uses[e] != 1) continue;
            LoopEntry le{e, blocks[b].fwd[s], b, s};
            int start = blocks[b].v[s];
            if (!next.emplace(start, le).second)
                throw GeometryError("boundary is not a disjoint union of loops");
        }
    std::vector<std::vector<LoopEntry>> loops;
    std::set<int> seen;
    for (auto& [start, first] : next) {
        if (seen.count(start)) continue;
        std::vector<LoopEntry> loop;
        int v = start;
        do {
            auto it = next.find(v);
            if (it == next.end()) throw GeometryError("open boundary chain");
            loop.push_back(it->second);
            seen.insert(v);
            const DomainEdge& ed = edges[it->second.edge];
            v = it->second.fwd ? ed.v1 : ed.v0;
        } while (v != start);
        loops.push_back(std::move(loop));
    }
    return loops;
}

inline void Domain::link_blocks() {
    for (auto& b : blocks) {
        for (int s = 0; s < 4; ++s) {
            int a = b.v[s], c = b.v[(s + 1) % 4];
            int e = find_edge(a, c);
            if (e < 0)
                throw GeometryError("block side has no edge between vertices " +
                                    std::to_string(a) + " and " + std::to_string(c));
            b.edge[s] = e;
            b.fwd[s] = (edges[e].v0 == a);
        }
    }
}

inline void Domain::validate() const {
    const double tol = 1e-9 * std::max(diameter(), 1e-30);
    int nv = (int)vertices.size();
    for (const auto& ed : edges) {
        if (ed.v0 < 0 || ed.v0 >= nv || ed.v1 < 0 || ed.v1 >= nv || ed.v0 == ed.v1)
            throw GeometryError("edge with invalid endpoints");
        if (ed.curve >= (int)curves.size()) throw GeometryError("edge references missing curve");
        if (ed.curve >= 0) {
            if (ed.t0 == ed.t1) throw GeometryError("degenerate curve interval");
            if ((curves[ed.curve].point(ed.t0) - vertices[ed.v0]).norm() > tol ||
                (curves[ed.curve].point(ed.t1) - vertices[ed.v1]).norm() > tol)
                throw GeometryError("curve endpoints do not match edge vertices");
        }
    }
    auto uses = edge_use_count();
    for (size_t e = 0; e < edges.size(); ++e) {
        if (uses[e] == 0) throw GeometryError("unused edge in domain");
        if (uses[e] > 2) throw GeometryError("edge shared by more than two blocks");
        bool boundary_tag = edges[e].tag != ArcTag::interior;
        if (boundary_tag != (uses[e] == 1))
            throw GeometryError(std::string("edge tag/topology mismatch on ") +
                                arc_tag_name(edges[e].tag) + " edge");
    }
    for (const auto& b : blocks) {
        for (int s = 0; s < 4; ++s) {
            const DomainEdge& ed = edges[b.edge[s]];
            int a = b.fwd[s] ? ed.v0 : ed.v1, c = b.fwd[s] ? ed.v1 : ed.v0;
            if (a != b.v[s] || c != b.v[(s + 1) % 4])
                throw GeometryError("block edge loop does not match corners");
        }
        double area2 = 0;
        for (int s = 0; s < 4; ++s)
            area2 += vertices[b.v[s]].cross(vertices[b.v[(s + 1) % 4]]);
        if (area2 <= 0) throw GeometryError("block corners not counterclockwise");
        int nmark = 0;
        for (int s = 0; s < 4; ++s)
            if (marked_index(b.v[s]) >= 0) ++nmark;
        if (nmark > 1) throw GeometryError("block touches more than one marked corner");
    }
    for (const auto& m : marked)
        if (m.vertex < 0 || m.vertex >= nv || m.max_levels < 0)
            throw GeometryError("invalid marked vertex");

    auto loops = boundary_loops();
    if (kind == DomainKind::quadrilateral) {
        if (loops.size() != 1) throw GeometryError("quadrilateral boundary must be one loop");
        for (int z : corners)
            if (z < 0 || z >= nv) throw GeometryError("quadrilateral corners not set");
        const auto& loop = loops[0];
        int n = (int)loop.size();
        auto start_vertex = [&](int i) {
            const auto& le = loop[i];
            return le.fwd ? edges[le.edge].v0 : edges[le.edge].v1;
        };
        int i0 = -1;
        for (int i = 0; i < n; ++i)
            if (start_vertex(i) == corners[0]) i0 = i;
        if (i0 < 0) throw GeometryError("corner z1 not on boundary");
        int want = 1, corner = 1;
        for (int k = 0; k < n; ++k) {
            const auto& le = loop[(i0 + k) % n];
            if (k > 0 && corner < 4 && start_vertex((i0 + k) % n) == corners[corner]) {
                ++want;
                ++corner;
            }
            if (arc_role(edges[le.edge].tag) != want)
                throw GeometryError(std::string("boundary arc order: expected role ") +
                                    std::to_string(want) + " got " +
                                    arc_tag_name(edges[le.edge].tag));
        }
        if (corner != 4) throw GeometryError("corners out of order on boundary");
    } else {
        if (loops.size() != 2) throw GeometryError("ring boundary must be two loops");
        auto uniform = [&](const std::vector<LoopEntry>& loop, ArcTag t) {
            for (const auto& le : loop)
                if (edges[le.edge].tag != t) return false;
            return true;
        };
        int in = uniform(loops[0], ArcTag::inner) ? 0 : uniform(loops[1], ArcTag::inner) ? 1 : -1;
        if (in < 0 || !uniform(loops[1 - in], ArcTag::outer))
            throw GeometryError("ring loops must be tagged inner and outer");
    }
}

// Incremental construction helper used by the domain templates.
class TemplateBuilder {
public:
    Domain d;

    int vertex(Vec2 p) {
        d.vertices.push_back(p);
        return (int)d.vertices.size() - 1;
    }

    int curve(Curve c) {
        d.curves.push_back(std::move(c));
        return (int)d.curves.size() - 1;
    }

    int edge(int a, int b, ArcTag tag = ArcTag::interior) { return edge(a, b, -1, 0, 1, tag); }

    int edge(int a, int b, int curve, double t0, double t1, ArcTag tag = ArcTag::interior) {
        if (d.find_edge(a, b) >= 0) throw GeometryError("duplicate edge in template");
        d.edges.push_back({a, b, curve, t0, t1, tag});
        return (int)d.edges.size() - 1;
    }

    void edge_order(int e, double at_v0, double at_v1) {
        if (at_v0 < 1 || at_v1 < 1) throw GeometryError("parameterization order must be >= 1");
        d.edges[e].order0 = at_v0;
        d.edges[e].order1 = at_v1;
    }

    // Counterclockwise block over existing edges; missing sides become
    // straight interior edges.
    int quad(int a, int b, int c, int e) {
        DomainBlock blk;
        blk.v = {a, b, c, e};
        for (int s = 0; s < 4; ++s)
            if (d.find_edge(blk.v[s], blk.v[(s + 1) % 4]) < 0)
                edge(blk.v[s], blk.v[(s + 1) % 4]);
        d.blocks.push_back(blk);
        d.link_blocks();
        return (int)d.blocks.size() - 1;
    }

    void mark(int v, int max_levels = 0) { d.marked.push_back({v, max_levels}); }

    Domain finish(DomainKind kind, std::array<int, 4> corners = {-1, -1, -1, -1}) {
        d.kind = kind;
        d.corners = corners;
        d.link_blocks();
        d.validate();
        return d;
    }
};

// Cut a ring domain along a chain of interior edges running from the inner
// boundary to the outer one. The result is a quadrilateral: the duplicated
// bank on the left of the inner->outer direction becomes cut_hi (role of
// gamma1), the original bank cut_lo, and the corners are the duplicated /
// original chain endpoints. Marked chain vertices stay marked on both banks.
inline Domain cut_ring(const Domain& ring, const std::vector<int>& path) {
    if (ring.kind != DomainKind::ring) throw GeometryError("cut_ring needs a ring domain");
    if (path.size() < 2) throw GeometryError("cut path too short");
    Domain d = ring;
    auto uses = d.edge_use_count();

    int m = (int)path.size() - 1;
    std::vector<int> path_edge(m);
    std::set<int> sealed;
    for (int i = 0; i < m; ++i) {
        int e = d.find_edge(path[i], path[i + 1]);
        if (e < 0 || uses[e] != 2 || d.edges[e].tag != ArcTag::interior)
            throw GeometryError("cut path must follow interior edges");
        path_edge[i] = e;
        sealed.insert(e);
    }
    auto on_loop = [&](int v, ArcTag t) {
        for (const auto& ed : d.edges)
            if (ed.tag == t && (ed.v0 == v || ed.v1 == v)) return true;
        return false;
    };
    if (!on_loop(path.front(), ArcTag::inner) || !on_loop(path.back(), ArcTag::outer))
        throw GeometryError("cut path must run from the inner loop to the outer loop");

    // blocks on the left of each directed path edge
    std::vector<int> left_block(m, -1), right_block(m, -1);
    for (int b = 0; b < (int)d.blocks.size(); ++b)
        for (int s = 0; s < 4; ++s)
            for (int i = 0; i < m; ++i)
                if (d.blocks[b].edge[s] == path_edge[i]) {
                    Vec2 a = d.vertices[path[i]], dir = d.vertices[path[i + 1]] - a;
                    Vec2 c{0, 0};
                    for (int k = 0; k < 4; ++k) c += d.vertices[d.blocks[b].v[k]];
                    (dir.cross(c / 4.0 - a) > 0 ? left_block : right_block)[i] = b;
                }
    for (int i = 0; i < m; ++i)
        if (left_block[i] < 0 || right_block[i] < 0)
            throw GeometryError("cut path edge without blocks on both sides");

    // Around each path vertex, blocks split into two fans separated by the
    // sealed edges (and the domain boundary at the endpoints). Re-point the
    // fan on the hi side to a duplicated vertex.
    std::vector<int> dup(path.size());
    for (int i = 0; i <= m; ++i) {
        int w = path[i];
        std::vector<int> inc;
        for (int b = 0; b < (int)d.blocks.size(); ++b)
            for (int s = 0; s < 4; ++s)
                if (d.blocks[b].v[s] == w) inc.push_back(b);
        std::sort(inc.begin(), inc.end());
        inc.erase(std::unique(inc.begin(), inc.end()), inc.end());

        // adjacency through unsealed edges incident to w
        std::map<int, std::vector<int>> edge_blocks;
        for (int b : inc)
            for (int s = 0; s < 4; ++s) {
                int e = d.blocks[b].edge[s];
                if (sealed.count(e)) continue;
                if (d.edges[e].v0 == w || d.edges[e].v1 == w) edge_blocks[e].push_back(b);
            }
        std::map<int, int> comp;
        for (int b : inc) comp[b] = -1;
        int ncomp = 0;
        for (int b : inc) {
            if (comp[b] >= 0) continue;
            std::vector<int> stack{b};
            comp[b] = ncomp;
            while (!stack.empty()) {
                int cur = stack.back();
                stack.pop_back();
                for (auto& [e, bs] : edge_blocks)
                    if (std::find(bs.begin(), bs.end(), cur) != bs.end())
                        for (int nb : bs)
                            if (comp[nb] < 0) {
                                comp[nb] = ncomp;
                                stack.push_back(nb);
                            }
            }
            ++ncomp;
        }
        if (ncomp != 2) throw GeometryError("cut path does not separate blocks at a vertex");
        int hi_seed = left_block[std::min(i, m - 1)];
        if (i > 0 && comp[left_block[i - 1]] != comp[hi_seed])
            throw GeometryError("cut banks disagree between consecutive edges");
        int hi_comp = comp[hi_seed];

        dup[i] = (int)d.vertices.size();
        d.vertices.push_back(d.vertices[w]);
        int mi = d.marked_index(w);
        if (mi >= 0) d.marked.push_back({dup[i], d.marked[mi].max_levels});

        // re-point hi-fan block corners and the edges used only by the hi fan
        std::set<int> hi_edges, lo_edges;
        for (int b : inc) {
            auto& bs = (comp[b] == hi_comp ? hi_edges : lo_edges);
            if (comp[b] == hi_comp)
                for (int s = 0; s < 4; ++s)
                    if (d.blocks[b].v[s] == w) d.blocks[b].v[s] = dup[i];
            for (int s = 0; s < 4; ++s) {
                int e = d.blocks[b].edge[s];
                if ((d.edges[e].v0 == w || d.edges[e].v1 == w) && !sealed.count(e)) bs.insert(e);
            }
        }
        for (int e : hi_edges) {
            if (lo_edges.count(e)) throw GeometryError("unsealed edge spans both banks");
            (d.edges[e].v0 == w ? d.edges[e].v0 : d.edges[e].v1) = dup[i];
        }
    }

    // duplicate the path edges: original keeps the lo bank, copy serves the hi bank
    for (int i = 0; i < m; ++i) {
        DomainEdge hi = d.edges[path_edge[i]];
        (hi.v0 == path[i] ? hi.v0 : hi.v1) = dup[i];
        (hi.v0 == path[i + 1] ? hi.v0 : hi.v1) = dup[i + 1];
        hi.tag = ArcTag::cut_hi;
        d.edges[path_edge[i]].tag = ArcTag::cut_lo;
        int hi_id = (int)d.edges.size();
        d.edges.push_back(hi);
        auto& blk = d.blocks[left_block[i]];
        for (int s = 0; s < 4; ++s)
            if (blk.edge[s] == path_edge[i]) blk.edge[s] = hi_id;
    }

    d.kind = DomainKind::quadrilateral;
    d.corners = {dup[0], dup[m], path[m], path[0]};
    d.link_blocks();
    d.validate();
    return d;
}

} // namespace confmap
