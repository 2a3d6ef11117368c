#pragma once

#include <vector>

#include "confmap/basis.hpp"
#include "confmap/mesh.hpp"

namespace confmap {

// Dof classes for the mixed Dirichlet-Neumann pair. The first potential is
// 1 on role-4 arcs, 0 on role-2, with natural conditions on roles 1 and 3;
// the conjugate potential swaps the roles (1 on role-1 arcs, 0 on role-3)
// and leaves the previously constrained sides free. Dirichlet wins where a
// vertex joins arcs of both flavours, so the quadrilateral corners belong to
// D1/D0 and stay unconstrained in the conjugate solve.
enum class DofClass : uint8_t { B, N1, N0, D1, D0 };

struct DofTable {
    int p = 1;
    int nv = 0, ne = 0, nelem = 0;
    int n = 0;
    std::vector<DofClass> cls;

    int vertex_dof(int v) const { return v; }
    int edge_dof(int e, int i) const { return nv + e * (p - 1) + (i - 2); } // i = 2..p
    int internal_dof(int elem, int i, int j) const {
        return nv + ne * (p - 1) + elem * (p - 1) * (p - 1) + (i - 2) * (p - 1) + (j - 2);
    }

    // Global ids and orientation signs in shape-function order. Odd-degree
    // side modes flip sign when the intrinsic side direction runs from the
    // higher global vertex id to the lower one, which keeps the shared edge
    // functions single-valued between neighbours.
    void element_dofs(const Mesh& m, int elem, int* ids, double* sign) const {
        const MeshElement& el = m.elems[elem];
        int k = 0;
        for (int v = 0; v < 4; ++v, ++k) ids[k] = el.v[v], sign[k] = 1.0;
        static constexpr int SA[4] = {0, 1, 3, 0}, SB[4] = {1, 2, 2, 3};
        for (int s = 0; s < 4; ++s) {
            bool flip = el.v[SA[s]] > el.v[SB[s]];
            int e = el.edge[s];
            for (int i = 2; i <= p; ++i, ++k) {
                ids[k] = edge_dof(e, i);
                sign[k] = (flip && (i & 1)) ? -1.0 : 1.0;
            }
        }
        for (int i = 2; i <= p; ++i)
            for (int j = 2; j <= p; ++j, ++k) ids[k] = internal_dof(elem, i, j), sign[k] = 1.0;
    }

    static DofTable build(const Mesh& m, int p) {
        DofTable t;
        t.p = p;
        t.nv = (int)m.xy.size();
        t.ne = (int)m.edges.size();
        t.nelem = (int)m.elems.size();
        t.n = t.nv + t.ne * (p - 1) + t.nelem * (p - 1) * (p - 1);
        t.cls.assign(t.n, DofClass::B);

        auto edge_class = [](int role) {
            switch (role) {
            case 1: return DofClass::N1;
            case 2: return DofClass::D0;
            case 3: return DofClass::N0;
            case 4: return DofClass::D1;
            default: return DofClass::B;
            }
        };
        // Neumann first, then Dirichlet overrides at shared vertices
        for (int pass = 0; pass < 2; ++pass)
            for (int e = 0; e < t.ne; ++e) {
                int role = arc_role(m.edges[e].tag);
                if (role == 0) continue;
                DofClass c = edge_class(role);
                bool dirichlet = c == DofClass::D0 || c == DofClass::D1;
                if (dirichlet != (pass == 1)) continue;
                for (int i = 2; i <= p; ++i) t.cls[t.edge_dof(e, i)] = c;
                for (int v : {m.edges[e].v0, m.edges[e].v1}) {
                    DofClass& cur = t.cls[t.vertex_dof(v)];
                    if (pass == 1 && (cur == DofClass::D0 || cur == DofClass::D1) && cur != c)
                        throw GeometryError("vertex pinned to both Dirichlet values");
                    cur = c;
                }
            }
        return t;
    }
};

} // namespace confmap
