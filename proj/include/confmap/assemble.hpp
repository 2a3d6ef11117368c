#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "confmap/dof_table.hpp"
#include "confmap/element_map.hpp"
#include "confmap/quadrature.hpp"

namespace confmap {

// Shape values at the tensor Gauss points of a (p+2)^2 rule, shared by all
// elements of the mesh.
struct ShapeTables {
    ShapeSet shapes;
    QuadRule rule; // 1-d factor
    Eigen::MatrixXd val, dxi, deta;
    std::vector<double> w2; // tensor weights
    std::vector<std::pair<double, double>> pts;

    explicit ShapeTables(int p) : shapes(p), rule(gauss_legendre(p + 2)) {
        int nq1 = rule.size(), nm = shapes.count();
        val.resize(nq1 * nq1, nm);
        dxi.resize(nq1 * nq1, nm);
        deta.resize(nq1 * nq1, nm);
        w2.resize(nq1 * nq1);
        pts.resize(nq1 * nq1);
        std::vector<double> v(nm), gx(nm), gy(nm);
        for (int a = 0; a < nq1; ++a)
            for (int b = 0; b < nq1; ++b) {
                int q = a * nq1 + b;
                shapes.eval(rule.x[a], rule.x[b], v.data(), gx.data(), gy.data());
                for (int mm = 0; mm < nm; ++mm)
                    val(q, mm) = v[mm], dxi(q, mm) = gx[mm], deta(q, mm) = gy[mm];
                w2[q] = rule.w[a] * rule.w[b];
                pts[q] = {rule.x[a], rule.x[b]};
            }
    }
};

// Stiffness matrix of the Laplacian. Per element the weighted physical
// gradient components are collected into H and V so that the element matrix
// is H^T H + V^T V; scatter applies the edge orientation signs.
inline Eigen::SparseMatrix<double> assemble_stiffness(const Mesh& m, const DofTable& dt,
                                                      const ShapeTables& st) {
    int nm = st.shapes.count(), nq = (int)st.w2.size();
    Eigen::MatrixXd H(nq, nm), V(nq, nm);
    std::vector<int> ids(nm);
    std::vector<double> sgn(nm);
    std::vector<Eigen::Triplet<double>> trips;
    trips.reserve((size_t)m.elems.size() * nm * nm);
    for (int e = 0; e < (int)m.elems.size(); ++e) {
        ElementMap map(m, e);
        for (int q = 0; q < nq; ++q) {
            Jacobian J = map.jacobian(st.pts[q].first, st.pts[q].second);
            double det = J.det();
            if (!(det > 0)) throw GeometryError("element Jacobian not positive");
            double s = std::sqrt(st.w2[q] / det);
            // rows of J^{-T} scaled by sqrt(w |J|)
            H.row(q) = (st.dxi.row(q) * J.deta.y - st.deta.row(q) * J.dxi.y) * s;
            V.row(q) = (st.deta.row(q) * J.dxi.x - st.dxi.row(q) * J.deta.x) * s;
        }
        Eigen::MatrixXd Ae = H.transpose() * H + V.transpose() * V;
        dt.element_dofs(m, e, ids.data(), sgn.data());
        for (int i = 0; i < nm; ++i)
            for (int j = 0; j < nm; ++j)
                trips.emplace_back(ids[i], ids[j], sgn[i] * sgn[j] * Ae(i, j));
    }
    Eigen::SparseMatrix<double> A(dt.n, dt.n);
    A.setFromTriplets(trips.begin(), trips.end());
    return A;
}

} // namespace confmap
