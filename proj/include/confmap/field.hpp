#pragma once

#include <Eigen/Dense>

#include "confmap/dof_table.hpp"
#include "confmap/element_map.hpp"

namespace confmap {

// Point evaluation of a finite element field and its physical gradient.
// Local signed coefficients are gathered once per element.
class FieldEval {
public:
    FieldEval(const Mesh& m, const DofTable& dt, const Eigen::VectorXd& x)
        : mesh_(&m), shapes_(dt.p) {
        int nm = shapes_.count();
        std::vector<int> ids(nm);
        std::vector<double> sgn(nm);
        coef_.resize(m.elems.size());
        for (int e = 0; e < (int)m.elems.size(); ++e) {
            dt.element_dofs(m, e, ids.data(), sgn.data());
            coef_[e].resize(nm);
            for (int k = 0; k < nm; ++k) coef_[e][k] = sgn[k] * x[ids[k]];
        }
    }

    double value(int elem, double xi, double eta) const {
        scratch(xi, eta);
        double s = 0;
        const auto& c = coef_[elem];
        for (size_t k = 0; k < c.size(); ++k) s += c[k] * v_[k];
        return s;
    }

    Vec2 gradient(int elem, double xi, double eta) const {
        scratch(xi, eta);
        const auto& c = coef_[elem];
        double gx = 0, gy = 0;
        for (size_t k = 0; k < c.size(); ++k) {
            gx += c[k] * dx_[k];
            gy += c[k] * dy_[k];
        }
        Jacobian J = ElementMap(*mesh_, elem).jacobian(xi, eta);
        double det = J.det();
        return {(J.deta.y * gx - J.dxi.y * gy) / det, (J.dxi.x * gy - J.deta.x * gx) / det};
    }

    const ShapeSet& shapes() const { return shapes_; }

private:
    void scratch(double xi, double eta) const {
        v_.resize(shapes_.count());
        dx_.resize(shapes_.count());
        dy_.resize(shapes_.count());
        shapes_.eval(xi, eta, v_.data(), dx_.data(), dy_.data());
    }

    const Mesh* mesh_;
    ShapeSet shapes_;
    std::vector<std::vector<double>> coef_;
    mutable std::vector<double> v_, dx_, dy_;
};

} // namespace confmap
