#pragma once

#include <Eigen/Cholesky>
#include <Eigen/SparseCholesky>

#include "confmap/assemble.hpp"

namespace confmap {

struct SolveStats {
    int base_factorizations = 0;
    int schur_builds = 0;
};

// Solves the conjugate pair of mixed problems on one discretization. All
// unconstrained interior unknowns (class B) are eliminated through a single
// sparse factorization; the dense Schur complement on the boundary block
// then serves both potentials no matter how the constrained sets swap.
//
// The primal potential is 1 on role-4 arcs and 0 on role-2 arcs. The
// conjugate potential is 1 on role-1 arcs and 0 on role-3 arcs; its value at
// a corner shared with a role-2/4 arc is still the exact 1 or 0 (the map
// sends the corners to rectangle corners), so those vertex dofs are pinned
// as well — without this a cut consisting of a single edge would constrain
// nothing but higher modes and leave the constant in the kernel.
class ConjugateSolver {
public:
    struct Solution {
        Eigen::VectorXd x;
        double energy = 0;
    };

    ConjugateSolver(const Mesh& m, int p) : dofs_(DofTable::build(m, p)), tables_(p) {
        A_ = assemble_stiffness(m, dofs_, tables_);

        // conjugate boundary values per vertex dof: -1 free, else 0/1
        conj_value_.assign(dofs_.nv, -1);
        for (const auto& ed : m.edges) {
            switch (arc_role(ed.tag)) {
            case 1: pin(conj_value_, ed, 1); break;
            case 3: pin(conj_value_, ed, 0); break;
            default: break;
            }
        }

        posB_.assign(dofs_.n, -1);
        posI_.assign(dofs_.n, -1);
        for (int i = 0; i < dofs_.n; ++i) {
            if (dofs_.cls[i] == DofClass::B) {
                posB_[i] = (int)B_.size();
                B_.push_back(i);
            } else {
                posI_[i] = (int)I_.size();
                I_.push_back(i);
            }
        }

        int nB = (int)B_.size(), nI = (int)I_.size();
        std::vector<Eigen::Triplet<double>> tBB, tBI;
        S_.setZero(nI, nI);
        for (int c = 0; c < A_.outerSize(); ++c)
            for (Eigen::SparseMatrix<double>::InnerIterator it(A_, c); it; ++it) {
                int r = (int)it.row();
                if (posB_[r] >= 0 && posB_[c] >= 0)
                    tBB.emplace_back(posB_[r], posB_[c], it.value());
                else if (posB_[r] >= 0)
                    tBI.emplace_back(posB_[r], posI_[c], it.value());
                else if (posB_[c] < 0)
                    S_(posI_[r], posI_[c]) = it.value();
            }
        Eigen::SparseMatrix<double> ABB(nB, nB);
        ABB.setFromTriplets(tBB.begin(), tBB.end());
        ABI_.resize(nB, nI);
        ABI_.setFromTriplets(tBI.begin(), tBI.end());

        ldlt_.compute(ABB);
        if (ldlt_.info() != Eigen::Success) throw SolveError("interior block factorization failed");
        ++stats.base_factorizations;

        for (int c0 = 0; c0 < nI; c0 += 64) {
            int nc = std::min(64, nI - c0);
            Eigen::MatrixXd Z = ldlt_.solve(Eigen::MatrixXd(ABI_.middleCols(c0, nc)));
            S_.middleCols(c0, nc).noalias() -= ABI_.transpose() * Z;
        }
        ++stats.schur_builds;
    }

    Solution solve_primal() const {
        return solve([&](int dof) {
            DofClass c = dofs_.cls[dof];
            if (c == DofClass::D1 || c == DofClass::D0)
                return dof < dofs_.nv && c == DofClass::D1 ? 1.0 : 0.0;
            return -1.0;
        });
    }

    Solution solve_conjugate() const {
        return solve([&](int dof) {
            DofClass c = dofs_.cls[dof];
            if (c == DofClass::N1 || c == DofClass::N0)
                return dof < dofs_.nv && c == DofClass::N1 ? 1.0 : 0.0;
            if (dof < dofs_.nv && conj_value_[dof] >= 0) return (double)conj_value_[dof];
            return -1.0;
        });
    }

    bool has_neumann() const {
        for (auto c : dofs_.cls)
            if (c == DofClass::N1 || c == DofClass::N0) return true;
        return false;
    }
    const DofTable& dofs() const { return dofs_; }
    const Eigen::SparseMatrix<double>& matrix() const { return A_; }

    mutable SolveStats stats;

private:
    static void pin(std::vector<int8_t>& val, const MeshEdge& ed, int8_t v) {
        for (int vx : {ed.v0, ed.v1}) {
            if (val[vx] >= 0 && val[vx] != v)
                throw GeometryError("vertex adjacent to both value-0 and value-1 arcs");
            val[vx] = v;
        }
    }

    // value(dof) >= 0: constrained to that value; < 0: free
    template <class F> Solution solve(F&& value) const {
        int nI = (int)I_.size();
        Eigen::VectorXd xI = Eigen::VectorXd::Zero(nI);
        std::vector<int> free;
        int ncon = 0;
        for (int k = 0; k < nI; ++k) {
            double v = value(I_[k]);
            if (v >= 0) {
                xI[k] = v;
                ++ncon;
            } else {
                free.push_back(k);
            }
        }
        if (ncon == 0) throw SolveError("no constrained boundary for this potential");

        int nf = (int)free.size();
        if (nf > 0) {
            Eigen::MatrixXd Sff(nf, nf);
            Eigen::VectorXd rhs(nf);
            Eigen::VectorXd Sx = S_ * xI;
            for (int a = 0; a < nf; ++a) {
                rhs[a] = -Sx[free[a]];
                for (int b = 0; b < nf; ++b) Sff(a, b) = S_(free[a], free[b]);
            }
            Eigen::LLT<Eigen::MatrixXd> llt(Sff);
            if (llt.info() != Eigen::Success) throw SolveError("interface solve failed");
            Eigen::VectorXd xf = llt.solve(rhs);
            for (int a = 0; a < nf; ++a) xI[free[a]] = xf[a];
        }

        Eigen::VectorXd xB = -ldlt_.solve(ABI_ * xI);
        Solution sol;
        sol.x.setZero(dofs_.n);
        for (int k = 0; k < (int)B_.size(); ++k) sol.x[B_[k]] = xB[k];
        for (int k = 0; k < nI; ++k) sol.x[I_[k]] = xI[k];
        sol.energy = sol.x.dot(A_ * sol.x);
        return sol;
    }

    DofTable dofs_;
    ShapeTables tables_;
    Eigen::SparseMatrix<double> A_;
    Eigen::SparseMatrix<double> ABI_;
    Eigen::MatrixXd S_;
    Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt_;
    std::vector<int> B_, I_, posB_, posI_;
    std::vector<int8_t> conj_value_;
};

} // namespace confmap
