#pragma once

// Numerical SLD / RLD / generalized-RLD Fisher information matrices and the
// Z matrix, computed from a density matrix and a generator pair. This is the
// independent check for every closed form in closed_forms.

#include <optional>
#include <utility>

#include "qcrb/states.hpp"

namespace qcrb {
namespace qfi {

using Matrix2c = Eigen::Matrix2cd;
using Matrix2r = Eigen::Matrix2d;
using states::ReferenceState;

struct GeneratorPair {
    OperatorMatrix g1, g2;
};

enum class OrderingCase { SldDominates, NoOrdering };

struct FisherBundle {
    Matrix2r g_s;       // SLD Fisher matrix, real symmetric
    Matrix2c g_r;       // RLD Fisher matrix; for pure states the generalized
                        //   RLD matrix (rank deficient there), see pure_state
    Matrix2c z;         // Z matrix of raised-index SLD correlations
    Matrix2r g_s_inv;
    Matrix2c g_r_inv;   // for pure states this is the generalized RLD bound
    std::optional<Matrix2c> z_inv;  // absent when Z is singular
    bool pure_state = false;
    bool d_invariant = false;
    OrderingCase ordering_case = OrderingCase::NoOrdering;
};

struct FisherOptions {
    // Support threshold for the SLD pseudo-solve, relative to the largest
    // rho eigenvalue.
    double eps_supp = 1e-12;
    // Full-rank test for the RLD, relative to the largest rho eigenvalue.
    // Truncated two-mode thermal tails sit near gamma_a^n_a * gamma_b^n_b
    // (~1e-18 at the auto cutoff), so the threshold only has to separate
    // exact zeros of pure states from those tails.
    double eps_rank = 1e-30;
    double d_inv_tol = 1e-8;
    double ordering_tol = 1e-10;
};

// Eigensystem of a density matrix, with a fast path for diagonal rho
// (every reference state here is diagonal in the Fock basis).
class DensityEigensystem {
public:
    explicit DensityEigensystem(const CMatrix& rho);
    // Known decomposition rho = vecs * diag(vals) * vecs^dag.
    DensityEigensystem(Eigen::VectorXd vals, CMatrix vecs);

    const Eigen::VectorXd& eigenvalues() const { return vals_; }
    bool diagonal() const { return diagonal_; }
    CMatrix to_eigenbasis(const CMatrix& m) const;
    CMatrix from_eigenbasis(const CMatrix& m) const;
    // Dominant eigenvector (for pure states).
    CVector top_eigenvector() const;

private:
    Eigen::VectorXd vals_;
    CMatrix vecs_;  // empty when diagonal_
    bool diagonal_;
};

// d_i rho = -i [G_i, rho] at theta = 0. Hermitian and traceless.
std::pair<OperatorMatrix, OperatorMatrix> derivative_states(const ReferenceState& rho,
                                                            const GeneratorPair& gens);

// Hermitian solution of d rho = (rho L + L rho)/2 on the support of rho:
// in rho's eigenbasis L_jk = 2 (d rho)_jk / (l_j + l_k) where the sum
// clears eps_supp * max eigenvalue, else 0.
CMatrix solve_sld(const DensityEigensystem& rho, const CMatrix& drho,
                  double eps_supp = 1e-12);

// L_R = rho^{-1} d rho via the eigendecomposition. Throws RankDeficient when
// rho is not full rank at eps_rank; pure states must take the generalized
// RLD path instead.
CMatrix solve_rld(const DensityEigensystem& rho, const CMatrix& drho,
                  double eps_rank = 1e-30);

// Generalized RLD Fisher matrix of a pure state:
//   g~_ij = 4 (<d_j psi|d_i psi> + <d_j psi|psi><psi|d_i psi>),
// with |d_i psi> = -i G_i |psi>. Index placement mirrors the RLD convention
// g_R,ij = tr[rho L_j L_i^dag].
Matrix2c generalized_rld_pure(const CVector& psi, const GeneratorPair& gens);

FisherBundle fisher_matrices(const ReferenceState& rho, const GeneratorPair& gens,
                             const FisherOptions& options = {});

// Same pipeline from an explicit eigensystem and derivative matrices
// (displaced states, finite-difference cross-checks).
FisherBundle fisher_matrices_from(const DensityEigensystem& eig, const CMatrix& drho1,
                                  const CMatrix& drho2, const FisherOptions& options = {});

// Recompute the bundle after the symmetric -> Landau gauge rotation
// U = exp(-i eB x y / 2) applied to both the mechanical momenta and the
// state, and return the max deviation from the symmetric-gauge bundle.
double gauge_invariance_check(const FockCutoff& cutoff, const PhysicalConstants& constants,
                              const ReferenceState& state);

// Closed-form 2x2 inverses with a determinant guard |det| > 1e-14 ||G||_F^2.
Matrix2c invert2x2(const Matrix2c& m);
Matrix2r invert2x2(const Matrix2r& m);

}  // namespace qfi
}  // namespace qcrb
