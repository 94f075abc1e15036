#include "qcrb/qfi.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

namespace qcrb {
namespace qfi {

namespace {

const Complex kI(0.0, 1.0);

bool is_diagonal(const CMatrix& m) {
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j)
            if (i != j && m(i, j) != Complex(0.0, 0.0)) return false;
    return true;
}

// tr[diag(vals) A B^dag] = sum_k vals_k sum_l A_kl conj(B_kl).
Complex weighted_corr(const Eigen::VectorXd& vals, const CMatrix& a, const CMatrix& b) {
    Complex acc(0.0, 0.0);
    for (Eigen::Index k = 0; k < a.rows(); ++k) {
        Complex row(0.0, 0.0);
        for (Eigen::Index l = 0; l < a.cols(); ++l)
            row += a(k, l) * std::conj(b(k, l));
        acc += vals(k) * row;
    }
    return acc;
}

CMatrix sld_in_eigenbasis(const Eigen::VectorXd& vals, const CMatrix& drho_eig,
                          double eps_supp) {
    const double cut = eps_supp * vals.maxCoeff();
    CMatrix l(drho_eig.rows(), drho_eig.cols());
    for (Eigen::Index j = 0; j < drho_eig.rows(); ++j)
        for (Eigen::Index k = 0; k < drho_eig.cols(); ++k) {
            const double denom = vals(j) + vals(k);
            l(j, k) = denom > cut ? 2.0 * drho_eig(j, k) / denom : Complex(0.0, 0.0);
        }
    return l;
}

CMatrix rld_in_eigenbasis(const Eigen::VectorXd& vals, const CMatrix& drho_eig,
                          double eps_rank) {
    if (!(vals.minCoeff() > eps_rank * vals.maxCoeff()))
        throw RankDeficient("rho is rank deficient; the RLD does not exist");
    CMatrix l(drho_eig.rows(), drho_eig.cols());
    for (Eigen::Index j = 0; j < drho_eig.rows(); ++j)
        l.row(j) = drho_eig.row(j) / vals(j);
    return l;
}

}  // namespace

DensityEigensystem::DensityEigensystem(const CMatrix& rho) {
    if (is_diagonal(rho)) {
        vals_ = rho.diagonal().real();
        diagonal_ = true;
    } else {
        Eigen::SelfAdjointEigenSolver<CMatrix> es(rho);
        vals_ = es.eigenvalues();
        vecs_ = es.eigenvectors();
        diagonal_ = false;
    }
}

DensityEigensystem::DensityEigensystem(Eigen::VectorXd vals, CMatrix vecs)
    : vals_(std::move(vals)), vecs_(std::move(vecs)), diagonal_(false) {}

CMatrix DensityEigensystem::to_eigenbasis(const CMatrix& m) const {
    if (diagonal_) return m;
    return vecs_.adjoint() * m * vecs_;
}

CMatrix DensityEigensystem::from_eigenbasis(const CMatrix& m) const {
    if (diagonal_) return m;
    return vecs_ * m * vecs_.adjoint();
}

CVector DensityEigensystem::top_eigenvector() const {
    Eigen::Index top;
    vals_.maxCoeff(&top);
    if (diagonal_) {
        CVector psi = CVector::Zero(vals_.size());
        psi(top) = 1.0;
        return psi;
    }
    return vecs_.col(top);
}

std::pair<OperatorMatrix, OperatorMatrix> derivative_states(const ReferenceState& rho,
                                                            const GeneratorPair& gens) {
    auto commutator_derivative = [&](const OperatorMatrix& g) {
        CMatrix d(g.mat.rows(), g.mat.cols());
        if (is_diagonal(rho.rho.mat)) {
            const Eigen::VectorXd p = rho.rho.mat.diagonal().real();
            for (Eigen::Index j = 0; j < d.rows(); ++j)
                for (Eigen::Index k = 0; k < d.cols(); ++k)
                    d(j, k) = -kI * g.mat(j, k) * (p(k) - p(j));
        } else {
            d = -kI * (g.mat * rho.rho.mat - rho.rho.mat * g.mat);
        }
        return OperatorMatrix{d, g.cutoff, "d_rho[" + g.label + "]"};
    };
    return {commutator_derivative(gens.g1), commutator_derivative(gens.g2)};
}

CMatrix solve_sld(const DensityEigensystem& rho, const CMatrix& drho, double eps_supp) {
    return rho.from_eigenbasis(
        sld_in_eigenbasis(rho.eigenvalues(), rho.to_eigenbasis(drho), eps_supp));
}

CMatrix solve_rld(const DensityEigensystem& rho, const CMatrix& drho, double eps_rank) {
    return rho.from_eigenbasis(
        rld_in_eigenbasis(rho.eigenvalues(), rho.to_eigenbasis(drho), eps_rank));
}

Matrix2c generalized_rld_pure(const CVector& psi, const GeneratorPair& gens) {
    const CVector d1 = -kI * (gens.g1.mat * psi);
    const CVector d2 = -kI * (gens.g2.mat * psi);
    const CVector* d[2] = {&d1, &d2};

    Matrix2c g;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            g(i, j) = 4.0 * (d[j]->dot(*d[i]) + d[j]->dot(psi) * psi.dot(*d[i]));
    return g;
}

namespace {

// Shared bundle assembly in the eigenbasis of rho. gens_for_pure supplies the
// generalized-RLD fallback when rho is rank deficient; without it the rank
// deficiency propagates.
FisherBundle assemble_bundle(const DensityEigensystem& eig, const CMatrix& drho1,
                             const CMatrix& drho2, const FisherOptions& opts,
                             const GeneratorPair* gens_for_pure) {
    const Eigen::VectorXd& vals = eig.eigenvalues();
    const CMatrix d1 = eig.to_eigenbasis(drho1);
    const CMatrix d2 = eig.to_eigenbasis(drho2);

    const CMatrix ls1 = sld_in_eigenbasis(vals, d1, opts.eps_supp);
    const CMatrix ls2 = sld_in_eigenbasis(vals, d2, opts.eps_supp);
    const CMatrix* ls[2] = {&ls1, &ls2};

    FisherBundle bundle;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            bundle.g_s(i, j) = std::real(weighted_corr(vals, *ls[j], *ls[i]));
    bundle.g_s_inv = invert2x2(bundle.g_s);

    // Raised-index SLDs: L^i = sum_j g_S^{ji} L_j.
    const CMatrix lu1 = bundle.g_s_inv(0, 0) * ls1 + bundle.g_s_inv(1, 0) * ls2;
    const CMatrix lu2 = bundle.g_s_inv(0, 1) * ls1 + bundle.g_s_inv(1, 1) * ls2;
    const CMatrix* lu[2] = {&lu1, &lu2};
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            bundle.z(i, j) = weighted_corr(vals, *lu[j], *lu[i]);

    try {
        const CMatrix lr1 = rld_in_eigenbasis(vals, d1, opts.eps_rank);
        const CMatrix lr2 = rld_in_eigenbasis(vals, d2, opts.eps_rank);
        const CMatrix* lr[2] = {&lr1, &lr2};
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                bundle.g_r(i, j) = weighted_corr(vals, *lr[j], *lr[i]);
        bundle.g_r_inv = invert2x2(bundle.g_r);
    } catch (const RankDeficient&) {
        if (gens_for_pure == nullptr) throw;
        bundle.pure_state = true;
        bundle.g_r = generalized_rld_pure(eig.top_eigenvector(), *gens_for_pure);
        // The generalized RLD matrix of these unitary pure models is rank
        // deficient; the C-R bound matrix it defines coincides with the Z
        // matrix, which is what the zero-temperature limit of the thermal
        // RLD inverse converges to.
        bundle.g_r_inv = bundle.z;
    }

    try {
        bundle.z_inv = invert2x2(bundle.z);
    } catch (const InvalidRange&) {
        bundle.z_inv.reset();
    }

    bundle.d_invariant = (bundle.z - bundle.g_r_inv).cwiseAbs().maxCoeff() < opts.d_inv_tol;

    const Matrix2c gap = bundle.g_s_inv.cast<Complex>() - bundle.g_r_inv;
    Eigen::SelfAdjointEigenSolver<Matrix2c> es(gap);
    const double scale = std::max(1.0, bundle.g_s_inv.norm());
    bundle.ordering_case = es.eigenvalues().minCoeff() >= -opts.ordering_tol * scale
                               ? OrderingCase::SldDominates
                               : OrderingCase::NoOrdering;
    return bundle;
}

}  // namespace

FisherBundle fisher_matrices(const ReferenceState& rho, const GeneratorPair& gens,
                             const FisherOptions& options) {
    const auto [d1, d2] = derivative_states(rho, gens);
    DensityEigensystem eig(rho.rho.mat);
    return assemble_bundle(eig, d1.mat, d2.mat, options, &gens);
}

FisherBundle fisher_matrices_from(const DensityEigensystem& eig, const CMatrix& drho1,
                                  const CMatrix& drho2, const FisherOptions& options) {
    return assemble_bundle(eig, drho1, drho2, options, nullptr);
}

double gauge_invariance_check(const FockCutoff& cutoff, const PhysicalConstants& constants,
                              const ReferenceState& state) {
    const auto mech = fock::mechanical_operators(cutoff, constants);
    const GeneratorPair gens{mech.pi_x, mech.pi_y};
    const FisherBundle base = fisher_matrices(state, gens);

    // Gauge function chi = B x y / 2 maps the symmetric gauge to the Landau
    // gauge; the matrix U = exp(-i eB x y / 2) rotates operators and state.
    const auto can = fock::canonical_operators(cutoff, constants);
    const CMatrix xy =
        0.5 * (can.x.mat * can.y.mat + can.y.mat * can.x.mat);  // Hermitian product
    const CMatrix u = fock::unitary_from_generator(CMatrix(0.5 * constants.eB() * xy), 1.0);

    const GeneratorPair rotated{{u * mech.pi_x.mat * u.adjoint(), cutoff, "pi_x'"},
                                {u * mech.pi_y.mat * u.adjoint(), cutoff, "pi_y'"}};
    const CMatrix rho_rot = u * state.rho.mat * u.adjoint();

    // rho is diagonal for every reference state here, so the rotated
    // eigensystem is known without a fresh eigensolve.
    DensityEigensystem base_eig(state.rho.mat);
    DensityEigensystem eig =
        base_eig.diagonal()
            ? DensityEigensystem(base_eig.eigenvalues(), u)
            : DensityEigensystem(rho_rot);

    const CMatrix d1 = -kI * (rotated.g1.mat * rho_rot - rho_rot * rotated.g1.mat);
    const CMatrix d2 = -kI * (rotated.g2.mat * rho_rot - rho_rot * rotated.g2.mat);
    const FisherBundle rot = assemble_bundle(eig, d1, d2, {}, &rotated);

    double dev = 0.0;
    dev = std::max(dev, (base.g_s - rot.g_s).cwiseAbs().maxCoeff());
    dev = std::max(dev, (base.g_r - rot.g_r).cwiseAbs().maxCoeff());
    dev = std::max(dev, (base.z - rot.z).cwiseAbs().maxCoeff());
    dev = std::max(dev, (base.g_s_inv - rot.g_s_inv).cwiseAbs().maxCoeff());
    dev = std::max(dev, (base.g_r_inv - rot.g_r_inv).cwiseAbs().maxCoeff());
    return dev;
}

Matrix2c invert2x2(const Matrix2c& m) {
    const Complex det = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
    const double guard = 1e-14 * m.squaredNorm();
    if (std::abs(det) <= guard)
        throw InvalidRange("2x2 inverse: matrix is numerically singular");
    Matrix2c inv;
    inv << m(1, 1), -m(0, 1), -m(1, 0), m(0, 0);
    return inv / det;
}

Matrix2r invert2x2(const Matrix2r& m) {
    const double det = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
    const double guard = 1e-14 * m.squaredNorm();
    if (std::abs(det) <= guard)
        throw InvalidRange("2x2 inverse: matrix is numerically singular");
    Matrix2r inv;
    inv << m(1, 1), -m(0, 1), -m(1, 0), m(0, 0);
    return inv / det;
}

}  // namespace qfi
}  // namespace qcrb
