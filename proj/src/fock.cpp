#include "qcrb/fock.hpp"

#include <Eigen/Eigenvalues>

namespace qcrb {
namespace fock {

namespace {
const Complex kI(0.0, 1.0);
}

CMatrix kron(const CMatrix& lhs, const CMatrix& rhs) {
    CMatrix out(lhs.rows() * rhs.rows(), lhs.cols() * rhs.cols());
    for (Eigen::Index i = 0; i < lhs.rows(); ++i)
        for (Eigen::Index j = 0; j < lhs.cols(); ++j)
            out.block(i * rhs.rows(), j * rhs.cols(), rhs.rows(), rhs.cols()) =
                lhs(i, j) * rhs;
    return out;
}

LadderOperators ladder_operators(const FockCutoff& cutoff) {
    cutoff.validate();
    CMatrix a_mode = CMatrix::Zero(cutoff.n_a, cutoff.n_a);
    for (int n = 1; n < cutoff.n_a; ++n) a_mode(n - 1, n) = std::sqrt(double(n));
    CMatrix b_mode = CMatrix::Zero(cutoff.n_b, cutoff.n_b);
    for (int n = 1; n < cutoff.n_b; ++n) b_mode(n - 1, n) = std::sqrt(double(n));

    CMatrix ia = CMatrix::Identity(cutoff.n_a, cutoff.n_a);
    CMatrix ib = CMatrix::Identity(cutoff.n_b, cutoff.n_b);

    LadderOperators ops;
    ops.a = {kron(a_mode, ib), cutoff, "a"};
    ops.a_dag = {kron(a_mode.adjoint(), ib), cutoff, "a_dag"};
    ops.b = {kron(ia, b_mode), cutoff, "b"};
    ops.b_dag = {kron(ia, b_mode.adjoint()), cutoff, "b_dag"};
    return ops;
}

CanonicalOperators canonical_operators(const FockCutoff& cutoff,
                                       const PhysicalConstants& constants) {
    const auto lad = ladder_operators(cutoff);
    const double l = constants.lambda();
    const CMatrix a_minus = lad.a_dag.mat - lad.a.mat;
    const CMatrix a_plus = lad.a_dag.mat + lad.a.mat;
    const CMatrix b_minus = lad.b_dag.mat - lad.b.mat;
    const CMatrix b_plus = lad.b_dag.mat + lad.b.mat;

    CanonicalOperators ops;
    ops.p_x = {(kI / (2.0 * l)) * (a_minus + b_minus), cutoff, "p_x"};
    ops.p_y = {(1.0 / (2.0 * l)) * (a_plus - b_plus), cutoff, "p_y"};
    ops.x = {(l / 2.0) * (a_plus + b_plus), cutoff, "x"};
    ops.y = {(-kI * l / 2.0) * (a_minus - b_minus), cutoff, "y"};
    return ops;
}

MechanicalOperators mechanical_operators(const FockCutoff& cutoff,
                                         const PhysicalConstants& constants) {
    const auto lad = ladder_operators(cutoff);
    const double l = constants.lambda();
    MechanicalOperators ops;
    ops.pi_x = {(kI / l) * (lad.a_dag.mat - lad.a.mat), cutoff, "pi_x"};
    ops.pi_y = {(1.0 / l) * (lad.a_dag.mat + lad.a.mat), cutoff, "pi_y"};
    return ops;
}

EnergyAngularMomentum hamiltonian_and_angular_momentum(const FockCutoff& cutoff,
                                                       const PhysicalConstants& constants,
                                                       double mass) {
    cutoff.validate();
    if (!(mass > 0.0)) throw InvalidRange("mass must be positive");
    const double omega = constants.eB() / mass;
    CMatrix h = CMatrix::Zero(cutoff.dim(), cutoff.dim());
    CMatrix l = CMatrix::Zero(cutoff.dim(), cutoff.dim());
    for (int ia = 0; ia < cutoff.n_a; ++ia)
        for (int ib = 0; ib < cutoff.n_b; ++ib) {
            const int k = cutoff.index(ia, ib);
            h(k, k) = omega * (ia + 0.5);
            l(k, k) = double(ia - ib);
        }
    return {{h, cutoff, "h"}, {l, cutoff, "l"}};
}

CMatrix expm_antihermitian(const CMatrix& exponent) {
    // iM is Hermitian for anti-Hermitian M; exp(M) = V exp(-i d) V^dag.
    const CMatrix herm = kI * exponent;
    Eigen::SelfAdjointEigenSolver<CMatrix> es(herm);
    const Eigen::VectorXd d = es.eigenvalues();
    CVector phases(d.size());
    for (Eigen::Index k = 0; k < d.size(); ++k) phases(k) = std::exp(-kI * d(k));
    return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

CMatrix unitary_from_generator(const CMatrix& generator, double t) {
    return expm_antihermitian(CMatrix(-kI * t * generator));
}

double displacement_factorization_check(double theta1, double theta2,
                                        const FockCutoff& cutoff,
                                        const PhysicalConstants& constants) {
    const auto can = canonical_operators(cutoff, constants);
    const auto lad = ladder_operators(cutoff);
    const Complex xi = (theta1 - kI * theta2) / (2.0 * constants.lambda());

    const CMatrix lhs = unitary_from_generator(can.p_x.mat, theta1) *
                        unitary_from_generator(can.p_y.mat, theta2);
    const CMatrix rhs =
        expm_antihermitian(CMatrix(xi * lad.a_dag.mat - std::conj(xi) * lad.a.mat)) *
        expm_antihermitian(CMatrix(std::conj(xi) * lad.b_dag.mat - xi * lad.b.mat));

    const CMatrix diff = lhs - rhs;
    double max_dev = 0.0;
    for (int ia = 0; ia < cutoff.n_a / 2; ++ia)
        for (int ib = 0; ib < cutoff.n_b / 2; ++ib)
            for (int ja = 0; ja < cutoff.n_a / 2; ++ja)
                for (int jb = 0; jb < cutoff.n_b / 2; ++jb)
                    max_dev = std::max(max_dev,
                                       std::abs(diff(cutoff.index(ia, ib),
                                                     cutoff.index(ja, jb))));
    return max_dev;
}

double interior_block_max(const CMatrix& m, const FockCutoff& cutoff, int margin) {
    double max_abs = 0.0;
    for (int ia = 0; ia < cutoff.n_a - margin; ++ia)
        for (int ib = 0; ib < cutoff.n_b - margin; ++ib)
            for (int ja = 0; ja < cutoff.n_a - margin; ++ja)
                for (int jb = 0; jb < cutoff.n_b - margin; ++jb)
                    max_abs = std::max(max_abs, std::abs(m(cutoff.index(ia, ib),
                                                           cutoff.index(ja, jb))));
    return max_abs;
}

}  // namespace fock
}  // namespace qcrb
