#pragma once

// Operators on a truncated two-mode bosonic Fock space.
//
// Basis ordering is fixed throughout: the state |i_a, i_b> sits at index
// i_a * n_b + i_b (mode-a major). All serialized matrices use this ordering.

#include <complex>
#include <string>
#include <utility>

#include <Eigen/Dense>

#include "qcrb/errors.hpp"

namespace qcrb {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

struct FockCutoff {
    int n_a = 2;  // Fock levels kept for mode a: |0> ... |n_a-1>
    int n_b = 2;

    int dim() const { return n_a * n_b; }
    void validate() const {
        if (n_a < 2 || n_b < 2)
            throw InvalidRange("FockCutoff: need at least 2 levels per mode");
    }
    // Index of |i_a, i_b> in the tensor basis.
    int index(int i_a, int i_b) const { return i_a * n_b + i_b; }
};

struct OperatorMatrix {
    CMatrix mat;
    FockCutoff cutoff;
    std::string label;

    int dim() const { return static_cast<int>(mat.rows()); }
};

// eB is the product of charge magnitude and field strength (natural units);
// lambda = sqrt(2/eB) is derived, never set independently.
class PhysicalConstants {
public:
    explicit PhysicalConstants(double eB_) : eB_(eB_) {
        if (!(eB_ > 0.0)) throw InvalidRange("PhysicalConstants: eB must be positive");
        lambda_ = std::sqrt(2.0 / eB_);
    }
    double eB() const { return eB_; }
    double lambda() const { return lambda_; }
    double lambda_sq() const { return lambda_ * lambda_; }

private:
    double eB_;
    double lambda_;
};

namespace fock {

struct LadderOperators {
    OperatorMatrix a, a_dag, b, b_dag;
};

struct CanonicalOperators {
    OperatorMatrix p_x, p_y, x, y;
};

struct MechanicalOperators {
    OperatorMatrix pi_x, pi_y;
};

struct EnergyAngularMomentum {
    OperatorMatrix h, l;
};

CMatrix kron(const CMatrix& lhs, const CMatrix& rhs);

LadderOperators ladder_operators(const FockCutoff& cutoff);

// p_x = (i/2l)[(ad-a)+(bd-b)], p_y = (1/2l)[(ad+a)-(bd+b)],
// x = (l/2)[(ad+a)+(bd+b)],    y = -(il/2)[(ad-a)-(bd-b)].
CanonicalOperators canonical_operators(const FockCutoff& cutoff,
                                       const PhysicalConstants& constants);

// pi_x = (i/l)(ad-a), pi_y = (1/l)(ad+a); [pi_x, pi_y] = -i eB on the interior.
MechanicalOperators mechanical_operators(const FockCutoff& cutoff,
                                         const PhysicalConstants& constants);

// H = omega (ad a + 1/2) with omega = eB/m; L = ad a - bd b. Both diagonal.
EnergyAngularMomentum hamiltonian_and_angular_momentum(const FockCutoff& cutoff,
                                                       const PhysicalConstants& constants,
                                                       double mass);

// exp(M) for anti-Hermitian M, via eigendecomposition of the Hermitian iM.
// Preserves unitarity structurally.
CMatrix expm_antihermitian(const CMatrix& exponent);

// exp(-i t G) for Hermitian G.
CMatrix unitary_from_generator(const CMatrix& generator, double t);

// Max |difference| between exp(-i t1 p_x) exp(-i t2 p_y) and the factored
// displacement form exp(xi ad - xi* a) exp(xi* bd - xi b) with
// xi = (t1 - i t2)/(2 lambda), restricted to the half-cutoff block.
double displacement_factorization_check(double theta1, double theta2,
                                        const FockCutoff& cutoff,
                                        const PhysicalConstants& constants);

// Max |entry| of M restricted to indices with i_a < n_a - margin and
// i_b < n_b - margin. Truncation corrupts only the top levels, so
// commutator identities are asserted on this block.
double interior_block_max(const CMatrix& m, const FockCutoff& cutoff, int margin);

}  // namespace fock
}  // namespace qcrb
