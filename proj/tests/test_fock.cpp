#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "qcrb/fock.hpp"

using namespace qcrb;
using fock::interior_block_max;

namespace {

const Complex kI(0.0, 1.0);

CMatrix comm(const CMatrix& a, const CMatrix& b) { return a * b - b * a; }

double herm_dev(const CMatrix& m) { return (m - m.adjoint()).cwiseAbs().maxCoeff(); }

}  // namespace

TEST_CASE("basis indexing is mode-a major") {
    FockCutoff c{3, 5};
    CHECK(c.dim() == 15);
    CHECK(c.index(0, 0) == 0);
    CHECK(c.index(0, 4) == 4);
    CHECK(c.index(1, 0) == 5);
    CHECK(c.index(2, 3) == 13);
    CHECK_THROWS_AS((FockCutoff{1, 4}.validate()), InvalidRange);
}

TEST_CASE("ladder operators act on the right mode with sqrt factors") {
    FockCutoff c{4, 4};
    auto lad = fock::ladder_operators(c);
    // <1,0| a_dag |0,0> = 1, <2,0| a_dag |1,0> = sqrt(2)
    CHECK(lad.a_dag.mat(c.index(1, 0), c.index(0, 0)) == Complex(1.0));
    CHECK(lad.a_dag.mat(c.index(2, 0), c.index(1, 0)).real() == doctest::Approx(std::sqrt(2.0)));
    CHECK(lad.b_dag.mat(c.index(0, 1), c.index(0, 0)) == Complex(1.0));
    CHECK(lad.a.mat(c.index(0, 2), c.index(1, 2)) == Complex(1.0));
    // a-mode operators commute with b-mode operators exactly (full matrix).
    CHECK(comm(lad.a.mat, lad.b.mat).cwiseAbs().maxCoeff() == 0.0);
    CHECK(comm(lad.a.mat, lad.b_dag.mat).cwiseAbs().maxCoeff() == 0.0);
    CHECK(comm(lad.a_dag.mat, lad.b_dag.mat).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("canonical commutation relations on the interior block") {
    FockCutoff c{10, 10};
    PhysicalConstants constants(2.0);
    auto lad = fock::ladder_operators(c);
    auto can = fock::canonical_operators(c, constants);
    auto mech = fock::mechanical_operators(c, constants);
    const int d = c.dim();
    const CMatrix id = CMatrix::Identity(d, d);

    CHECK(interior_block_max(comm(lad.a.mat, lad.a_dag.mat) - id, c, 2) < 1e-14);
    CHECK(interior_block_max(comm(lad.b.mat, lad.b_dag.mat) - id, c, 2) < 1e-14);
    CHECK(interior_block_max(comm(can.x.mat, can.p_x.mat) - kI * id, c, 2) < 1e-13);
    CHECK(interior_block_max(comm(can.y.mat, can.p_y.mat) - kI * id, c, 2) < 1e-13);
    // [pi_x, pi_y] = -i eB on the interior.
    CHECK(interior_block_max(comm(mech.pi_x.mat, mech.pi_y.mat) + kI * constants.eB() * id,
                             c, 2) < 1e-13);
    // Canonical momenta commute; the per-mode truncation defects live on the
    // top level of each mode and cancel only on the interior block.
    CHECK(interior_block_max(comm(can.p_x.mat, can.p_y.mat), c, 1) < 1e-14);
}

TEST_CASE("all physical operators are Hermitian as constructed") {
    FockCutoff c{8, 8};
    PhysicalConstants constants(2.0);
    auto can = fock::canonical_operators(c, constants);
    auto mech = fock::mechanical_operators(c, constants);
    auto hl = fock::hamiltonian_and_angular_momentum(c, constants, 1.0);
    for (const CMatrix* m : {&can.p_x.mat, &can.p_y.mat, &can.x.mat, &can.y.mat,
                             &mech.pi_x.mat, &mech.pi_y.mat, &hl.h.mat, &hl.l.mat})
        CHECK(herm_dev(*m) < 1e-15);
}

TEST_CASE("LLL expectation values at eB = 2 (lambda = 1)") {
    FockCutoff c{6, 6};
    PhysicalConstants constants(2.0);
    CHECK(constants.lambda() == doctest::Approx(1.0));
    auto can = fock::canonical_operators(c, constants);
    auto hl = fock::hamiltonian_and_angular_momentum(c, constants, 1.0);

    // <0,0| x^2 |0,0> = lambda^2 / 2 = 0.5
    const CMatrix x2 = can.x.mat * can.x.mat;
    CHECK(x2(0, 0).real() == doctest::Approx(0.5));
    CHECK(x2(0, 0).imag() == doctest::Approx(0.0));
    // L|0,0> = 0; H|0,0> = (omega/2)|0,0> with omega = eB/m = 2.
    CHECK(hl.l.mat(0, 0) == Complex(0.0));
    CHECK(hl.h.mat(0, 0).real() == doctest::Approx(1.0));
    // Diagonality of H and L.
    CHECK((hl.h.mat - CMatrix(hl.h.mat.diagonal().asDiagonal())).cwiseAbs().maxCoeff() == 0.0);
    CHECK((hl.l.mat - CMatrix(hl.l.mat.diagonal().asDiagonal())).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("matrix exponential of anti-Hermitian exponents is unitary") {
    FockCutoff c{5, 5};
    PhysicalConstants constants(2.0);
    auto can = fock::canonical_operators(c, constants);
    const int d = c.dim();

    const CMatrix zero = CMatrix::Zero(d, d);
    CHECK((fock::expm_antihermitian(zero) - CMatrix::Identity(d, d)).cwiseAbs().maxCoeff() <
          1e-14);

    const CMatrix u = fock::unitary_from_generator(can.p_x.mat, 0.37);
    CHECK((u * u.adjoint() - CMatrix::Identity(d, d)).cwiseAbs().maxCoeff() < 1e-13);
}

TEST_CASE("displacement factorization (canonical shifts as mode displacements)") {
    FockCutoff c{24, 24};
    PhysicalConstants constants(2.0);
    CHECK(fock::displacement_factorization_check(0.0, 0.0, c, constants) == 0.0);
    CHECK(fock::displacement_factorization_check(0.1, 0.2, c, constants) < 1e-10);
    CHECK(fock::displacement_factorization_check(0.3, 0.0, c, constants) < 1e-10);
}
