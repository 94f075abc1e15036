#include "qcrb/closed_forms.hpp"

#include <cmath>

namespace qcrb {
namespace closed_forms {

namespace {

const Complex kI(0.0, 1.0);

using qfi::FisherBundle;
using qfi::Matrix2c;
using qfi::Matrix2r;
using qfi::OrderingCase;

Matrix2c hermitian2(double diag, Complex upper) {
    Matrix2c m;
    m << diag, upper, std::conj(upper), diag;
    return m;
}

void require_thermal(const ScenarioParams& params) {
    if (!(params.kappa_a_sq > 0.0) || !(params.kappa_b_sq > 0.0))
        throw InvalidRange("thermal scenario requires positive kappa^2");
}

OrderingCase ordering_from_gap(const Matrix2c& gap) {
    Eigen::SelfAdjointEigenSolver<Matrix2c> es(gap);
    const double scale = std::max(1.0, gap.norm());
    return es.eigenvalues().minCoeff() >= -1e-12 * scale ? OrderingCase::SldDominates
                                                         : OrderingCase::NoOrdering;
}

}  // namespace

double l0_of(const ScenarioParams& params) {
    return 2.0 * params.kappa_a_sq - 2.0 * params.kappa_b_sq;
}

double delta_g(const ScenarioParams& params) {
    const double l2 = params.constants.lambda_sq();
    return 0.5 * l2 / (1.0 + 2.0 * params.kappa_a_sq + 2.0 * params.kappa_b_sq);
}

double delta_v_rs(const ScenarioParams& params) {
    const double l0 = l0_of(params);
    return delta_g(params) * (4.0 * l0 * l0 - 1.0);
}

FisherBundle closed_fisher(const ScenarioKey& key, const ScenarioParams& params) {
    const double l2 = params.constants.lambda_sq();
    FisherBundle b;

    if (key.state == StateFamily::Pure) {
        b.pure_state = true;
        if (key.generators == Generators::Canonical) {
            b.g_s = (2.0 / l2) * Matrix2r::Identity();
            b.g_s_inv = (l2 / 2.0) * Matrix2r::Identity();
            b.g_r = (2.0 / l2) * Matrix2c::Identity();  // G~_R = G_S
            b.g_r_inv = (l2 / 2.0) * Matrix2c::Identity();
            b.z = b.g_r_inv;
            b.z_inv = b.g_r;
        } else {
            b.g_s = (4.0 / l2) * Matrix2r::Identity();
            b.g_s_inv = (l2 / 4.0) * Matrix2r::Identity();
            b.g_r = (4.0 / l2) * hermitian2(1.0, kI);
            b.g_r_inv = (l2 / 4.0) * hermitian2(1.0, kI);
            b.z = b.g_r_inv;
            b.z_inv.reset();  // Z is rank one here
        }
        b.d_invariant = true;
        b.ordering_case = ordering_from_gap(b.g_s_inv.cast<Complex>() - b.g_r_inv);
        return b;
    }

    require_thermal(params);
    const double ka = params.kappa_a_sq;
    const double kb = params.kappa_b_sq;

    if (key.generators == Generators::Canonical) {
        const double gs = (1.0 / l2) * (1.0 / (1.0 + 4.0 * ka) + 1.0 / (1.0 + 4.0 * kb));
        b.g_s = gs * Matrix2r::Identity();
        b.g_s_inv = l2 *
                    (0.5 + 2.0 * ka + 2.0 * kb + 8.0 * ka * kb) /
                    (1.0 + 2.0 * ka + 2.0 * kb) * Matrix2r::Identity();

        const double sum = 1.0 / (1.0 + 2.0 * ka) + 1.0 / (2.0 * ka) +
                           1.0 / (1.0 + 2.0 * kb) + 1.0 / (2.0 * kb);
        const double skew = 1.0 / (2.0 * ka * (1.0 + 2.0 * ka)) -
                            1.0 / (2.0 * kb * (1.0 + 2.0 * kb));
        b.g_r = (1.0 / (4.0 * l2)) * hermitian2(sum, -kI * skew);
        b.g_r_inv = l2 / (1.0 + 2.0 * ka + 2.0 * kb) *
                    hermitian2(2.0 * ka + 2.0 * kb + 8.0 * ka * kb,
                               kI * (2.0 * kb - 2.0 * ka));

        b.z = b.g_r_inv + delta_g(params) * Matrix2c::Identity();
        b.z_inv = qfi::invert2x2(b.z);
        b.d_invariant = false;
    } else {
        const double occ = 1.0 + 4.0 * ka;
        b.g_s = 4.0 / (l2 * occ) * Matrix2r::Identity();
        b.g_s_inv = (l2 / 4.0) * occ * Matrix2r::Identity();
        b.g_r = 1.0 / (l2 * 2.0 * ka * (1.0 + 2.0 * ka)) * hermitian2(occ, -kI);
        b.g_r_inv = (l2 / 4.0) * hermitian2(occ, kI);
        b.z = b.g_r_inv;
        b.z_inv = qfi::invert2x2(b.z);
        b.d_invariant = true;
    }

    b.ordering_case = ordering_from_gap(b.g_s_inv.cast<Complex>() - b.g_r_inv);
    return b;
}

ClosedOperators closed_sld_rld_operators(const ScenarioKey& key, const ScenarioParams& params,
                                         const FockCutoff& cutoff) {
    const auto lad = fock::ladder_operators(cutoff);
    const double l = params.constants.lambda();
    const CMatrix a = lad.a.mat, ad = lad.a_dag.mat;
    const CMatrix bm = lad.b.mat, bd = lad.b_dag.mat;

    ClosedOperators out;
    if (key.state == StateFamily::Pure) {
        CMatrix rho0 = CMatrix::Zero(cutoff.dim(), cutoff.dim());
        rho0(0, 0) = 1.0;
        auto comm = [&](const CMatrix& g) { return CMatrix(g * rho0 - rho0 * g); };
        if (key.generators == Generators::Canonical) {
            out.l_s1 = {(1.0 / l) * comm(ad - a + bd - bm), cutoff, "L_S1"};
            out.l_s2 = {(-kI / l) * comm(ad + a - bd - bm), cutoff, "L_S2"};
        } else {
            // -2i [pi_x, rho0] and -2i [pi_y, rho0]
            out.l_s1 = {(2.0 / l) * comm(ad - a), cutoff, "L_S1"};
            out.l_s2 = {(-2.0 * kI / l) * comm(ad + a), cutoff, "L_S2"};
        }
        return out;
    }

    require_thermal(params);
    const double ka = params.kappa_a_sq;
    const double kb = params.kappa_b_sq;
    const double ca = 1.0 / (1.0 + 4.0 * ka), cb = 1.0 / (1.0 + 4.0 * kb);

    if (key.generators == Generators::Canonical) {
        out.l_s1 = {(ca / l) * (a + ad) + (cb / l) * (bm + bd), cutoff, "L_S1"};
        out.l_s2 = {(kI * ca / l) * (a - ad) - (kI * cb / l) * (bm - bd), cutoff, "L_S2"};
        const CMatrix ra = 1.0 / (1.0 + 2.0 * ka) * a + 1.0 / (2.0 * ka) * ad;
        const CMatrix rb = 1.0 / (1.0 + 2.0 * kb) * bm + 1.0 / (2.0 * kb) * bd;
        out.l_r1 = {1.0 / (2.0 * l) * (ra + rb), cutoff, "L_R1"};
        out.l_r2 = {-kI / (2.0 * l) *
                        (-1.0 / (1.0 + 2.0 * ka) * a + 1.0 / (2.0 * ka) * ad) +
                    kI / (2.0 * l) *
                        (-1.0 / (1.0 + 2.0 * kb) * bm + 1.0 / (2.0 * kb) * bd),
                    cutoff, "L_R2"};
    } else {
        out.l_s1 = {(2.0 * ca / l) * (a + ad), cutoff, "L_S1"};
        out.l_s2 = {(2.0 * kI * ca / l) * (a - ad), cutoff, "L_S2"};
        out.l_r1 = {1.0 / l * (1.0 / (1.0 + 2.0 * ka) * a + 1.0 / (2.0 * ka) * ad),
                    cutoff, "L_R1"};
        out.l_r2 = {kI / l * (1.0 / (1.0 + 2.0 * ka) * a - 1.0 / (2.0 * ka) * ad),
                    cutoff, "L_R2"};
    }
    return out;
}

}  // namespace closed_forms
}  // namespace qcrb
