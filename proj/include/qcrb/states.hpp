#pragma once

// Reference states: the pure LLL vacuum and the chemical-potential-constrained
// two-mode thermal state.

#include <optional>
#include <utility>

#include "qcrb/fock.hpp"

namespace qcrb {
namespace states {

// (beta*omega, mu, <L>_0, kappa_a^2, kappa_b^2), all mutually consistent:
//   2 kappa_a^2 = 1/(exp(beta*omega - mu) - 1)
//   2 kappa_b^2 = 1/(exp(mu) - 1)
//   <L>_0 = 2 kappa_a^2 - 2 kappa_b^2
struct ThermalParams {
    double beta_omega;
    double mu;
    double L0;
    double kappa_a_sq;
    double kappa_b_sq;
};

enum class StateKind { PureLLL, Thermal };

struct ReferenceState {
    StateKind kind;
    std::optional<ThermalParams> thermal;  // set iff kind == Thermal
    OperatorMatrix rho;
    double truncation_weight;  // 1 - tr(rho) before renormalization
};

// Physical root of
//   (L0+1) e^{2mu} - L0 (e^{bw}+1) e^{mu} + (L0-1) e^{bw} = 0
// on the branch 0 < mu < beta_omega. The general formula has a 0/0 at
// L0 = -1; within |L0+1| < 1e-9 the dedicated e^mu = 2e^{bw}/(e^{bw}+1)
// branch is used instead.
double solve_chemical_potential(double L0, double beta_omega);

ThermalParams thermal_params_from(double L0, double beta_omega);

// Same bundle but parameterized by mu instead of L0.
ThermalParams thermal_params_from_mu(double mu, double beta_omega);

// Occupation-parameterized construction for scenarios stated directly in
// kappa form. Recovers (beta_omega, mu) from the kappas.
ThermalParams thermal_params_from_kappas(double kappa_a_sq, double kappa_b_sq);

// +infinity for L0 >= 0, log[(L0-1)/L0] for L0 < 0.
double zero_temperature_mu_limit(double L0);

// Geometric ratio gamma = 2k^2/(1+2k^2) of the per-mode thermal diagonal.
double gamma_from_kappa_sq(double kappa_sq);

// Smallest per-mode cutoff with gamma^n < 1e-9, floored at 16; guarantees
// truncation_weight < 1e-8 without user tuning.
FockCutoff auto_cutoff(const ThermalParams& params);

ReferenceState build_pure_lll(const FockCutoff& cutoff);

// Product of per-mode geometric diagonals, renormalized to trace 1.
// Throws CutoffTooSmall if the pre-normalization tail weight reaches
// weight_tol (default matches the auto_cutoff guarantee; callers that
// override the cutoff may relax it, the residual bias is reported in
// truncation_weight either way).
ReferenceState build_thermal_state(const ThermalParams& params, const FockCutoff& cutoff,
                                   double weight_tol = 1e-8);

// Both closed forms of the single-mode matrix element <z1|rho|z2>:
// lhs from the geometric (number-basis) sum, rhs from the Gaussian-state
// integral. They agree identically when gamma = 2k^2/(1+2k^2).
std::pair<Complex, Complex> gaussian_state_matrix_element_check(double kappa_sq,
                                                                Complex z1, Complex z2);

}  // namespace states
}  // namespace qcrb
