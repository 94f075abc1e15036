#include "qcrb/states.hpp"

#include <cmath>
#include <limits>

namespace qcrb {
namespace states {

namespace {

void require_beta_omega(double beta_omega) {
    if (!(beta_omega > 0.0))
        throw InvalidRange("beta_omega must be positive");
}

double kappa_a_sq_of(double beta_omega, double mu) {
    return 0.5 / std::expm1(beta_omega - mu);
}

double kappa_b_sq_of(double mu) {
    return 0.5 / std::expm1(mu);
}

}  // namespace

double solve_chemical_potential(double L0, double beta_omega) {
    require_beta_omega(beta_omega);
    const double big_e = std::exp(beta_omega);

    double exp_mu;
    if (std::abs(L0 + 1.0) < 1e-9) {
        exp_mu = 2.0 * big_e / (big_e + 1.0);
    } else {
        // "+" discriminant root; the other root gives a negative temperature.
        // For L0 < 0 the direct form subtracts nearly equal numbers at large
        // beta_omega, so the algebraically identical conjugate form is used.
        const double disc = L0 * L0 * (big_e - 1.0) * (big_e - 1.0) + 4.0 * big_e;
        const double sq = std::sqrt(disc);
        if (L0 >= 0.0)
            exp_mu = (L0 * (big_e + 1.0) + sq) / (2.0 * (L0 + 1.0));
        else
            exp_mu = 2.0 * (L0 - 1.0) * big_e / (L0 * (big_e + 1.0) - sq);
    }

    const double mu = std::log(exp_mu);
    if (!(mu > 0.0) || !(mu < beta_omega))
        throw NonPhysicalBranch("chemical potential left (0, beta_omega)");
    return mu;
}

ThermalParams thermal_params_from(double L0, double beta_omega) {
    const double mu = solve_chemical_potential(L0, beta_omega);
    return {beta_omega, mu, L0, kappa_a_sq_of(beta_omega, mu), kappa_b_sq_of(mu)};
}

ThermalParams thermal_params_from_mu(double mu, double beta_omega) {
    require_beta_omega(beta_omega);
    if (!(mu > 0.0) || !(mu < beta_omega))
        throw InvalidRange("mu must lie in (0, beta_omega)");
    const double ka = kappa_a_sq_of(beta_omega, mu);
    const double kb = kappa_b_sq_of(mu);
    return {beta_omega, mu, 2.0 * ka - 2.0 * kb, ka, kb};
}

ThermalParams thermal_params_from_kappas(double kappa_a_sq, double kappa_b_sq) {
    if (!(kappa_a_sq > 0.0) || !(kappa_b_sq > 0.0))
        throw InvalidRange("kappa^2 must be positive");
    // Invert 2k^2 = 1/(e^x - 1): x = log(1 + 1/(2k^2)).
    const double mu = std::log1p(0.5 / kappa_b_sq);
    const double beta_omega = mu + std::log1p(0.5 / kappa_a_sq);
    return {beta_omega, mu, 2.0 * kappa_a_sq - 2.0 * kappa_b_sq, kappa_a_sq, kappa_b_sq};
}

double zero_temperature_mu_limit(double L0) {
    if (L0 >= 0.0) return std::numeric_limits<double>::infinity();
    return std::log((L0 - 1.0) / L0);
}

double gamma_from_kappa_sq(double kappa_sq) {
    return 2.0 * kappa_sq / (1.0 + 2.0 * kappa_sq);
}

FockCutoff auto_cutoff(const ThermalParams& params) {
    auto size_for = [](double kappa_sq) {
        const double gamma = gamma_from_kappa_sq(kappa_sq);
        if (gamma <= 0.0) return 16;
        const int n = static_cast<int>(std::ceil(std::log(1e-9) / std::log(gamma)));
        return std::max(16, n);
    };
    return {size_for(params.kappa_a_sq), size_for(params.kappa_b_sq)};
}

ReferenceState build_pure_lll(const FockCutoff& cutoff) {
    cutoff.validate();
    CMatrix rho = CMatrix::Zero(cutoff.dim(), cutoff.dim());
    rho(0, 0) = 1.0;
    return {StateKind::PureLLL, std::nullopt, {rho, cutoff, "rho_lll"}, 0.0};
}

ReferenceState build_thermal_state(const ThermalParams& params, const FockCutoff& cutoff,
                                   double weight_tol) {
    cutoff.validate();
    const double gamma_a = gamma_from_kappa_sq(params.kappa_a_sq);
    const double gamma_b = gamma_from_kappa_sq(params.kappa_b_sq);

    Eigen::VectorXd diag(cutoff.dim());
    double trace = 0.0;
    for (int ia = 0; ia < cutoff.n_a; ++ia) {
        const double wa = (1.0 - gamma_a) * std::pow(gamma_a, ia);
        for (int ib = 0; ib < cutoff.n_b; ++ib) {
            const double w = wa * (1.0 - gamma_b) * std::pow(gamma_b, ib);
            diag(cutoff.index(ia, ib)) = w;
            trace += w;
        }
    }

    const double weight = 1.0 - trace;
    if (weight >= weight_tol) throw CutoffTooSmall(weight, weight_tol);

    CMatrix rho = CMatrix::Zero(cutoff.dim(), cutoff.dim());
    rho.diagonal() = (diag / trace).cast<Complex>();
    return {StateKind::Thermal, params, {rho, cutoff, "rho_thermal"}, weight};
}

std::pair<Complex, Complex> gaussian_state_matrix_element_check(double kappa_sq,
                                                                Complex z1, Complex z2) {
    if (!(kappa_sq > 0.0)) throw InvalidRange("kappa_sq must be positive");
    const double gamma = gamma_from_kappa_sq(kappa_sq);
    const double norm_sq = 0.5 * std::norm(z1) + 0.5 * std::norm(z2);
    const Complex overlap = std::conj(z1) * z2;

    const Complex lhs = (1.0 - gamma) * std::exp(-norm_sq + gamma * overlap);
    const Complex rhs = 1.0 / (2.0 * kappa_sq + 1.0) *
                        std::exp(-norm_sq + overlap / (1.0 / (2.0 * kappa_sq) + 1.0));
    return {lhs, rhs};
}

}  // namespace states
}  // namespace qcrb
