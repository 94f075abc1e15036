#pragma once

// Analytic Fisher matrices, SLD/RLD operator expressions, and Z matrices for
// the four scenarios (canonical or mechanical generators, pure or thermal
// reference state), parameterized by (lambda, kappa_a^2, kappa_b^2).

#include <optional>

#include "qcrb/qfi.hpp"

namespace qcrb {
namespace closed_forms {

enum class Generators { Canonical, Mechanical };
enum class StateFamily { Pure, Thermal };

struct ScenarioKey {
    Generators generators;
    StateFamily state;
};

struct ScenarioParams {
    PhysicalConstants constants;
    // Thermal occupations; ignored for pure scenarios.
    double kappa_a_sq = 0.0;
    double kappa_b_sq = 0.0;
};

// <L>_0 = 2 kappa_a^2 - 2 kappa_b^2.
double l0_of(const ScenarioParams& params);

// delta_g = (lambda^2/2) / (1 + 2 kappa_a^2 + 2 kappa_b^2), the gap between
// the SLD and RLD diagonal bound offsets of the canonical thermal model.
double delta_g(const ScenarioParams& params);

// delta_v_rs = delta_g (4 <L>_0^2 - 1). Negative means the SLD bound alone
// shapes the region; positive means both bounds are active.
double delta_v_rs(const ScenarioParams& params);

qfi::FisherBundle closed_fisher(const ScenarioKey& key, const ScenarioParams& params);

// Explicit ladder-operator forms of the logarithmic derivatives at theta = 0,
// materialized on the truncated space for entrywise comparison with the
// numerical solver. RLDs exist for the thermal scenarios only.
struct ClosedOperators {
    OperatorMatrix l_s1, l_s2;
    std::optional<OperatorMatrix> l_r1, l_r2;
};

ClosedOperators closed_sld_rld_operators(const ScenarioKey& key, const ScenarioParams& params,
                                         const FockCutoff& cutoff);

}  // namespace closed_forms
}  // namespace qcrb
