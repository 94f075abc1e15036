#pragma once

// Uncertainty-region geometry over the MSE-matrix diagonal (V11, V22):
// SLD half-plane bounds, the RLD hyperbola bound, their intersections, and
// the transition of the region shape across |<L>_0| = 1/2.

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "qcrb/closed_forms.hpp"

namespace qcrb {
namespace bounds {

enum class CurveKind { SLDLines, RLDHyperbola };

struct BoundCurve {
    double g11 = 0.0;
    double g22 = 0.0;
    double im_g12 = 0.0;  // |Im g^12|; zero for SLDLines
    CurveKind kind = CurveKind::SLDLines;
};

struct UncertaintyRegion {
    BoundCurve sld;
    std::optional<BoundCurve> rld;  // absent only if the bundle lacks an RLD bound
    // Points where the RLD hyperbola meets the SLD boundary lines; empty when
    // the hyperbola lies inside the SLD quadrant or only touches asymptotically.
    std::vector<std::array<double, 2>> intersections;
    // V11 offset of the intersection above the SLD corner. Present whenever
    // the hyperbola meets the SLD lines at finite points; kept even when
    // negative as a diagnostic (the intersections list is empty then).
    std::optional<double> delta_v_rs;
};

UncertaintyRegion region_from_bundle(const qfi::FisherBundle& bundle);

// Boundary-inclusive membership test: V11 >= g_S^11, V22 >= g_S^22, and when
// an RLD hyperbola is present, (V11-g_R^11)(V22-g_R^22) >= |Im g^12|^2 with
// both factors nonnegative.
bool point_allowed(const UncertaintyRegion& region, double v11, double v22);

struct BoundarySample {
    std::string curve;  // sld_v11, sld_v22, rld_v11, rld_v22, or rld
    CurveKind kind;
    double v11;
    double v22;
};

// n points per curve up to v11_max. SLD lines are sampled linearly; the RLD
// hyperbola V22 = g22 + im^2/(V11 - g11) is sampled geometrically in
// V11 - g11 and clipped to the SLD-allowed quadrant, so its endpoints land
// exactly on the intersection points when those exist. Throws InvalidRange
// if v11_max <= g11 or n < 2.
std::vector<BoundarySample> boundary_samples(const UncertaintyRegion& region,
                                             double v11_max, int n);

struct TransitionRow {
    double beta_omega;
    double L0;
    double mu;
    double delta_g;
    double delta_v_rs;
    qfi::OrderingCase ordering_case;
};

// Canonical thermal model scanned over L0 at fixed beta*omega. Propagates
// chemical-potential errors for grid values outside the physical branch.
std::vector<TransitionRow> transition_scan(double beta_omega,
                                           const std::vector<double>& L0_grid,
                                           const PhysicalConstants& constants);

const char* to_string(CurveKind kind);
const char* to_string(qfi::OrderingCase ordering);

}  // namespace bounds
}  // namespace qcrb
