#include "qcrb/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "qcrb/states.hpp"

namespace qcrb {
namespace bounds {

namespace {

// A hyperbola whose |Im g^12| is below this (relative to the curve scale)
// degenerates to a pair of lines.
constexpr double kDegenerateTol = 1e-12;

std::vector<double> linspace(double lo, double hi, int n) {
    std::vector<double> out(n);
    for (int i = 0; i < n; ++i)
        out[i] = lo + (hi - lo) * static_cast<double>(i) / (n - 1);
    out.back() = hi;
    return out;
}

void sample_lines(const BoundCurve& c, const std::string& prefix, double v11_max,
                  int n, std::vector<BoundarySample>& out) {
    const double span = v11_max - c.g11;
    for (double v22 : linspace(c.g22, c.g22 + span, n))
        out.push_back({prefix + "_v11", CurveKind::SLDLines, c.g11, v22});
    for (double v11 : linspace(c.g11, v11_max, n))
        out.push_back({prefix + "_v22", CurveKind::SLDLines, v11, c.g22});
}

}  // namespace

UncertaintyRegion region_from_bundle(const qfi::FisherBundle& bundle) {
    UncertaintyRegion region;
    region.sld = {bundle.g_s_inv(0, 0), bundle.g_s_inv(1, 1), 0.0, CurveKind::SLDLines};

    BoundCurve rld;
    rld.g11 = bundle.g_r_inv(0, 0).real();
    rld.g22 = bundle.g_r_inv(1, 1).real();
    rld.im_g12 = std::abs(bundle.g_r_inv(0, 1).imag());
    const double scale = std::max({1.0, std::abs(rld.g11), std::abs(rld.g22)});
    rld.kind = rld.im_g12 > kDegenerateTol * scale ? CurveKind::RLDHyperbola
                                                   : CurveKind::SLDLines;
    if (rld.kind == CurveKind::SLDLines) rld.im_g12 = 0.0;
    region.rld = rld;

    if (rld.kind == CurveKind::RLDHyperbola) {
        // The hyperbola meets the line V22 = g_S^22 at
        // V11 = g_R^11 + im^2/(g_S^22 - g_R^22); finite only when the SLD
        // line sits strictly above the hyperbola's asymptote.
        const double gap22 = region.sld.g22 - rld.g22;
        const double gap11 = region.sld.g11 - rld.g11;
        if (gap22 > kDegenerateTol * scale && gap11 > kDegenerateTol * scale) {
            const double v11_cross = rld.g11 + rld.im_g12 * rld.im_g12 / gap22;
            const double v22_cross = rld.g22 + rld.im_g12 * rld.im_g12 / gap11;
            region.delta_v_rs = v11_cross - region.sld.g11;
            if (*region.delta_v_rs > 0.0) {
                region.intersections.push_back({region.sld.g11, v22_cross});
                region.intersections.push_back({v11_cross, region.sld.g22});
            }
        }
    }
    return region;
}

bool point_allowed(const UncertaintyRegion& region, double v11, double v22) {
    // Boundary-inclusive with a relative slack so that points constructed to
    // lie exactly on a curve are not rejected by last-ulp rounding of the
    // curve parameters.
    const double scale = std::max({1.0, std::abs(v11), std::abs(v22)});
    const double tol = 64.0 * std::numeric_limits<double>::epsilon() * scale;
    if (v11 < region.sld.g11 - tol || v22 < region.sld.g22 - tol) return false;
    if (!region.rld) return true;
    const double f1 = v11 - region.rld->g11;
    const double f2 = v22 - region.rld->g22;
    if (region.rld->kind == CurveKind::SLDLines) return f1 >= -tol && f2 >= -tol;
    return f1 >= -tol && f2 >= -tol &&
           f1 * f2 >= region.rld->im_g12 * region.rld->im_g12 - tol * scale;
}

std::vector<BoundarySample> boundary_samples(const UncertaintyRegion& region,
                                             double v11_max, int n) {
    if (!(v11_max > region.sld.g11))
        throw InvalidRange("boundary_samples: v11_max must exceed the SLD corner");
    if (n < 2) throw InvalidRange("boundary_samples: need n >= 2");

    std::vector<BoundarySample> out;
    sample_lines(region.sld, "sld", v11_max, n, out);

    if (region.rld && region.rld->kind == CurveKind::SLDLines) {
        sample_lines(*region.rld, "rld", v11_max, n, out);
    } else if (region.rld) {
        const BoundCurve& c = *region.rld;
        const double im = c.im_g12;
        // Geometric sampling of u = V11 - g11 spans the arc inside the SLD
        // quadrant: u below lo leaves through V11 = g_S^11 (or V22 > the
        // symmetric v-range), u above hi leaves through V22 = g_S^22.
        double lo = std::max(region.sld.g11 - c.g11, im * im / (v11_max - c.g11));
        double hi = v11_max - c.g11;
        const double gap22 = region.sld.g22 - c.g22;
        if (gap22 > 0.0) hi = std::min(hi, im * im / gap22);
        lo = std::max(lo, std::numeric_limits<double>::min());
        if (hi >= lo) {
            const double ratio = hi / lo;
            for (int i = 0; i < n; ++i) {
                double u = lo * std::pow(ratio, static_cast<double>(i) / (n - 1));
                if (i == 0) u = lo;
                if (i == n - 1) u = hi;
                out.push_back({"rld", CurveKind::RLDHyperbola, c.g11 + u,
                               c.g22 + im * im / u});
            }
        }
    }
    return out;
}

std::vector<TransitionRow> transition_scan(double beta_omega,
                                           const std::vector<double>& L0_grid,
                                           const PhysicalConstants& constants) {
    std::vector<TransitionRow> rows;
    rows.reserve(L0_grid.size());
    for (double L0 : L0_grid) {
        const auto tp = states::thermal_params_from(L0, beta_omega);
        closed_forms::ScenarioParams sp{constants, tp.kappa_a_sq, tp.kappa_b_sq};
        const auto bundle = closed_forms::closed_fisher(
            {closed_forms::Generators::Canonical, closed_forms::StateFamily::Thermal}, sp);
        rows.push_back({beta_omega, L0, tp.mu, closed_forms::delta_g(sp),
                        closed_forms::delta_v_rs(sp), bundle.ordering_case});
    }
    return rows;
}

const char* to_string(CurveKind kind) {
    return kind == CurveKind::SLDLines ? "sld_lines" : "rld_hyperbola";
}

const char* to_string(qfi::OrderingCase ordering) {
    return ordering == qfi::OrderingCase::SldDominates ? "sld_dominates" : "no_ordering";
}

}  // namespace bounds
}  // namespace qcrb
