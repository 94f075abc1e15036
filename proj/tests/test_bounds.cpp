#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "qcrb/bounds.hpp"
#include "qcrb/states.hpp"

using namespace qcrb;
using namespace qcrb::bounds;
using closed_forms::Generators;
using closed_forms::StateFamily;

namespace {

const PhysicalConstants kUnit(1.0);  // lambda^2 = 2

UncertaintyRegion fig2_region() {
    const closed_forms::ScenarioParams sp{kUnit, 1.0, 0.5};
    return region_from_bundle(
        closed_forms::closed_fisher({Generators::Canonical, StateFamily::Thermal}, sp));
}

UncertaintyRegion pure_region(Generators g) {
    return region_from_bundle(
        closed_forms::closed_fisher({g, StateFamily::Pure}, {kUnit, 0.0, 0.0}));
}

}  // namespace

TEST_CASE("pure Model 2 region: SLD lines at 0.5 and unit hyperbola") {
    const auto r = pure_region(Generators::Mechanical);
    CHECK(r.sld.g11 == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(r.sld.g22 == doctest::Approx(0.5).epsilon(1e-14));
    REQUIRE(r.rld.has_value());
    CHECK(r.rld->kind == CurveKind::RLDHyperbola);
    CHECK(r.rld->g11 == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(r.rld->im_g12 == doctest::Approx(0.5).epsilon(1e-14));
    // Hyperbola asymptotic to the SLD lines: no finite intersections.
    CHECK(r.intersections.empty());
    CHECK_FALSE(r.delta_v_rs.has_value());
}

TEST_CASE("pure Model 1 region: degenerate RLD collapses to the SLD lines") {
    const auto r = pure_region(Generators::Canonical);
    CHECK(r.sld.g11 == doctest::Approx(1.0).epsilon(1e-14));
    REQUIRE(r.rld.has_value());
    CHECK(r.rld->kind == CurveKind::SLDLines);
    CHECK(r.rld->im_g12 == 0.0);
}

TEST_CASE("Fig. 2 region: intersections and delta_v_rs") {
    const auto r = fig2_region();
    CHECK(r.sld.g11 == doctest::Approx(3.75).epsilon(1e-12));
    REQUIRE(r.rld.has_value());
    CHECK(r.rld->g11 == doctest::Approx(3.5).epsilon(1e-12));
    CHECK(r.rld->im_g12 == doctest::Approx(0.5).epsilon(1e-12));
    REQUIRE(r.delta_v_rs.has_value());
    CHECK(std::abs(*r.delta_v_rs - 0.75) < 1e-10);
    CHECK(std::abs(*r.delta_v_rs -
                   closed_forms::delta_v_rs({kUnit, 1.0, 0.5})) < 1e-10);
    REQUIRE(r.intersections.size() == 2);
    // (3.75, 4.5) and (4.5, 3.75); both lie on both curves.
    for (const auto& p : r.intersections) {
        CHECK(std::min(p[0], p[1]) == doctest::Approx(3.75).epsilon(1e-10));
        CHECK(std::max(p[0], p[1]) == doctest::Approx(4.5).epsilon(1e-10));
        const double f = (p[0] - r.rld->g11) * (p[1] - r.rld->g22);
        CHECK(f == doctest::Approx(r.rld->im_g12 * r.rld->im_g12).epsilon(1e-10));
    }
}

TEST_CASE("equal-kappa thermal region degenerates to the SLD quadrant") {
    const closed_forms::ScenarioParams sp{kUnit, 0.7, 0.7};
    const auto r = region_from_bundle(
        closed_forms::closed_fisher({Generators::Canonical, StateFamily::Thermal}, sp));
    REQUIRE(r.rld.has_value());
    CHECK(r.rld->kind == CurveKind::SLDLines);
    CHECK(r.intersections.empty());
    // RLD lines strictly inside the SLD quadrant: membership is decided by
    // the SLD lines alone.
    CHECK(r.rld->g11 < r.sld.g11);
    CHECK(point_allowed(r, r.sld.g11, r.sld.g22));
}

TEST_CASE("point_allowed: boundary-inclusive membership") {
    const auto m2 = pure_region(Generators::Mechanical);
    CHECK_FALSE(point_allowed(m2, 0.5, 0.5));
    CHECK(point_allowed(m2, 1.0, 1.0));  // (0.5)^2 = 0.25 on the boundary
    CHECK_FALSE(point_allowed(m2, 0.5 - 1e-9, 100.0));
    CHECK(point_allowed(m2, 0.75, 1.5));
    CHECK_FALSE(point_allowed(m2, 0.75, 1.4));

    const auto f2 = fig2_region();
    CHECK_FALSE(point_allowed(f2, 3.8, 3.8));  // 0.09 < 0.25
    CHECK(point_allowed(f2, 4.5, 3.75));
    CHECK(point_allowed(f2, 4.0, 4.0));
}

TEST_CASE("regions are upward-closed and swap-symmetric") {
    for (const auto& r : {pure_region(Generators::Mechanical), fig2_region()}) {
        for (double v1 : {0.4, 0.8, 1.0, 3.8, 4.2, 6.0})
            for (double v2 : {0.4, 0.8, 1.0, 3.8, 4.2, 6.0}) {
                CHECK(point_allowed(r, v1, v2) == point_allowed(r, v2, v1));
                if (point_allowed(r, v1, v2)) {
                    CHECK(point_allowed(r, v1 + 0.3, v2));
                    CHECK(point_allowed(r, v1, v2 + 1.7));
                }
            }
    }
}

TEST_CASE("Model 2 region nests inside Model 1 beyond the Model 1 corner") {
    const auto m1 = pure_region(Generators::Canonical);
    const auto m2 = pure_region(Generators::Mechanical);
    const double corner = kUnit.lambda_sq() / 2.0;  // 1.0
    for (double v1 = corner; v1 < 4.0; v1 += 0.1)
        for (double v2 = corner; v2 < 4.0; v2 += 0.1)
            if (point_allowed(m2, v1, v2)) CHECK(point_allowed(m1, v1, v2));
}

TEST_CASE("boundary_samples: exact endpoints and symmetric midpoint") {
    const auto m2 = pure_region(Generators::Mechanical);
    const auto pts = boundary_samples(m2, 2.5, 3);
    // The n = 3 geometric sampling passes through the symmetric point (1,1).
    bool found = false;
    int rld_count = 0;
    for (const auto& p : pts) {
        if (p.curve != "rld") continue;
        ++rld_count;
        if (std::abs(p.v11 - 1.0) < 1e-12 && std::abs(p.v22 - 1.0) < 1e-12) found = true;
        CHECK((p.v11 - 0.5) * (p.v22 - 0.5) == doctest::Approx(0.25).epsilon(1e-12));
    }
    CHECK(found);
    CHECK(rld_count == 3);
    CHECK(boundary_samples(m2, 2.5, 2).size() == pts.size() - 3);  // n=2: endpoints only

    const auto f2 = fig2_region();
    const auto fpts = boundary_samples(f2, 6.0, 5);
    // The clipped hyperbola ends exactly on the intersection points.
    double first_v11 = 1e300, last_v11 = -1e300;
    for (const auto& p : fpts)
        if (p.curve == "rld") {
            first_v11 = std::min(first_v11, p.v11);
            last_v11 = std::max(last_v11, p.v11);
        }
    CHECK(first_v11 == doctest::Approx(3.75).epsilon(1e-12));
    CHECK(last_v11 == doctest::Approx(4.5).epsilon(1e-12));

    CHECK_THROWS_AS(boundary_samples(m2, 0.4, 3), InvalidRange);
    CHECK_THROWS_AS(boundary_samples(m2, 2.5, 1), InvalidRange);
}

TEST_CASE("transition_scan: zero crossing, signs, and ordering flip") {
    std::vector<double> grid;
    for (int i = 0; i <= 160; ++i) grid.push_back(-4.0 + 0.05 * i);
    const auto rows = transition_scan(1.0, grid, kUnit);
    REQUIRE(rows.size() == grid.size());
    for (const auto& r : rows) {
        if (std::abs(std::abs(r.L0) - 0.5) < 1e-12) {
            CHECK(std::abs(r.delta_v_rs) < 1e-12);
        } else {
            CHECK((r.delta_v_rs > 0.0) == (std::abs(r.L0) > 0.5));
        }
        CHECK((r.ordering_case == qfi::OrderingCase::SldDominates) ==
              (std::abs(r.L0) <= 0.5 + 1e-9));
        CHECK(r.delta_g > 0.0);
        CHECK(r.beta_omega == 1.0);
        CHECK(r.mu > 0.0);
        CHECK(r.mu < 1.0);
    }
    // L0 = 0 row: delta_v_rs = -delta_g.
    const auto& mid = rows[80];
    CHECK(mid.L0 == doctest::Approx(0.0));
    CHECK(mid.delta_v_rs == doctest::Approx(-mid.delta_g).epsilon(1e-12));

    // Fig. 2 chain: beta*omega = ln 3, L0 = 1 gives delta_v_rs = 0.75.
    const auto fig2 = transition_scan(std::log(3.0), {1.0}, kUnit);
    CHECK(fig2[0].delta_v_rs == doctest::Approx(0.75).epsilon(1e-12));
    CHECK(fig2[0].mu == doctest::Approx(std::log(2.0)).epsilon(1e-12));
}
