#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "selfcontract/curves.hpp"
#include "selfcontract/foliation.hpp"
#include "selfcontract/prox.hpp"

#include <cmath>

using namespace selfcontract;

namespace {

Vec v2(double a, double b) {
    Vec v(2);
    v << a, b;
    return v;
}

ConvexFunction iso_quadratic() {
    // f(x) = |x|^2
    return ConvexFunction::quadratic(2.0 * Mat::Identity(2, 2), Vec::Zero(2));
}

ConvexFunction half_norm_sq() {
    // f(x) = |x|^2 / 2, gradient x
    return ConvexFunction::quadratic(Mat::Identity(2, 2), Vec::Zero(2));
}

} // namespace

TEST_CASE("sublevel projection orbit of the isotropic quadratic") {
    // projecting (2, 2) onto {|x|^2 <= r} stays on the diagonal at radius
    // sqrt(r), so every vertex is known in closed form
    ConvexFunction f = iso_quadratic();
    std::vector<double> levels = {6.0, 4.0, 2.0, 1.0, 0.5};
    FoliationOrbit orbit = sublevel_projection_orbit(f, v2(2, 2), levels, 1e-10);
    REQUIRE(orbit.curve.size() == 6); // start + one vertex per level
    REQUIRE(orbit.levels.size() == 6);
    CHECK(orbit.levels[0] == doctest::Approx(8.0));
    for (std::size_t k = 1; k < orbit.levels.size(); ++k) {
        double r = levels[k - 1];
        CHECK(orbit.levels[k] == doctest::Approx(r).epsilon(1e-8));
        double coord = std::sqrt(r / 2.0);
        CHECK(orbit.curve[k][0] == doctest::Approx(coord).epsilon(1e-7));
        CHECK(orbit.curve[k][1] == doctest::Approx(coord).epsilon(1e-7));
    }
    CHECK(decreasing_level_check(orbit, f).holds);
    // orbits of projections onto nested sublevels contract
    CHECK(is_self_contracted(orbit.curve).holds);
}

TEST_CASE("orbit skips levels the start already satisfies") {
    ConvexFunction f = iso_quadratic();
    // f(start) = 0.04, so the first level needs no motion and is dropped
    FoliationOrbit orbit = sublevel_projection_orbit(f, v2(0.2, 0.0), {0.04, 0.01}, 1e-10);
    REQUIRE(orbit.curve.size() == 2);
    CHECK(orbit.levels[0] == doctest::Approx(0.04));
    CHECK(orbit.levels[1] == doctest::Approx(0.01).epsilon(1e-8));
    CHECK(orbit.curve[1][0] == doctest::Approx(0.1).epsilon(1e-7));
}

TEST_CASE("orbit validates the level sequence") {
    ConvexFunction f = iso_quadratic();
    CHECK_THROWS_AS(sublevel_projection_orbit(f, v2(1, 1), {}, 1e-9), std::invalid_argument);
    CHECK_THROWS_AS(sublevel_projection_orbit(f, v2(1, 1), {2.0, 2.0}, 1e-9),
                    std::invalid_argument);
    CHECK_THROWS_AS(sublevel_projection_orbit(f, v2(1, 1), {1.0, 2.0}, 1e-9),
                    std::invalid_argument);
    // a level below the infimum cannot be reached
    CHECK_THROWS_AS(sublevel_projection_orbit(f, v2(1, 1), {1.0, -0.5}, 1e-9),
                    std::runtime_error);
}

TEST_CASE("decreasing level check flags tampered orbits") {
    ConvexFunction f = iso_quadratic();
    FoliationOrbit orbit = sublevel_projection_orbit(f, v2(2, 2), {4.0, 1.0}, 1e-10);
    FoliationOrbit broken = orbit;
    broken.levels[1] = 3.5; // no longer matches f at the recorded vertex
    PredicateVerdict v = decreasing_level_check(broken, f);
    CHECK_FALSE(v.holds);
    REQUIRE(v.witness);
    CHECK(v.witness->k == 1);

    FoliationOrbit increasing = orbit;
    std::swap(increasing.levels[1], increasing.levels[2]);
    // recorded levels must strictly decrease; the vertex check fires first on
    // the mismatched pair either way
    CHECK_FALSE(decreasing_level_check(increasing, f).holds);
}

TEST_CASE("gradient flow of the half norm squared is exponential decay") {
    ConvexFunction f = half_norm_sq();
    DiscreteCurve flow = gradient_flow_curve(f, v2(1, -2), 1e-3, 1.0);
    REQUIRE(flow.params());
    CHECK(flow.params()->front() == 0.0);
    CHECK(flow.params()->back() == doctest::Approx(1.0).epsilon(1e-12));
    double decay = std::exp(-1.0);
    // classic fourth order integrator at h = 1e-3: error well under 1e-10
    CHECK(flow[flow.size() - 1][0] == doctest::Approx(decay).epsilon(1e-9));
    CHECK(flow[flow.size() - 1][1] == doctest::Approx(-2.0 * decay).epsilon(1e-9));
}

TEST_CASE("gradient flow of an anisotropic quadratic matches the closed form") {
    Mat a(2, 2);
    a << 1, 0, 0, 4;
    ConvexFunction f = ConvexFunction::quadratic(a, Vec::Zero(2));
    DiscreteCurve flow = gradient_flow_curve(f, v2(1, 1), 1e-3, 2.0);
    const Vec& end = flow[flow.size() - 1];
    CHECK(end[0] == doctest::Approx(std::exp(-2.0)).epsilon(1e-8));
    CHECK(end[1] == doctest::Approx(std::exp(-8.0)).epsilon(1e-6));
    // flow lines of convex quadratics contract strongly
    CHECK(secant_cone_check(flow).holds);
}

TEST_CASE("gradient flow input validation") {
    ConvexFunction f = half_norm_sq();
    CHECK_THROWS_AS(gradient_flow_curve(f, v2(1, 1), 0.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(gradient_flow_curve(f, v2(1, 1), 1e-3, -1.0), std::invalid_argument);
    // nonsmooth functions carry no gradient to integrate
    ConvexFunction norm = ConvexFunction::norm_scaled(2, 1.0);
    CHECK_THROWS_AS(gradient_flow_curve(norm, v2(1, 1), 1e-3, 1.0), std::invalid_argument);
    // zero horizon produces the start point alone
    DiscreteCurve still = gradient_flow_curve(f, v2(1, 1), 1e-3, 0.0);
    CHECK(still.size() == 1);
}

TEST_CASE("polygonal approximation of a straight segment") {
    std::vector<Vec> pts;
    for (int i = 0; i <= 100; ++i) {
        pts.push_back(v2(i * 0.01, 0.0));
    }
    DiscreteCurve seg(pts);

    // window covering the whole curve: only the endpoints survive
    ApproximationResult wide = polygonal_approximation(seg, 2.0);
    CHECK(wide.polyline.size() == 2);
    CHECK((wide.polyline[0] - v2(0, 0)).norm() == 0.0);
    CHECK((wide.polyline[1] - v2(1, 0)).norm() == 0.0);
    CHECK(wide.hausdorff_achieved == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(wide.vertex_source_indices.front() == 0);
    CHECK(wide.vertex_source_indices.back() == 100);

    // tighter window: jumps are capped at arc length delta, so the vertices
    // land every 5 samples, still exactly on the segment
    ApproximationResult tight = polygonal_approximation(seg, 0.05);
    CHECK(tight.polyline.size() == 21);
    CHECK(tight.hausdorff_achieved == doctest::Approx(0.0).epsilon(1e-12));
    for (std::size_t i = 1; i < tight.vertex_source_indices.size(); ++i) {
        CHECK(tight.vertex_source_indices[i] - tight.vertex_source_indices[i - 1] <= 5);
    }
}

TEST_CASE("polygonal approximation respects delta on flow curves") {
    Mat a(2, 2);
    a << 1, 0, 0, 4;
    ConvexFunction f = ConvexFunction::quadratic(a, Vec::Zero(2));
    DiscreteCurve flow = gradient_flow_curve(f, v2(1, 1), 1e-3, 3.0);
    DiscreteCurve sampled = arc_length_reparam(flow, 1e-3);
    for (double delta : {0.02, 0.1}) {
        ApproximationResult res = polygonal_approximation(sampled, delta);
        CHECK(res.hausdorff_achieved <= delta + 1e-9);
        CHECK(res.polyline.size() < sampled.size());
        CHECK(is_self_contracted(res.polyline).holds);
        // vertices are a subsequence of the input
        for (std::size_t i = 1; i < res.vertex_source_indices.size(); ++i) {
            CHECK(res.vertex_source_indices[i - 1] < res.vertex_source_indices[i]);
        }
    }
}

TEST_CASE("polygonal approximation rejects curves without the cone property") {
    // right angle: fails the strong contraction precondition
    std::vector<Vec> pts = {v2(0, 0), v2(0.5, 0), v2(1, 0), v2(1, 0.5), v2(1, 1)};
    CHECK_THROWS_AS(polygonal_approximation(DiscreteCurve(pts), 0.2), std::invalid_argument);
}

TEST_CASE("polygonal approximation wants sampling finer than delta") {
    std::vector<Vec> pts = {v2(0, 0), v2(1, 0), v2(2, 0), v2(3, 0)};
    try {
        polygonal_approximation(DiscreteCurve(pts), 0.01);
        FAIL("expected a sampling density error");
    } catch (const std::runtime_error& e) {
        CHECK(std::string(e.what()).find("more finely") != std::string::npos);
    }
    CHECK_THROWS_AS(polygonal_approximation(DiscreteCurve(pts), 0.0), std::invalid_argument);
}

TEST_CASE("two point curves pass through untouched") {
    std::vector<Vec> pts = {v2(0, 0), v2(1, 1)};
    ApproximationResult res = polygonal_approximation(DiscreteCurve(pts), 0.5);
    CHECK(res.polyline.size() == 2);
    CHECK(res.hausdorff_achieved == 0.0);
}
