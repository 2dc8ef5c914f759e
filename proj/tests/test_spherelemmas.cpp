#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "selfcontract/geometry.hpp"
#include "selfcontract/random.hpp"
#include "selfcontract/sphere_lemmas.hpp"

#include <cmath>

using namespace selfcontract;

namespace {

constexpr double kPi = 3.14159265358979323846;

// Uniform unit vectors inside the cap of half angle theta around axis.
// Rejection sampling; fine for the small dimensions used here.
std::vector<UnitVector> cap_sample(Rng& rng, const Vec& axis, double theta, int count) {
    int dim = static_cast<int>(axis.size());
    double cos_theta = std::cos(theta);
    std::vector<UnitVector> out;
    while (static_cast<int>(out.size()) < count) {
        Vec v(dim);
        for (int d = 0; d < dim; ++d) {
            v[d] = rng.gaussian();
        }
        double n = v.norm();
        if (n < 1e-12) continue;
        v /= n;
        if (v.dot(axis) >= cos_theta) {
            out.emplace_back(UnitVector::normalize(v));
        }
    }
    return out;
}

Vec axis_of(int dim) {
    Vec a = Vec::Zero(dim);
    a[0] = 1.0;
    return a;
}

} // namespace

TEST_CASE("bound constants closed forms for small n") {
    BoundConstants b2 = bound_constants(2);
    CHECK(b2.n == 2);
    CHECK(b2.delta == doctest::Approx(std::pow(3.0, -6.0)).epsilon(1e-14));
    CHECK(b2.zeta_bound == doctest::Approx(std::pow(3.0, -5.0)).epsilon(1e-14));
    // epsilon = (angle fraction of the delta^2 cap) / 4 = asin(delta^2/2) / (2 pi);
    // for this tiny cap that is delta^2 / (4 pi) to high accuracy
    double c2_expected = 4.0 * kPi * std::pow(3.0, 12.0);
    CHECK(b2.c_n == doctest::Approx(c2_expected).epsilon(1e-9));
    CHECK(b2.epsilon * b2.c_n == doctest::Approx(1.0).epsilon(1e-14));

    // n = 3: cap fraction is exactly r^2/4, so c_3 = 16 * 3^36
    BoundConstants b3 = bound_constants(3);
    CHECK(b3.c_n == doctest::Approx(16.0 * std::pow(3.0, 36.0)).epsilon(1e-11));
}

TEST_CASE("bound constants underflow policy in high dimension") {
    for (int n = 2; n <= 10; ++n) {
        BoundConstants b = bound_constants(n);
        CHECK(std::isfinite(b.c_n));
        CHECK(b.epsilon > 0.0);
        CHECK(b.delta > 0.0);
    }
    // the cap fraction drops below the smallest positive double around n = 12
    for (int n = 12; n <= 16; ++n) {
        BoundConstants b = bound_constants(n);
        CHECK(b.epsilon == 0.0);
        CHECK(std::isinf(b.c_n));
        CHECK(b.zeta_bound > 0.0); // unaffected by the underflow
    }
    CHECK_THROWS_AS(bound_constants(1), std::invalid_argument);
    CHECK_THROWS_AS(bound_constants(17), std::invalid_argument);
}

TEST_CASE("greedy saturated family on a tiny hand case") {
    Vec e2 = Vec::Zero(2);
    e2[1] = 1.0;
    // e1 and e2 are orthogonal (dot 0 <= 1/2): both retained
    std::vector<UnitVector> input = {UnitVector(axis_of(2)), UnitVector(e2)};
    SaturatedFamily fam = greedy_saturated_family(input);
    CHECK(fam.vectors.size() == 2);
    CHECK(fam.max_pairwise_dot == doctest::Approx(0.0));

    // a vector at angle < 60 degrees to e1 is rejected
    Vec close(2);
    close << std::cos(0.3), std::sin(0.3);
    input.push_back(UnitVector::normalize(close));
    SaturatedFamily fam2 = greedy_saturated_family(input);
    CHECK(fam2.vectors.size() == 2);
}

TEST_CASE("greedy family respects the packing cap and saturates") {
    for (int n : {2, 3, 4}) {
        double cap = std::pow(3.0, n);
        for (std::uint64_t seed = 0; seed < 30; ++seed) {
            Rng rng(seed * 31 + n);
            std::vector<UnitVector> cand;
            int count = 5 + static_cast<int>(rng.next_word() % 40);
            for (int i = 0; i < count; ++i) {
                Vec v(n);
                for (int d = 0; d < n; ++d) v[d] = rng.gaussian();
                if (v.norm() < 1e-9) continue;
                cand.push_back(UnitVector::normalize(v));
            }
            if (cand.empty()) continue;
            SaturatedFamily fam = greedy_saturated_family(cand);
            CHECK(static_cast<double>(fam.vectors.size()) <= cap);
            CHECK(fam.max_pairwise_dot <= 0.5 + 1e-12);
            // maximality: every candidate is either retained or blocked by a member
            for (const UnitVector& c : cand) {
                bool retained = false;
                bool blocked = false;
                for (const UnitVector& m : fam.vectors) {
                    if ((m.coords() - c.coords()).norm() == 0.0) retained = true;
                    if (m.dot(c.coords()) > 0.5) blocked = true;
                }
                CHECK((retained || blocked));
            }
        }
    }
}

TEST_CASE("greedy family rejects empty input") {
    CHECK_THROWS_AS(greedy_saturated_family(std::vector<UnitVector>{}), std::invalid_argument);
}

TEST_CASE("hemisphere direction on single and orthogonal inputs") {
    std::vector<UnitVector> one = {UnitVector(axis_of(3))};
    HemisphereResult r = hemisphere_direction(one);
    CHECK(r.min_dot == doctest::Approx(1.0));
    CHECK((r.direction.coords() - axis_of(3)).norm() == doctest::Approx(0.0));

    Vec e2 = Vec::Zero(3);
    e2[1] = 1.0;
    std::vector<UnitVector> two = {UnitVector(axis_of(3)), UnitVector(e2)};
    HemisphereResult r2 = hemisphere_direction(two);
    // zeta is the normalized sum, at 45 degrees from both
    double expect = 1.0 / std::sqrt(2.0);
    CHECK(r2.min_dot == doctest::Approx(expect).epsilon(1e-12));
    CHECK(r2.min_dot >= bound_constants(3).zeta_bound);
    CHECK(r2.family_norm_sq <= std::pow(3.0, 6.0));
}

TEST_CASE("hemisphere direction from 45 degree caps meets the bound") {
    for (int n : {2, 3, 4}) {
        double zeta_bound = bound_constants(n).zeta_bound;
        for (std::uint64_t seed = 0; seed < 40; ++seed) {
            Rng rng(seed * 7 + n);
            auto vectors = cap_sample(rng, axis_of(n), kPi / 4.0,
                                      3 + static_cast<int>(rng.next_word() % 14));
            HemisphereResult r = hemisphere_direction(vectors);
            CHECK(r.min_dot >= zeta_bound - 1e-12);
            CHECK(r.family_norm_sq <= std::pow(3.0, 2.0 * n) + 1e-9);
            for (const UnitVector& v : vectors) {
                CHECK(r.direction.dot(v.coords()) >= zeta_bound - 1e-12);
            }
        }
    }
}

TEST_CASE("hemisphere direction rejects hypothesis violations by naming the pair") {
    // vectors at 120 degrees: dot -0.5, far below -(1/3)^4 in R^3
    Vec a = axis_of(3);
    Vec b(3);
    b << -0.5, std::sqrt(3.0) / 2.0, 0.0;
    std::vector<UnitVector> pair = {UnitVector(a), UnitVector::normalize(b)};
    try {
        hemisphere_direction(pair);
        FAIL("expected the hypothesis check to throw");
    } catch (const std::invalid_argument& e) {
        std::string msg = e.what();
        CHECK(msg.find("pair (0, 1)") != std::string::npos);
    }
}

TEST_CASE("verify length bound on simple self-contracted curves") {
    SphereSampler sampler(42, 20000);
    std::vector<Vec> seg;
    Vec p(2);
    p << 0, 0;
    seg.push_back(p);
    p << 1, 0;
    seg.push_back(p);
    DiscreteCurve segment(seg);
    LengthBoundReport rep = verify_length_bound(segment, sampler);
    CHECK(rep.length == doctest::Approx(1.0));
    // segment of length 1: mean width 2/pi, ratio pi/2, far below c_2
    CHECK(rep.ratio == doctest::Approx(kPi / 2.0).epsilon(0.05));
    CHECK(rep.c_n == doctest::Approx(bound_constants(2).c_n));
    CHECK(rep.holds);
}

TEST_CASE("verify length bound refuses non contracted input") {
    SphereSampler sampler(42, 100);
    std::vector<Vec> pts;
    Vec p(2);
    p << 0, 0;
    pts.push_back(p);
    p << 1, 0;
    pts.push_back(p);
    p << 0.4, 0;
    pts.push_back(p);
    DiscreteCurve bad(pts);
    try {
        verify_length_bound(bad, sampler);
        FAIL("expected a precondition error");
    } catch (const std::invalid_argument& e) {
        std::string msg = e.what();
        // the witness triple is spelled out for diagnosis
        CHECK(msg.find("(0, 1, 2)") != std::string::npos);
    }
}

TEST_CASE("single point curve satisfies the bound with zero width") {
    SphereSampler sampler(42, 100);
    std::vector<Vec> pts;
    Vec p(3);
    p << 1, 2, 3;
    pts.push_back(p);
    DiscreteCurve dot(pts);
    LengthBoundReport rep = verify_length_bound(dot, sampler);
    CHECK(rep.length == 0.0);
    CHECK(rep.width.value == 0.0);
    CHECK(rep.holds); // 0 <= 0 with no slack needed
}
