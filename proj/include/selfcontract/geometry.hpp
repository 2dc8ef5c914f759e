#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <functional>
#include <variant>
#include <vector>

namespace selfcontract {

using Vec = Eigen::VectorXd;

// Direction on the unit sphere. Construction rejects vectors whose norm is
// further than 1e-12 from 1; use normalize() when starting from a raw vector.
class UnitVector {
public:
    explicit UnitVector(Vec v);
    static UnitVector normalize(const Vec& v);

    const Vec& coords() const { return v_; }
    int dim() const { return static_cast<int>(v_.size()); }
    double dot(const Vec& other) const { return v_.dot(other); }
    UnitVector operator-() const;

private:
    struct unchecked_tag {};
    UnitVector(Vec v, unchecked_tag) : v_(std::move(v)) {}
    Vec v_;
};

// Convex body described by whichever representation the caller has: a finite
// point cloud (its hull is meant), a closed ball, an axis-aligned box, or a
// bare support-function oracle.
class ConvexBody {
public:
    static ConvexBody point_cloud(std::vector<Vec> points);
    static ConvexBody ball(Vec center, double radius);
    static ConvexBody box(Vec low, Vec high);
    static ConvexBody support_oracle(int dim, std::function<double(const Vec&)> h);

    int dim() const { return dim_; }

    friend double support(const ConvexBody& body, const UnitVector& direction);

private:
    struct Cloud { std::vector<Vec> points; };
    struct Ball { Vec center; double radius; };
    struct Box { Vec low, high; };
    struct Oracle { std::function<double(const Vec&)> h; };

    ConvexBody(int dim, std::variant<Cloud, Ball, Box, Oracle> rep)
        : dim_(dim), rep_(std::move(rep)) {}

    int dim_;
    std::variant<Cloud, Ball, Box, Oracle> rep_;
};

// Support function h_K(u) = sup_{x in K} <u, x>.
double support(const ConvexBody& body, const UnitVector& direction);

// Width of the body along u: h(u) + h(-u), the length of its projection onto
// the line spanned by u.
double directional_width(const ConvexBody& body, const UnitVector& direction);

// Deterministic batch of uniform directions. sample(dim) is a pure function
// of (seed, count, dim): the engine is re-seeded on every call, so two bodies
// measured with the same sampler see the exact same directions. That makes
// width comparisons between nested bodies exact rather than noisy.
class SphereSampler {
public:
    SphereSampler(std::uint64_t seed, int count);

    std::vector<UnitVector> sample(int dim) const;

    std::uint64_t seed() const { return seed_; }
    int count() const { return count_; }

private:
    std::uint64_t seed_;
    int count_;
};

struct MeanWidthEstimate {
    double value = 0.0;
    double standard_error = 0.0;
    int samples = 0;
};

// Monte-Carlo estimate of the mean width
//   W(K) = sigma_n^{-1} \int_{S^{n-1}} (h_K(u) + h_K(-u)) du,
// i.e. the average over uniform directions of the projection length.
// standard_error is the sample standard deviation over directions divided by
// sqrt(count). Requires count >= 2.
MeanWidthEstimate mean_width(const ConvexBody& body, const SphereSampler& sampler);

// Largest pairwise distance of a nonempty finite point set.
double diameter(const std::vector<Vec>& points);

// Hausdorff distance between two nonempty finite point sets.
double hausdorff(const std::vector<Vec>& a, const std::vector<Vec>& b);

// Surface measure of the unit sphere S^{n-1} in R^n: n pi^{n/2} / Gamma(n/2 + 1).
double sigma_n(int n);

// Fraction of the unit sphere S^{n-1} lying in the cap
//   { v : |v - pole| <= chordal_radius },
// for any pole (rotation invariance makes the choice irrelevant). Computed
// through the polar half-angle phi = 2 asin(r/2) as the ratio of sin^{n-2}
// integrals over [0, phi] and [0, pi]. The numerator uses adaptive Simpson
// refinement, switching to a series expansion for very small phi so the
// result stays accurate in a relative sense even when the cap is tiny; the
// denominator has the closed form sqrt(pi) Gamma((n-1)/2) / Gamma(n/2).
// Requires n >= 2 and 0 < chordal_radius <= 2.
double cap_fraction(int n, double chordal_radius);

} // namespace selfcontract
