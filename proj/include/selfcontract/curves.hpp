#pragma once

#include "selfcontract/geometry.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace selfcontract {

// Polyline through an ordered list of vertices, optionally carrying a strictly
// increasing parameter per vertex. Vertices must share one dimension and be
// finite; both are enforced at construction.
class DiscreteCurve {
public:
    explicit DiscreteCurve(std::vector<Vec> points);
    DiscreteCurve(std::vector<Vec> points, std::vector<double> params);

    int dim() const { return dim_; }
    std::size_t size() const { return points_.size(); }
    const Vec& operator[](std::size_t i) const { return points_[i]; }
    const std::vector<Vec>& points() const { return points_; }
    const std::optional<std::vector<double>>& params() const { return params_; }

private:
    std::vector<Vec> points_;
    std::optional<std::vector<double>> params_;
    int dim_;
};

struct ToleranceConfig {
    double abs_tol = 1e-9;
    double rel_margin = 1e-6;
};

// Index triple pinpointing a violated inequality, plus how far past the
// tolerance it landed. The roles of i/j/k depend on the predicate and are
// documented at each check.
struct Witness {
    std::size_t i = 0;
    std::size_t j = 0;
    std::size_t k = 0;
    double violation = 0.0;
};

struct PredicateVerdict {
    bool holds = true;
    std::optional<Witness> witness;
    explicit operator bool() const { return holds; }
};

// Indices of the vertices that survive dropping exact consecutive duplicates.
// All predicates below evaluate on this collapsed view so that normalized
// directions are well defined; reported witnesses use original indices.
std::vector<std::size_t> distinct_indices(const DiscreteCurve& curve);

// Total polyline length (sum of consecutive vertex distances).
double length(const DiscreteCurve& curve);

// Self-contraction check: for every target vertex p_k the distances
// d(p_i, p_k) must be nonincreasing in i over i = 0..k, up to abs_tol.
// Witness on failure: (i, i+1, k) for the first violating adjacent pair,
// violation = d(p_{i+1}, p_k) - d(p_i, p_k).
PredicateVerdict is_self_contracted(const DiscreteCurve& curve,
                                    const ToleranceConfig& tol = {});

// Self-expansion check: every segment must not point back into the set of
// earlier vertices. For segment k with direction d_k and every u <= k both
//   <d_k, p_k - p_u>     >= -abs_tol * |d_k|
//   <d_k, p_{k+1} - p_u> >= -abs_tol * |d_k|
// are required (both segment endpoints, since the inner product is linear
// along the segment). Requires m >= 2. Witness: (u, k, k+1).
PredicateVerdict is_self_expanded(const DiscreteCurve& curve,
                                  const ToleranceConfig& tol = {});

// Same vertex order reversed; params, if present, are negated and reversed so
// they stay strictly increasing.
DiscreteCurve reverse(const DiscreteCurve& curve);

// Forward half-space check: each segment direction must make a nonnegative
// inner product with the offsets to strictly later vertices, measured from
// both segment endpoints:
//   <d_k, p_u - p_k>     >= -abs_tol * |d_k| * |p_u - p_k|
//   <d_k, p_u - p_{k+1}> >= -abs_tol * |d_k| * |p_u - p_{k+1}|
// for u > k. Requires m >= 2. Witness: (k, k+1, u).
PredicateVerdict check_halfspace_property(const DiscreteCurve& curve,
                                          const ToleranceConfig& tol = {});

// Resamples the polyline at arc lengths 0, spacing, 2*spacing, ... together
// with the original vertices, and attaches cumulative arc length as the
// parameter. The result is 1-Lipschitz in its parameter, has the same length
// and traverses the same polyline. Requires spacing > 0 and positive length.
DiscreteCurve arc_length_reparam(const DiscreteCurve& curve, double spacing);

// Mean width of the suffix point clouds {p_k, ..., p_{m-1}} for every k.
// One shared direction sample is drawn for all entries, so the profile is
// exactly nonincreasing in k (suffix hulls are nested) rather than only up to
// Monte-Carlo noise. The final entry is a single point and comes out 0.
std::vector<double> tail_width_profile(const DiscreteCurve& curve,
                                       const SphereSampler& sampler);

// Same computation with per-entry standard errors exposed.
std::vector<MeanWidthEstimate> tail_width_estimates(const DiscreteCurve& curve,
                                                    const SphereSampler& sampler);

// Strong self-contraction surrogate: at every interior vertex k the backward
// unit secant v = (p_{k-1} - p_k)/|p_{k-1} - p_k| must separate all later
// vertices with a uniform relative margin:
//   <v, p_u - p_k> <= -rel_margin * |p_u - p_k|   for all u > k.
// Requires m >= 3. Witness: (k-1, k, u), violation measured on the
// normalized inner product.
PredicateVerdict secant_cone_check(const DiscreteCurve& curve,
                                   const ToleranceConfig& tol = {});

// Distance from a point to the segment [a, b].
double point_segment_distance(const Vec& p, const Vec& a, const Vec& b);

// Hausdorff distance between two polylines (as subsets of space, not vertex
// sets). Segments of each side are densified at the given resolution before
// measuring to the other side's segments, so the value can undershoot the
// true supremum by at most about that resolution.
double polyline_hausdorff(const DiscreteCurve& a, const DiscreteCurve& b,
                          double densify_resolution);

} // namespace selfcontract
