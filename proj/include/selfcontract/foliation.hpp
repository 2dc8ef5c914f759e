#pragma once

#include "selfcontract/curves.hpp"
#include "selfcontract/prox.hpp"

#include <cstddef>
#include <vector>

namespace selfcontract {

// Orbit of successive projections onto shrinking sublevel sets of a convex
// function: vertex k sits on the level set f = levels[k] (within level_tol).
struct FoliationOrbit {
    DiscreteCurve curve;
    std::vector<double> levels;
    double level_tol = 1e-9;
};

// Projects x0 onto [f <= r] for each requested level in turn, starting each
// projection from the previous point. Projection is computed through the
// proximal map: lambda -> prox_{lambda f}(p) traces the projection path as
// lambda grows and f(prox_{lambda f}(p)) decreases monotonically, so a
// bracket-and-bisect on lambda, controlled by the achieved level (tolerance
// lives on the level, not on lambda), lands on the boundary point, which is
// the metric projection whenever f(p) > r. A level at or above f of the
// current point keeps the point and is recorded only once.
// Requires strictly decreasing levels, levels[0] <= f(x0) + tol, and levels
// above inf f (detected when even huge lambda cannot reach the level).
FoliationOrbit sublevel_projection_orbit(const ConvexFunction& f, const Vec& x0,
                                         const std::vector<double>& levels, double tol = 1e-9);

// Verifies the recorded levels against fresh evaluations of f: values must
// match within orbit.level_tol and be strictly decreasing along the orbit.
PredicateVerdict decreasing_level_check(const FoliationOrbit& orbit, const ConvexFunction& f);

// Integrates x' = -grad f(x) from x0 over [0, T] with classic fourth-order
// Runge-Kutta at step h (a shorter final step lands exactly on T). Params
// hold the time grid. Requires a smooth f (has_gradient), h > 0, T >= 0.
DiscreteCurve gradient_flow_curve(const ConvexFunction& f, const Vec& x0, double h, double T);

struct ApproximationResult {
    DiscreteCurve polyline;
    std::vector<std::size_t> vertex_source_indices; // into the input curve
    double accuracy = 0.0;           // the requested delta
    double hausdorff_achieved = 0.0; // measured polyline-to-input distance
};

// Backward greedy polygonal approximation of a finely sampled strongly
// self-contracted curve. Starting from the last sample, each new vertex is
// the earliest sample within backward arc-length delta whose secant from the
// current vertex separates every retained vertex with relative margin
// rel_margin (the discrete normal-cone condition); the input must pass
// secant_cone_check with the same margin, which also guarantees the adjacent
// sample is always admissible. The result stays within Hausdorff distance
// delta of the input and is itself self-contracted.
ApproximationResult polygonal_approximation(const DiscreteCurve& curve, double delta,
                                            const ToleranceConfig& tol = {});

} // namespace selfcontract
