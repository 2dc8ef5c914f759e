#pragma once

#include "selfcontract/curves.hpp"
#include "selfcontract/geometry.hpp"

#include <vector>

namespace selfcontract {

// Family of unit vectors whose pairwise inner products stay at or below 1/2
// (within 1e-12). Such a family on S^{n-1} can have at most 3^n members: the
// open balls of radius 1/2 around its members are disjoint and sit inside the
// ball of radius 3/2, so a volume count caps the size.
struct SaturatedFamily {
    std::vector<UnitVector> vectors;
    double max_pairwise_dot = -1.0;
};

// Greedy scan in input order: a candidate is kept when its inner product with
// every vector kept so far is <= 1/2. The result is maximal within the
// candidate list (every rejected candidate has a kept witness above 1/2).
SaturatedFamily greedy_saturated_family(const std::vector<UnitVector>& candidates);

struct HemisphereResult {
    UnitVector direction;
    double min_dot = 0.0;        // min over the family of <direction, x>
    double family_norm_sq = 0.0; // |sum of family vectors|^2
    SaturatedFamily family;
};

// Almost-hemisphere direction for a set of unit vectors in R^n whose pairwise
// inner products are all >= -(1/3)^{n+1}. Builds the greedy saturated family,
// sums it into v, and returns zeta = v/|v|. The hypothesis forces
//   |v|^2 <= m + m(m-1)/2 <= 3^{2n}
// (m = family size, each cross term <= 1/2), and every member of the family
// then satisfies <zeta, x> >= (1/3)^{2n+1}. Inputs violating the pairwise
// hypothesis by more than 1e-12 are rejected with the offending pair named.
HemisphereResult hemisphere_direction(const std::vector<UnitVector>& sigma);

// Constants of the length-vs-mean-width bound in dimension n (2 <= n <= 16):
//   delta      = 3^{-3n}
//   epsilon    = cap_fraction(n, delta^2) / 4
//   c_n        = 1 / epsilon
//   zeta_bound = 3^{-(2n+1)}
// For n >= 12 the cap fraction underflows double precision, so epsilon
// degrades to 0 and c_n to +inf; the predicates are unaffected.
struct BoundConstants {
    int n = 0;
    double delta = 0.0;
    double epsilon = 0.0;
    double c_n = 0.0;
    double zeta_bound = 0.0;
};

BoundConstants bound_constants(int n);

struct LengthBoundReport {
    double length = 0.0;
    MeanWidthEstimate width;
    double c_n = 0.0;
    double ratio = 0.0; // length / estimated mean width (inf for width 0)
    bool holds = false;
};

// Checks length(curve) <= c_n * W + 3 * (MC standard error) on a curve that
// must pass is_self_contracted; a non-self-contracted input is a precondition
// error that names the witness triple.
LengthBoundReport verify_length_bound(const DiscreteCurve& curve,
                                      const SphereSampler& sampler,
                                      const ToleranceConfig& tol = {});

} // namespace selfcontract
