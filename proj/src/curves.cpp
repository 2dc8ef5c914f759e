#include "selfcontract/curves.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace selfcontract {

DiscreteCurve::DiscreteCurve(std::vector<Vec> points) : points_(std::move(points)) {
    if (points_.empty()) {
        throw std::invalid_argument("DiscreteCurve: need at least one vertex");
    }
    dim_ = static_cast<int>(points_.front().size());
    if (dim_ == 0) {
        throw std::invalid_argument("DiscreteCurve: zero-dimensional vertex");
    }
    for (const Vec& p : points_) {
        if (static_cast<int>(p.size()) != dim_) {
            throw std::invalid_argument("DiscreteCurve: inconsistent vertex dimensions");
        }
        if (!p.allFinite()) {
            throw std::invalid_argument("DiscreteCurve: non-finite vertex");
        }
    }
}

DiscreteCurve::DiscreteCurve(std::vector<Vec> points, std::vector<double> params)
    : DiscreteCurve(std::move(points)) {
    if (params.size() != points_.size()) {
        throw std::invalid_argument("DiscreteCurve: params length mismatch");
    }
    for (std::size_t i = 0; i < params.size(); ++i) {
        if (!std::isfinite(params[i])) {
            throw std::invalid_argument("DiscreteCurve: non-finite parameter");
        }
        if (i > 0 && !(params[i] > params[i - 1])) {
            throw std::invalid_argument("DiscreteCurve: parameters must be strictly increasing");
        }
    }
    params_ = std::move(params);
}

std::vector<std::size_t> distinct_indices(const DiscreteCurve& curve) {
    std::vector<std::size_t> keep;
    keep.reserve(curve.size());
    keep.push_back(0);
    for (std::size_t i = 1; i < curve.size(); ++i) {
        if ((curve[i] - curve[keep.back()]).norm() > 0.0) {
            keep.push_back(i);
        }
    }
    return keep;
}

double length(const DiscreteCurve& curve) {
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < curve.size(); ++i) {
        total += (curve[i + 1] - curve[i]).norm();
    }
    return total;
}

PredicateVerdict is_self_contracted(const DiscreteCurve& curve, const ToleranceConfig& tol) {
    std::vector<std::size_t> idx = distinct_indices(curve);
    std::size_t m = idx.size();
    for (std::size_t k = 2; k < m; ++k) {
        const Vec& target = curve[idx[k]];
        double prev = (curve[idx[0]] - target).norm();
        for (std::size_t i = 1; i < k; ++i) {
            double cur = (curve[idx[i]] - target).norm();
            if (cur > prev + tol.abs_tol) {
                PredicateVerdict v;
                v.holds = false;
                v.witness = Witness{idx[i - 1], idx[i], idx[k], cur - prev};
                return v;
            }
            prev = cur;
        }
    }
    return {};
}

PredicateVerdict is_self_expanded(const DiscreteCurve& curve, const ToleranceConfig& tol) {
    if (curve.size() < 2) {
        throw std::invalid_argument("is_self_expanded: need at least 2 vertices");
    }
    std::vector<std::size_t> idx = distinct_indices(curve);
    std::size_t m = idx.size();
    for (std::size_t k = 0; k + 1 < m; ++k) {
        Vec d = curve[idx[k + 1]] - curve[idx[k]];
        double slack = tol.abs_tol * d.norm();
        for (std::size_t u = 0; u < k; ++u) {
            double at_start = d.dot(curve[idx[k]] - curve[idx[u]]);
            double at_end = d.dot(curve[idx[k + 1]] - curve[idx[u]]);
            double worst = std::min(at_start, at_end);
            if (worst < -slack) {
                PredicateVerdict v;
                v.holds = false;
                v.witness = Witness{idx[u], idx[k], idx[k + 1], -worst / d.norm()};
                return v;
            }
        }
    }
    return {};
}

DiscreteCurve reverse(const DiscreteCurve& curve) {
    std::vector<Vec> pts(curve.points().rbegin(), curve.points().rend());
    if (curve.params()) {
        std::vector<double> params;
        params.reserve(curve.size());
        for (auto it = curve.params()->rbegin(); it != curve.params()->rend(); ++it) {
            params.push_back(-*it);
        }
        return DiscreteCurve(std::move(pts), std::move(params));
    }
    return DiscreteCurve(std::move(pts));
}

PredicateVerdict check_halfspace_property(const DiscreteCurve& curve, const ToleranceConfig& tol) {
    if (curve.size() < 2) {
        throw std::invalid_argument("check_halfspace_property: need at least 2 vertices");
    }
    std::vector<std::size_t> idx = distinct_indices(curve);
    std::size_t m = idx.size();
    for (std::size_t k = 0; k + 1 < m; ++k) {
        Vec d = curve[idx[k + 1]] - curve[idx[k]];
        double dn = d.norm();
        for (std::size_t u = k + 1; u < m; ++u) {
            Vec from_start = curve[idx[u]] - curve[idx[k]];
            Vec from_end = curve[idx[u]] - curve[idx[k + 1]];
            double a = d.dot(from_start) + tol.abs_tol * dn * from_start.norm();
            double b = d.dot(from_end) + tol.abs_tol * dn * from_end.norm();
            if (a < 0.0 || b < 0.0) {
                PredicateVerdict v;
                v.holds = false;
                v.witness = Witness{idx[k], idx[k + 1], idx[u], -std::min(a, b) / dn};
                return v;
            }
        }
    }
    return {};
}

DiscreteCurve arc_length_reparam(const DiscreteCurve& curve, double spacing) {
    if (!(spacing > 0.0)) {
        throw std::invalid_argument("arc_length_reparam: spacing must be > 0");
    }
    std::vector<std::size_t> idx = distinct_indices(curve);
    std::size_t m = idx.size();
    if (m < 2) {
        throw std::invalid_argument("arc_length_reparam: curve has zero length");
    }
    std::vector<double> cum(m, 0.0);
    for (std::size_t i = 1; i < m; ++i) {
        cum[i] = cum[i - 1] + (curve[idx[i]] - curve[idx[i - 1]]).norm();
    }
    double total = cum.back();

    // Merge vertex arc lengths with the spacing grid, deduplicating targets
    // that land on (numerically at) a vertex.
    std::vector<double> targets;
    targets.reserve(m + static_cast<std::size_t>(total / spacing) + 2);
    double grid = spacing;
    std::size_t vi = 0;
    const double eps = 1e-12 * std::max(1.0, total);
    while (vi < m || grid < total - eps) {
        double vertex_s = vi < m ? cum[vi] : std::numeric_limits<double>::infinity();
        double next = std::min(vertex_s, grid);
        if (!targets.empty() && next <= targets.back() + eps) {
            // fall through, just advance whichever source produced it
        } else {
            targets.push_back(next);
        }
        if (std::abs(vertex_s - next) <= eps) {
            ++vi;
        }
        if (grid <= next + eps) {
            grid += spacing;
        }
    }
    if (targets.empty() || targets.back() < total - eps) {
        targets.push_back(total);
    } else {
        targets.back() = total;
    }

    std::vector<Vec> pts;
    pts.reserve(targets.size());
    std::size_t seg = 0;
    for (double s : targets) {
        while (seg + 2 < m && cum[seg + 1] <= s) {
            ++seg;
        }
        double lo = cum[seg];
        double hi = cum[seg + 1];
        double t = std::clamp((s - lo) / (hi - lo), 0.0, 1.0);
        // Reproduce vertices exactly instead of through interpolation noise.
        if (t <= 0.0) {
            pts.push_back(curve[idx[seg]]);
        } else if (t >= 1.0) {
            pts.push_back(curve[idx[seg + 1]]);
        } else {
            pts.push_back(curve[idx[seg]] + t * (curve[idx[seg + 1]] - curve[idx[seg]]));
        }
    }

    // Parameters accumulate the output chords themselves, nudged up by ulps
    // where plain summation would leave a parameter gap smaller than its
    // chord. Reusing the grid positions here would lose the 1-Lipschitz
    // property on chords much shorter than the total arc length, since the
    // grid's rounding error is absolute while the requirement is relative.
    std::vector<double> params(pts.size(), 0.0);
    for (std::size_t i = 1; i < pts.size(); ++i) {
        double chord = (pts[i] - pts[i - 1]).norm();
        double next = params[i - 1] + chord;
        if (next <= params[i - 1]) {
            next = std::nextafter(params[i - 1], std::numeric_limits<double>::infinity());
        }
        while (next - params[i - 1] < chord) {
            next = std::nextafter(next, std::numeric_limits<double>::infinity());
        }
        params[i] = next;
    }
    return DiscreteCurve(std::move(pts), std::move(params));
}

std::vector<MeanWidthEstimate> tail_width_estimates(const DiscreteCurve& curve,
                                                    const SphereSampler& sampler) {
    if (sampler.count() < 2) {
        throw std::invalid_argument("tail_width_estimates: need at least 2 sample directions");
    }
    std::vector<UnitVector> dirs = sampler.sample(curve.dim());
    std::size_t m = curve.size();
    // Per direction, suffix max/min of the vertex projections give the width
    // of every tail in one backward sweep instead of m separate estimates.
    std::vector<double> mean(m, 0.0), m2(m, 0.0);
    std::vector<double> proj(m);
    int n = 0;
    for (const UnitVector& u : dirs) {
        for (std::size_t i = 0; i < m; ++i) {
            proj[i] = u.dot(curve[i]);
        }
        ++n;
        double hi = -std::numeric_limits<double>::infinity();
        double lo = std::numeric_limits<double>::infinity();
        for (std::size_t k = m; k-- > 0;) {
            hi = std::max(hi, proj[k]);
            lo = std::min(lo, proj[k]);
            double w = hi - lo;
            double d = w - mean[k];
            mean[k] += d / n;
            m2[k] += d * (w - mean[k]);
        }
    }
    std::vector<MeanWidthEstimate> out(m);
    for (std::size_t k = 0; k < m; ++k) {
        out[k].value = mean[k];
        out[k].samples = n;
        out[k].standard_error = std::sqrt(m2[k] / (n - 1)) / std::sqrt(static_cast<double>(n));
    }
    return out;
}

std::vector<double> tail_width_profile(const DiscreteCurve& curve, const SphereSampler& sampler) {
    std::vector<MeanWidthEstimate> est = tail_width_estimates(curve, sampler);
    std::vector<double> out;
    out.reserve(est.size());
    for (const MeanWidthEstimate& e : est) {
        out.push_back(e.value);
    }
    return out;
}

PredicateVerdict secant_cone_check(const DiscreteCurve& curve, const ToleranceConfig& tol) {
    if (curve.size() < 3) {
        throw std::invalid_argument("secant_cone_check: need at least 3 vertices");
    }
    std::vector<std::size_t> idx = distinct_indices(curve);
    std::size_t m = idx.size();
    for (std::size_t k = 1; k + 1 < m; ++k) {
        Vec v = curve[idx[k - 1]] - curve[idx[k]];
        v /= v.norm();
        for (std::size_t u = k + 1; u < m; ++u) {
            Vec off = curve[idx[u]] - curve[idx[k]];
            double on = off.norm();
            if (on == 0.0) {
                // Revisiting an earlier vertex is incompatible with a strict
                // separating secant; flag it rather than dividing by zero.
                PredicateVerdict verdict;
                verdict.holds = false;
                verdict.witness = Witness{idx[k - 1], idx[k], idx[u], tol.rel_margin};
                return verdict;
            }
            double value = v.dot(off);
            if (value > -tol.rel_margin * on) {
                PredicateVerdict verdict;
                verdict.holds = false;
                verdict.witness = Witness{idx[k - 1], idx[k], idx[u], value / on + tol.rel_margin};
                return verdict;
            }
        }
    }
    return {};
}

double point_segment_distance(const Vec& p, const Vec& a, const Vec& b) {
    Vec ab = b - a;
    double len2 = ab.squaredNorm();
    if (len2 == 0.0) {
        return (p - a).norm();
    }
    double t = std::clamp(ab.dot(p - a) / len2, 0.0, 1.0);
    return (p - (a + t * ab)).norm();
}

namespace {

double point_to_polyline(const Vec& p, const DiscreteCurve& c) {
    double best = std::numeric_limits<double>::infinity();
    if (c.size() == 1) {
        return (p - c[0]).norm();
    }
    for (std::size_t i = 0; i + 1 < c.size(); ++i) {
        best = std::min(best, point_segment_distance(p, c[i], c[i + 1]));
    }
    return best;
}

double one_sided_polyline(const DiscreteCurve& from, const DiscreteCurve& to, double res) {
    double worst = 0.0;
    for (std::size_t i = 0; i < from.size(); ++i) {
        worst = std::max(worst, point_to_polyline(from[i], to));
    }
    for (std::size_t i = 0; i + 1 < from.size(); ++i) {
        double seg = (from[i + 1] - from[i]).norm();
        int pieces = std::max(1, static_cast<int>(std::ceil(seg / res)));
        for (int j = 1; j < pieces; ++j) {
            Vec p = from[i] + (static_cast<double>(j) / pieces) * (from[i + 1] - from[i]);
            worst = std::max(worst, point_to_polyline(p, to));
        }
    }
    return worst;
}

} // namespace

double polyline_hausdorff(const DiscreteCurve& a, const DiscreteCurve& b,
                          double densify_resolution) {
    if (!(densify_resolution > 0.0)) {
        throw std::invalid_argument("polyline_hausdorff: resolution must be > 0");
    }
    if (a.dim() != b.dim()) {
        throw std::invalid_argument("polyline_hausdorff: dimension mismatch");
    }
    return std::max(one_sided_polyline(a, b, densify_resolution),
                    one_sided_polyline(b, a, densify_resolution));
}

} // namespace selfcontract
