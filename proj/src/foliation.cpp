#include "selfcontract/foliation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace selfcontract {

namespace {

// Projection of p onto [f <= r] assuming f(p) > r, via bisection on the
// proximal parameter. The inner prox tolerance is kept well below the level
// tolerance so the two error sources do not interact.
Vec project_to_sublevel(const ConvexFunction& f, const Vec& p, double r, double tol) {
    const double inner_tol = std::min(1e-12, tol * 1e-3);
    double lo = 0.0;
    double hi = 1.0;
    Vec at_hi = prox_point(f, p, hi, inner_tol).point;
    int doublings = 0;
    while (f.value(at_hi) > r) {
        hi *= 2.0;
        if (++doublings > 80) {
            throw std::runtime_error(
                "sublevel_projection_orbit: level appears to lie at or below inf f");
        }
        lo = hi / 2.0;
        at_hi = prox_point(f, p, hi, inner_tol).point;
    }
    // Invariant: f(prox at lo) > r >= f(prox at hi); narrow on the level.
    Vec candidate = at_hi;
    for (int it = 0; it < 400; ++it) {
        double achieved = f.value(candidate);
        if (std::abs(achieved - r) <= tol) {
            return candidate;
        }
        double mid = 0.5 * (lo + hi);
        Vec at_mid = prox_point(f, p, mid, inner_tol).point;
        if (f.value(at_mid) > r) {
            lo = mid;
        } else {
            hi = mid;
            candidate = at_mid;
        }
        if (hi - lo <= 1e-18 * std::max(1.0, hi)) {
            break;
        }
    }
    double achieved = f.value(candidate);
    if (std::abs(achieved - r) <= tol) {
        return candidate;
    }
    std::ostringstream msg;
    msg << "sublevel_projection_orbit: bisection stalled at level " << achieved
        << " while targeting " << r;
    throw std::runtime_error(msg.str());
}

} // namespace

FoliationOrbit sublevel_projection_orbit(const ConvexFunction& f, const Vec& x0,
                                         const std::vector<double>& levels, double tol) {
    if (!(tol > 0.0)) {
        throw std::invalid_argument("sublevel_projection_orbit: tol must be > 0");
    }
    if (levels.empty()) {
        throw std::invalid_argument("sublevel_projection_orbit: need at least one level");
    }
    for (std::size_t i = 0; i < levels.size(); ++i) {
        if (!std::isfinite(levels[i])) {
            throw std::invalid_argument("sublevel_projection_orbit: non-finite level");
        }
        if (i > 0 && !(levels[i] < levels[i - 1])) {
            throw std::invalid_argument(
                "sublevel_projection_orbit: levels must be strictly decreasing");
        }
    }
    double start_value = f.value(x0);
    if (levels.front() > start_value + tol) {
        throw std::invalid_argument(
            "sublevel_projection_orbit: first level lies above f(x0)");
    }

    std::vector<Vec> points{x0};
    std::vector<double> recorded{start_value};
    for (double r : levels) {
        const Vec& p = points.back();
        if (f.value(p) <= r + tol) {
            // Set already contains the point; projection is the identity.
            // Skip the duplicate so recorded levels stay strictly decreasing.
            continue;
        }
        points.push_back(project_to_sublevel(f, p, r, tol));
        recorded.push_back(r);
    }
    FoliationOrbit orbit{DiscreteCurve(std::move(points)), std::move(recorded), tol};
    return orbit;
}

PredicateVerdict decreasing_level_check(const FoliationOrbit& orbit, const ConvexFunction& f) {
    if (orbit.levels.size() != orbit.curve.size()) {
        throw std::invalid_argument("decreasing_level_check: level/vertex count mismatch");
    }
    double prev = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < orbit.curve.size(); ++k) {
        double v = f.value(orbit.curve[k]);
        if (std::abs(v - orbit.levels[k]) > orbit.level_tol) {
            PredicateVerdict verdict;
            verdict.holds = false;
            verdict.witness = Witness{k, k, k, std::abs(v - orbit.levels[k])};
            return verdict;
        }
        if (!(v < prev)) {
            PredicateVerdict verdict;
            verdict.holds = false;
            verdict.witness = Witness{k - 1, k, k, v - prev};
            return verdict;
        }
        prev = v;
    }
    return {};
}

DiscreteCurve gradient_flow_curve(const ConvexFunction& f, const Vec& x0, double h, double T) {
    if (!f.has_gradient()) {
        throw std::invalid_argument("gradient_flow_curve: f has no declared gradient");
    }
    if (!(h > 0.0)) {
        throw std::invalid_argument("gradient_flow_curve: step must be > 0");
    }
    if (!(T >= 0.0)) {
        throw std::invalid_argument("gradient_flow_curve: horizon must be >= 0");
    }
    auto rhs = [&f](const Vec& x) -> Vec { return -f.subgradient(x); };

    std::vector<Vec> pts{x0};
    std::vector<double> times{0.0};
    double t = 0.0;
    Vec x = x0;
    while (t < T - 1e-12 * std::max(1.0, T)) {
        double step = std::min(h, T - t);
        Vec k1 = rhs(x);
        Vec k2 = rhs(x + 0.5 * step * k1);
        Vec k3 = rhs(x + 0.5 * step * k2);
        Vec k4 = rhs(x + step * k3);
        x = x + (step / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        t += step;
        pts.push_back(x);
        times.push_back(t);
    }
    if (pts.size() == 1) {
        return DiscreteCurve(std::move(pts));
    }
    return DiscreteCurve(std::move(pts), std::move(times));
}

ApproximationResult polygonal_approximation(const DiscreteCurve& curve, double delta,
                                            const ToleranceConfig& tol) {
    if (!(delta > 0.0)) {
        throw std::invalid_argument("polygonal_approximation: delta must be > 0");
    }
    std::vector<std::size_t> idx = distinct_indices(curve);
    std::size_t m = idx.size();
    if (m <= 2) {
        // Nothing to thin out; the secant precondition needs 3 vertices.
        std::vector<Vec> pts;
        for (std::size_t i : idx) {
            pts.push_back(curve[i]);
        }
        ApproximationResult res{DiscreteCurve(std::move(pts)), idx, delta, 0.0};
        return res;
    }

    PredicateVerdict strong = secant_cone_check(curve, tol);
    if (!strong.holds) {
        std::ostringstream msg;
        msg << "polygonal_approximation: input fails the secant cone check at ("
            << strong.witness->i << ", " << strong.witness->j << ", " << strong.witness->k
            << ") with margin deficit " << strong.witness->violation;
        throw std::invalid_argument(msg.str());
    }

    std::vector<double> cum(m, 0.0);
    for (std::size_t i = 1; i < m; ++i) {
        cum[i] = cum[i - 1] + (curve[idx[i]] - curve[idx[i - 1]]).norm();
    }
    const double window_eps = 1e-12 * std::max(1.0, cum.back());

    std::vector<std::size_t> retained{m - 1}; // collapsed indices, backward order
    std::size_t current = m - 1;
    while (current > 0) {
        std::size_t earliest = current;
        while (earliest > 0 && cum[current] - cum[earliest - 1] <= delta + window_eps) {
            --earliest;
        }
        if (earliest == current) {
            std::ostringstream msg;
            msg << "polygonal_approximation: arc gap before sample " << idx[current]
                << " exceeds delta; sample the curve more finely";
            throw std::runtime_error(msg.str());
        }
        const Vec& base = curve[idx[current]];
        bool found = false;
        for (std::size_t j = earliest; j < current; ++j) {
            Vec secant = curve[idx[j]] - base;
            double sn = secant.norm();
            bool admissible = true;
            for (std::size_t r : retained) {
                Vec off = curve[idx[r]] - base;
                double on = off.norm();
                if (secant.dot(off) > -tol.rel_margin * sn * on) {
                    admissible = false;
                    break;
                }
            }
            if (admissible) {
                retained.push_back(j);
                current = j;
                found = true;
                break;
            }
        }
        if (!found) {
            std::ostringstream msg;
            msg << "polygonal_approximation: no admissible backward vertex from sample "
                << idx[current] << "; the curve is not strongly self-contracted at scale "
                << delta;
            throw std::runtime_error(msg.str());
        }
    }

    std::reverse(retained.begin(), retained.end());
    std::vector<Vec> pts;
    std::vector<std::size_t> sources;
    pts.reserve(retained.size());
    for (std::size_t r : retained) {
        pts.push_back(curve[idx[r]]);
        sources.push_back(idx[r]);
    }
    DiscreteCurve polyline(std::move(pts));

    double avg_spacing = cum.back() / static_cast<double>(m - 1);
    double resolution = std::max(avg_spacing, 1e-9);
    double achieved = polyline_hausdorff(polyline, curve, resolution);
    return ApproximationResult{std::move(polyline), std::move(sources), delta, achieved};
}

} // namespace selfcontract
