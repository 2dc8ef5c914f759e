#include "selfcontract/sphere_lemmas.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace selfcontract {

namespace {

constexpr double kDotSlack = 1e-12;

void require_same_dim(const std::vector<UnitVector>& vs, const char* what) {
    if (vs.empty()) {
        throw std::invalid_argument(std::string(what) + ": empty input");
    }
    int dim = vs.front().dim();
    for (const UnitVector& v : vs) {
        if (v.dim() != dim) {
            throw std::invalid_argument(std::string(what) + ": mixed dimensions");
        }
    }
}

} // namespace

SaturatedFamily greedy_saturated_family(const std::vector<UnitVector>& candidates) {
    require_same_dim(candidates, "greedy_saturated_family");
    SaturatedFamily family;
    family.max_pairwise_dot = -std::numeric_limits<double>::infinity();
    for (const UnitVector& c : candidates) {
        bool ok = true;
        double worst = -std::numeric_limits<double>::infinity();
        for (const UnitVector& kept : family.vectors) {
            double d = c.dot(kept.coords());
            worst = std::max(worst, d);
            if (d > 0.5) {
                ok = false;
                break;
            }
        }
        if (ok) {
            family.vectors.push_back(c);
            if (!family.vectors.empty() && worst > family.max_pairwise_dot) {
                family.max_pairwise_dot = worst;
            }
        }
    }
    if (family.vectors.size() < 2) {
        family.max_pairwise_dot = -1.0;
    }
    return family;
}

HemisphereResult hemisphere_direction(const std::vector<UnitVector>& sigma) {
    require_same_dim(sigma, "hemisphere_direction");
    int n = sigma.front().dim();
    double hypothesis = -std::pow(1.0 / 3.0, n + 1);
    for (std::size_t i = 0; i < sigma.size(); ++i) {
        for (std::size_t j = i + 1; j < sigma.size(); ++j) {
            double d = sigma[i].dot(sigma[j].coords());
            if (d < hypothesis - kDotSlack) {
                std::ostringstream msg;
                msg << "hemisphere_direction: pair (" << i << ", " << j
                    << ") has inner product " << d << " below the required "
                    << hypothesis;
                throw std::invalid_argument(msg.str());
            }
        }
    }

    SaturatedFamily family = greedy_saturated_family(sigma);
    Vec v = Vec::Zero(n);
    for (const UnitVector& x : family.vectors) {
        v += x.coords();
    }
    double norm = v.norm();
    if (norm == 0.0) {
        // Cannot happen under the hypothesis: <v, x> >= 3^{-(n+1)} > 0 for
        // any family member x. Guard anyway against misuse.
        throw std::runtime_error("hemisphere_direction: family sum vanished");
    }
    HemisphereResult result{UnitVector::normalize(v), 0.0, v.squaredNorm(), family};
    double min_dot = std::numeric_limits<double>::infinity();
    for (const UnitVector& x : family.vectors) {
        min_dot = std::min(min_dot, result.direction.dot(x.coords()));
    }
    result.min_dot = min_dot;
    return result;
}

BoundConstants bound_constants(int n) {
    if (n < 2 || n > 16) {
        throw std::invalid_argument("bound_constants: n must be in [2, 16]");
    }
    BoundConstants c;
    c.n = n;
    c.delta = std::pow(3.0, -3.0 * n);
    c.epsilon = cap_fraction(n, c.delta * c.delta) / 4.0;
    c.c_n = 1.0 / c.epsilon;
    c.zeta_bound = std::pow(3.0, -(2.0 * n + 1.0));
    return c;
}

LengthBoundReport verify_length_bound(const DiscreteCurve& curve,
                                      const SphereSampler& sampler,
                                      const ToleranceConfig& tol) {
    PredicateVerdict sc = is_self_contracted(curve, tol);
    if (!sc.holds) {
        std::ostringstream msg;
        msg << "verify_length_bound: curve is not self-contracted; witness ("
            << sc.witness->i << ", " << sc.witness->j << ", " << sc.witness->k
            << ") with violation " << sc.witness->violation;
        throw std::invalid_argument(msg.str());
    }
    BoundConstants constants = bound_constants(curve.dim());
    LengthBoundReport report;
    report.length = length(curve);
    report.width = mean_width(ConvexBody::point_cloud(curve.points()), sampler);
    report.c_n = constants.c_n;
    report.ratio = report.width.value > 0.0
                       ? report.length / report.width.value
                       : (report.length > 0.0 ? std::numeric_limits<double>::infinity() : 0.0);
    report.holds =
        report.length <= constants.c_n * report.width.value + 3.0 * report.width.standard_error;
    return report;
}

} // namespace selfcontract
