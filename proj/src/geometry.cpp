#include "selfcontract/geometry.hpp"
#include "selfcontract/random.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace selfcontract {

namespace {

constexpr double kPi = 3.14159265358979323846;

void require_finite(const Vec& v, const char* what) {
    if (!v.allFinite()) {
        throw std::invalid_argument(std::string(what) + ": non-finite coordinates");
    }
}

} // namespace

UnitVector::UnitVector(Vec v) : v_(std::move(v)) {
    if (v_.size() == 0) {
        throw std::invalid_argument("UnitVector: empty vector");
    }
    require_finite(v_, "UnitVector");
    if (std::abs(v_.norm() - 1.0) > 1e-12) {
        throw std::invalid_argument("UnitVector: norm deviates from 1 by more than 1e-12");
    }
}

UnitVector UnitVector::normalize(const Vec& v) {
    if (v.size() == 0) {
        throw std::invalid_argument("UnitVector::normalize: empty vector");
    }
    require_finite(v, "UnitVector::normalize");
    double n = v.norm();
    if (n == 0.0) {
        throw std::invalid_argument("UnitVector::normalize: zero vector");
    }
    return UnitVector(v / n, unchecked_tag{});
}

UnitVector UnitVector::operator-() const {
    return UnitVector(-v_, unchecked_tag{});
}

ConvexBody ConvexBody::point_cloud(std::vector<Vec> points) {
    if (points.empty()) {
        throw std::invalid_argument("ConvexBody::point_cloud: empty point set");
    }
    int dim = static_cast<int>(points.front().size());
    if (dim == 0) {
        throw std::invalid_argument("ConvexBody::point_cloud: zero-dimensional point");
    }
    for (const Vec& p : points) {
        if (static_cast<int>(p.size()) != dim) {
            throw std::invalid_argument("ConvexBody::point_cloud: inconsistent dimensions");
        }
        require_finite(p, "ConvexBody::point_cloud");
    }
    return ConvexBody(dim, Cloud{std::move(points)});
}

ConvexBody ConvexBody::ball(Vec center, double radius) {
    if (center.size() == 0) {
        throw std::invalid_argument("ConvexBody::ball: empty center");
    }
    require_finite(center, "ConvexBody::ball");
    if (!(radius >= 0.0) || !std::isfinite(radius)) {
        throw std::invalid_argument("ConvexBody::ball: radius must be finite and >= 0");
    }
    int dim = static_cast<int>(center.size());
    return ConvexBody(dim, Ball{std::move(center), radius});
}

ConvexBody ConvexBody::box(Vec low, Vec high) {
    if (low.size() == 0 || low.size() != high.size()) {
        throw std::invalid_argument("ConvexBody::box: bounds must be nonempty and same size");
    }
    require_finite(low, "ConvexBody::box");
    require_finite(high, "ConvexBody::box");
    for (Eigen::Index i = 0; i < low.size(); ++i) {
        if (low[i] > high[i]) {
            throw std::invalid_argument("ConvexBody::box: low exceeds high");
        }
    }
    int dim = static_cast<int>(low.size());
    return ConvexBody(dim, Box{std::move(low), std::move(high)});
}

ConvexBody ConvexBody::support_oracle(int dim, std::function<double(const Vec&)> h) {
    if (dim < 1) {
        throw std::invalid_argument("ConvexBody::support_oracle: dim must be >= 1");
    }
    if (!h) {
        throw std::invalid_argument("ConvexBody::support_oracle: missing oracle");
    }
    return ConvexBody(dim, Oracle{std::move(h)});
}

double support(const ConvexBody& body, const UnitVector& direction) {
    if (direction.dim() != body.dim()) {
        throw std::invalid_argument("support: direction dimension mismatch");
    }
    const Vec& u = direction.coords();
    return std::visit(
        [&](const auto& rep) -> double {
            using T = std::decay_t<decltype(rep)>;
            if constexpr (std::is_same_v<T, ConvexBody::Cloud>) {
                double best = -std::numeric_limits<double>::infinity();
                for (const Vec& p : rep.points) {
                    best = std::max(best, u.dot(p));
                }
                return best;
            } else if constexpr (std::is_same_v<T, ConvexBody::Ball>) {
                return u.dot(rep.center) + rep.radius;
            } else if constexpr (std::is_same_v<T, ConvexBody::Box>) {
                // max over the box separates per coordinate by the sign of u.
                double total = 0.0;
                for (Eigen::Index i = 0; i < u.size(); ++i) {
                    total += u[i] > 0.0 ? u[i] * rep.high[i] : u[i] * rep.low[i];
                }
                return total;
            } else {
                double value = rep.h(u);
                if (!std::isfinite(value)) {
                    throw std::runtime_error("support: oracle returned non-finite value");
                }
                return value;
            }
        },
        body.rep_);
}

double directional_width(const ConvexBody& body, const UnitVector& direction) {
    return support(body, direction) + support(body, -direction);
}

SphereSampler::SphereSampler(std::uint64_t seed, int count) : seed_(seed), count_(count) {
    if (count < 1) {
        throw std::invalid_argument("SphereSampler: count must be >= 1");
    }
}

std::vector<UnitVector> SphereSampler::sample(int dim) const {
    if (dim < 1) {
        throw std::invalid_argument("SphereSampler::sample: dim must be >= 1");
    }
    Rng rng(seed_);
    std::vector<UnitVector> out;
    out.reserve(static_cast<std::size_t>(count_));
    while (static_cast<int>(out.size()) < count_) {
        Vec g(dim);
        for (int i = 0; i < dim; ++i) {
            g[i] = rng.gaussian();
        }
        double n = g.norm();
        if (n == 0.0) {
            continue; // essentially impossible, but keep the loop total
        }
        out.push_back(UnitVector::normalize(g));
    }
    return out;
}

MeanWidthEstimate mean_width(const ConvexBody& body, const SphereSampler& sampler) {
    if (sampler.count() < 2) {
        throw std::invalid_argument("mean_width: need at least 2 sample directions");
    }
    std::vector<UnitVector> dirs = sampler.sample(body.dim());
    // Welford accumulation keeps a single pass numerically stable.
    double mean = 0.0;
    double m2 = 0.0;
    int n = 0;
    for (const UnitVector& u : dirs) {
        double w = directional_width(body, u);
        ++n;
        double d = w - mean;
        mean += d / n;
        m2 += d * (w - mean);
    }
    MeanWidthEstimate est;
    est.value = mean;
    est.samples = n;
    est.standard_error = std::sqrt(m2 / (n - 1)) / std::sqrt(static_cast<double>(n));
    return est;
}

double diameter(const std::vector<Vec>& points) {
    if (points.empty()) {
        throw std::invalid_argument("diameter: empty point set");
    }
    double best = 0.0;
    for (std::size_t i = 0; i < points.size(); ++i) {
        for (std::size_t j = i + 1; j < points.size(); ++j) {
            best = std::max(best, (points[i] - points[j]).norm());
        }
    }
    return best;
}

double hausdorff(const std::vector<Vec>& a, const std::vector<Vec>& b) {
    if (a.empty() || b.empty()) {
        throw std::invalid_argument("hausdorff: empty point set");
    }
    auto one_sided = [](const std::vector<Vec>& from, const std::vector<Vec>& to) {
        double worst = 0.0;
        for (const Vec& p : from) {
            double nearest = std::numeric_limits<double>::infinity();
            for (const Vec& q : to) {
                nearest = std::min(nearest, (p - q).norm());
            }
            worst = std::max(worst, nearest);
        }
        return worst;
    };
    return std::max(one_sided(a, b), one_sided(b, a));
}

double sigma_n(int n) {
    if (n < 1) {
        throw std::invalid_argument("sigma_n: n must be >= 1");
    }
    return n * std::pow(kPi, n / 2.0) / std::tgamma(n / 2.0 + 1.0);
}

namespace {

// Integrand power k = n - 2 stays tiny, so plain recursion depth is bounded.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double fa, double fm, double fb, double whole, double tol, int depth) {
    double m = 0.5 * (a + b);
    double lm = 0.5 * (a + m);
    double rm = 0.5 * (m + b);
    double flm = f(lm);
    double frm = f(rm);
    double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol) {
        return left + right + delta / 15.0;
    }
    return adaptive_simpson(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           adaptive_simpson(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

double integrate_sin_pow(int k, double upper) {
    auto f = [k](double t) { return std::pow(std::sin(t), k); };
    if (upper <= 0.0) {
        return 0.0;
    }
    // For very small angles sin^k integrates to upper^{k+1}/(k+1) with tiny
    // corrections; the series keeps full relative accuracy where a fixed
    // absolute quadrature tolerance would return garbage (or plain zero).
    if (upper < 1e-3) {
        double lead = std::pow(upper, k + 1) / (k + 1);
        double u2 = upper * upper;
        double c1 = -static_cast<double>(k) / (6.0 * (k + 3));
        double c2 = (k / 120.0 + k * (k - 1) / 72.0) / (k + 5);
        return lead * (1.0 + c1 * u2 * (k + 1) + c2 * u2 * u2 * (k + 1));
    }
    double fa = f(0.0);
    double fb = f(upper);
    double fm = f(0.5 * upper);
    double whole = upper / 6.0 * (fa + 4.0 * fm + fb);
    double tol = std::max(1e-12 * std::abs(whole), 1e-300);
    return adaptive_simpson(f, 0.0, upper, fa, fm, fb, whole, tol, 40);
}

} // namespace

double cap_fraction(int n, double chordal_radius) {
    if (n < 2) {
        throw std::invalid_argument("cap_fraction: n must be >= 2");
    }
    if (!(chordal_radius > 0.0) || !(chordal_radius <= 2.0)) {
        throw std::invalid_argument("cap_fraction: chordal radius must be in (0, 2]");
    }
    int k = n - 2;
    double phi = 2.0 * std::asin(0.5 * chordal_radius);
    double numerator = integrate_sin_pow(k, phi);
    // Wallis closed form for the full integral over [0, pi].
    double denominator = std::sqrt(kPi) * std::tgamma((k + 1) / 2.0) / std::tgamma(k / 2.0 + 1.0);
    return std::min(1.0, numerator / denominator);
}

} // namespace selfcontract
