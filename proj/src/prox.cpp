#include "selfcontract/prox.hpp"
#include "selfcontract/random.hpp"
#include "selfcontract/sphere_lemmas.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace selfcontract {

namespace {

void require_dim(const ConvexFunction& f, const Vec& x, const char* what) {
    if (static_cast<int>(x.size()) != f.dim()) {
        throw std::invalid_argument(std::string(what) + ": point dimension mismatch");
    }
    if (!x.allFinite()) {
        throw std::invalid_argument(std::string(what) + ": non-finite point");
    }
}

} // namespace

ConvexFunction ConvexFunction::quadratic(Mat a, Vec b, double c) {
    if (a.rows() < 1 || a.rows() != a.cols()) {
        throw std::invalid_argument("ConvexFunction::quadratic: A must be square and nonempty");
    }
    if (b.size() != a.rows()) {
        throw std::invalid_argument("ConvexFunction::quadratic: b size mismatch");
    }
    if (!a.allFinite() || !b.allFinite() || !std::isfinite(c)) {
        throw std::invalid_argument("ConvexFunction::quadratic: non-finite data");
    }
    if (!a.isApprox(a.transpose(), 1e-10)) {
        throw std::invalid_argument("ConvexFunction::quadratic: A must be symmetric");
    }
    Eigen::SelfAdjointEigenSolver<Mat> eig(a);
    double min_eig = eig.eigenvalues().minCoeff();
    double max_eig = eig.eigenvalues().maxCoeff();
    if (min_eig < -1e-9 * std::max(1.0, std::abs(max_eig))) {
        throw std::invalid_argument("ConvexFunction::quadratic: A must be positive semidefinite");
    }

    ConvexFunction f;
    f.tag_ = Tag::quadratic;
    f.dim_ = static_cast<int>(a.rows());
    f.quad_ = QuadraticData{a, b, c};
    f.smoothness_ = std::max(0.0, max_eig);
    Mat a_copy = a;
    Vec b_copy = b;
    f.value_ = [a_copy, b_copy, c](const Vec& x) {
        return 0.5 * x.dot(a_copy * x) + b_copy.dot(x) + c;
    };
    f.subgrad_ = [a_copy, b_copy](const Vec& x) -> Vec { return a_copy * x + b_copy; };
    f.exact_prox_ = [a_copy, b_copy](const Vec& x, double t) -> Vec {
        Mat m = Mat::Identity(a_copy.rows(), a_copy.cols()) + t * a_copy;
        return m.ldlt().solve(x - t * b_copy);
    };
    return f;
}

ConvexFunction ConvexFunction::paper_piecewise() {
    ConvexFunction f;
    f.tag_ = Tag::paper_piecewise;
    f.dim_ = 1;
    f.smoothness_ = 2.0;
    f.value_ = [](const Vec& x) {
        double v = x[0];
        return std::abs(v) <= 0.5 ? v * v : std::abs(v) - 0.25;
    };
    f.subgrad_ = [](const Vec& x) -> Vec {
        double v = x[0];
        Vec g(1);
        g[0] = std::abs(v) <= 0.5 ? 2.0 * v : (v > 0.0 ? 1.0 : -1.0);
        return g;
    };
    // Two candidate branches; they agree at the hand-off |x| = t + 1/2, and
    // ties resolve to the quadratic branch.
    f.exact_prox_ = [](const Vec& x, double t) -> Vec {
        double v = x[0];
        double quad = v / (1.0 + 2.0 * t);
        Vec out(1);
        if (std::abs(quad) <= 0.5) {
            out[0] = quad;
        } else {
            out[0] = v > 0.0 ? v - t : v + t;
        }
        return out;
    };
    return f;
}

ConvexFunction ConvexFunction::norm_scaled(int dim, double lambda) {
    if (dim < 1) {
        throw std::invalid_argument("ConvexFunction::norm_scaled: dim must be >= 1");
    }
    if (!(lambda >= 0.0) || !std::isfinite(lambda)) {
        throw std::invalid_argument("ConvexFunction::norm_scaled: lambda must be finite and >= 0");
    }
    ConvexFunction f;
    f.tag_ = Tag::norm_scaled;
    f.dim_ = dim;
    f.value_ = [lambda](const Vec& x) { return lambda * x.norm(); };
    f.subgrad_ = [lambda, dim](const Vec& x) -> Vec {
        double n = x.norm();
        if (n == 0.0) {
            return Vec::Zero(dim); // 0 is in the subdifferential at the kink
        }
        return (lambda / n) * x;
    };
    f.min_norm_ = f.subgrad_; // the zero selector at 0 is already minimal
    f.exact_prox_ = [lambda](const Vec& x, double t) -> Vec {
        double n = x.norm();
        double shrink = n - t * lambda;
        if (shrink <= 0.0) {
            return Vec::Zero(x.size());
        }
        return (shrink / n) * x;
    };
    return f;
}

ConvexFunction ConvexFunction::max_affine(std::vector<std::pair<Vec, double>> pieces) {
    if (pieces.empty()) {
        throw std::invalid_argument("ConvexFunction::max_affine: need at least one piece");
    }
    int dim = static_cast<int>(pieces.front().first.size());
    if (dim < 1) {
        throw std::invalid_argument("ConvexFunction::max_affine: zero-dimensional piece");
    }
    Mat a(pieces.size(), dim);
    Vec b(pieces.size());
    for (std::size_t i = 0; i < pieces.size(); ++i) {
        if (static_cast<int>(pieces[i].first.size()) != dim) {
            throw std::invalid_argument("ConvexFunction::max_affine: inconsistent piece dimensions");
        }
        if (!pieces[i].first.allFinite() || !std::isfinite(pieces[i].second)) {
            throw std::invalid_argument("ConvexFunction::max_affine: non-finite piece");
        }
        a.row(i) = pieces[i].first.transpose();
        b[i] = pieces[i].second;
    }
    ConvexFunction f;
    f.tag_ = Tag::max_affine;
    f.dim_ = dim;
    f.maxaff_ = MaxAffineData{a, b};
    Mat a_copy = a;
    Vec b_copy = b;
    f.value_ = [a_copy, b_copy](const Vec& x) { return (a_copy * x + b_copy).maxCoeff(); };
    f.subgrad_ = [a_copy, b_copy](const Vec& x) -> Vec {
        Eigen::Index best = 0;
        (a_copy * x + b_copy).maxCoeff(&best);
        return a_copy.row(best).transpose();
    };
    return f;
}

ConvexFunction ConvexFunction::custom(int dim, ValueFn value, SubgradFn subgradient,
                                      CustomOptions options) {
    if (dim < 1) {
        throw std::invalid_argument("ConvexFunction::custom: dim must be >= 1");
    }
    if (!value || !subgradient) {
        throw std::invalid_argument("ConvexFunction::custom: value and subgradient are required");
    }
    ConvexFunction f;
    f.tag_ = Tag::custom;
    f.dim_ = dim;
    f.value_ = std::move(value);
    f.subgrad_ = std::move(subgradient);
    f.exact_prox_ = std::move(options.exact_prox);
    f.smoothness_ = options.smoothness_bound;
    f.min_norm_ = std::move(options.min_norm_subgradient);
    return f;
}

double ConvexFunction::value(const Vec& x) const {
    require_dim(*this, x, "ConvexFunction::value");
    double v = value_(x);
    if (!std::isfinite(v)) {
        throw std::runtime_error("ConvexFunction::value: non-finite result");
    }
    return v;
}

Vec ConvexFunction::subgradient(const Vec& x) const {
    require_dim(*this, x, "ConvexFunction::subgradient");
    Vec g = subgrad_(x);
    if (static_cast<int>(g.size()) != dim_ || !g.allFinite()) {
        throw std::runtime_error("ConvexFunction::subgradient: bad selector output");
    }
    return g;
}

bool ConvexFunction::has_exact_prox() const {
    if (tag_ == Tag::max_affine) {
        return maxaff_->a.rows() <= 16;
    }
    return exact_prox_.has_value();
}

bool ConvexFunction::has_gradient() const {
    switch (tag_) {
        case Tag::quadratic:
        case Tag::paper_piecewise:
            return true;
        case Tag::custom:
            return smoothness_.has_value();
        default:
            return false;
    }
}

// ---------------------------------------------------------------------------
// Solvers. ProxSolver is a friend struct so the payloads stay private.
// ---------------------------------------------------------------------------

struct ProxSolver {
    // Maximize lambda^T q - (t/2) lambda^T G lambda over the probability
    // simplex by enumerating support sets. On each face the stationary point
    // of the affine-hull restriction solves a bordered linear system; the
    // optimum's own support produces it exactly, so the best feasible
    // candidate is the exact answer. Sub-faces cover any singular system.
    static Vec simplex_qp_argmax(const Mat& g, const Vec& q, double t) {
        int m = static_cast<int>(q.size());
        if (m > 16) {
            throw std::runtime_error("simplex_qp_argmax: more than 16 pieces unsupported");
        }
        double best_obj = -std::numeric_limits<double>::infinity();
        Vec best = Vec::Zero(m);
        for (std::uint32_t mask = 1; mask < (1u << m); ++mask) {
            int k = 0;
            std::vector<int> support;
            for (int i = 0; i < m; ++i) {
                if (mask & (1u << i)) {
                    support.push_back(i);
                    ++k;
                }
            }
            Mat system(k + 1, k + 1);
            Vec rhs(k + 1);
            for (int r = 0; r < k; ++r) {
                for (int c = 0; c < k; ++c) {
                    system(r, c) = t * g(support[r], support[c]);
                }
                system(r, k) = 1.0;
                system(k, r) = 1.0;
                rhs[r] = q[support[r]];
            }
            system(k, k) = 0.0;
            rhs[k] = 1.0;
            Eigen::FullPivLU<Mat> lu(system);
            Vec sol = lu.solve(rhs);
            if (!sol.allFinite() || (system * sol - rhs).norm() > 1e-8 * (1.0 + rhs.norm())) {
                continue;
            }
            bool feasible = true;
            Vec lambda = Vec::Zero(m);
            double total = 0.0;
            for (int r = 0; r < k; ++r) {
                if (sol[r] < -1e-10) {
                    feasible = false;
                    break;
                }
                lambda[support[r]] = std::max(0.0, sol[r]);
                total += lambda[support[r]];
            }
            if (!feasible || total <= 0.0) {
                continue;
            }
            lambda /= total;
            double obj = lambda.dot(q) - 0.5 * t * lambda.dot(g * lambda);
            if (obj > best_obj) {
                best_obj = obj;
                best = lambda;
            }
        }
        if (!(best_obj > -std::numeric_limits<double>::infinity())) {
            throw std::runtime_error("simplex_qp_argmax: no feasible candidate");
        }
        return best;
    }

    static Vec max_affine_prox(const ConvexFunction& f, const Vec& x, double t) {
        const Mat& a = f.maxaff_->a;
        const Vec& b = f.maxaff_->b;
        Mat gram = a * a.transpose();
        Vec q = a * x + b;
        Vec lambda = simplex_qp_argmax(gram, q, t);
        return x - t * (a.transpose() * lambda);
    }

    static Vec max_affine_min_norm_subgrad(const ConvexFunction& f, const Vec& x) {
        const Mat& a = f.maxaff_->a;
        Vec margins = a * x + f.maxaff_->b;
        double top = margins.maxCoeff();
        std::vector<int> active;
        for (Eigen::Index i = 0; i < margins.size(); ++i) {
            if (margins[i] >= top - 1e-9 * (1.0 + std::abs(top))) {
                active.push_back(static_cast<int>(i));
            }
        }
        Mat rows(active.size(), f.dim_);
        for (std::size_t i = 0; i < active.size(); ++i) {
            rows.row(i) = a.row(active[i]);
        }
        Mat gram = rows * rows.transpose();
        Vec lambda = simplex_qp_argmax(gram, Vec::Zero(active.size()), 1.0);
        return rows.transpose() * lambda;
    }

    static ProxResult bisect_1d(const ConvexFunction& f, const Vec& x, double t, double tol) {
        auto g = [&f](double s) {
            Vec p(1);
            p[0] = s;
            return f.subgradient(p)[0];
        };
        double x0 = x[0];
        double reach = t * (std::abs(g(x0)) + 1.0);
        double lo = x0 - reach;
        double hi = x0 + reach;
        // F(s) = s - x + t g(s) is strictly increasing and changes sign in
        // [lo, hi] by the monotonicity of g.
        auto F = [&](double s) { return s - x0 + t * g(s); };
        for (int it = 0; it < 200 && hi - lo > tol; ++it) {
            double mid = 0.5 * (lo + hi);
            if (F(mid) >= 0.0) {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        Vec out(1);
        out[0] = 0.5 * (lo + hi);
        return ProxResult{out, hi - lo};
    }

    static ProxResult smooth_descent(const ConvexFunction& f, const Vec& x, double t, double tol) {
        double l = *f.smoothness_;
        double eta = 1.0 / (l + 1.0 / t);
        Vec s = x;
        double target = tol / t;
        for (int it = 0; it < 200000; ++it) {
            Vec grad = f.subgradient(s) + (s - x) / t;
            double gn = grad.norm();
            if (gn <= target) {
                return ProxResult{s, t * gn};
            }
            s -= eta * grad;
        }
        Vec grad = f.subgradient(s) + (s - x) / t;
        std::ostringstream msg;
        msg << "prox_point: smooth descent did not reach tolerance; residual "
            << t * grad.norm();
        throw std::runtime_error(msg.str());
    }

    static ProxResult dispatch(const ConvexFunction& f, const Vec& x, double lambda, double tol,
                               bool allow_exact) {
        if (allow_exact && f.has_exact_prox()) {
            if (f.tag() == ConvexFunction::Tag::max_affine) {
                return ProxResult{max_affine_prox(f, x, lambda), 0.0};
            }
            Vec p = (*f.exact_prox_)(x, lambda);
            if (static_cast<int>(p.size()) != f.dim() || !p.allFinite()) {
                throw std::runtime_error("prox_point: exact prox returned bad point");
            }
            return ProxResult{p, 0.0};
        }
        if (f.dim() == 1) {
            return bisect_1d(f, x, lambda, tol);
        }
        if (f.smoothness_bound()) {
            return smooth_descent(f, x, lambda, tol);
        }
        if (f.dim() <= 3) {
            return compass_search(f, x, lambda, tol);
        }
        throw std::runtime_error(
            "prox_point: no solver route (no exact prox, no smoothness bound, dim > 3)");
    }

    // Derivative-free fallback for small dimensions: compass search with a
    // shrinking pattern. The returned residual is the final pattern radius,
    // a heuristic (not certified) distance bound.
    static ProxResult compass_search(const ConvexFunction& f, const Vec& x, double t, double tol) {
        int n = f.dim();
        auto objective = [&](const Vec& s) { return f.value(s) + (s - x).squaredNorm() / (2.0 * t); };
        Vec s = x;
        double fs = objective(s);
        double h = 0.25 * (1.0 + x.norm());
        long evals = 0;
        const long budget = 2000000;
        while (h > 0.5 * tol) {
            bool improved = false;
            for (int i = 0; i < n; ++i) {
                for (double sign : {1.0, -1.0}) {
                    Vec cand = s;
                    cand[i] += sign * h;
                    double fc = objective(cand);
                    if (++evals > budget) {
                        throw std::runtime_error(
                            "prox_point: derivative-free search exhausted its budget");
                    }
                    if (fc < fs) {
                        s = cand;
                        fs = fc;
                        improved = true;
                    }
                }
            }
            if (!improved) {
                h *= 0.5;
            }
        }
        return ProxResult{s, h * std::sqrt(static_cast<double>(n))};
    }
};

ProxResult prox_point(const ConvexFunction& f, const Vec& x, double lambda, double tol,
                      bool allow_exact) {
    require_dim(f, x, "prox_point");
    if (!(lambda > 0.0) || !std::isfinite(lambda)) {
        throw std::invalid_argument("prox_point: lambda must be finite and > 0");
    }
    if (!(tol > 0.0)) {
        throw std::invalid_argument("prox_point: tol must be > 0");
    }
    return ProxSolver::dispatch(f, x, lambda, tol, allow_exact);
}

ProxResult prox_step(const ConvexFunction& f, const Vec& x, double t, double tol,
                     bool allow_exact) {
    if (!(t > 0.0) || !(t <= 1.0)) {
        throw std::invalid_argument("prox_step: step must lie in (0, 1]");
    }
    return prox_point(f, x, t, tol, allow_exact);
}

ProxSchedule ProxSchedule::constant(double t) {
    if (!(t > 0.0) || !(t <= 1.0)) {
        throw std::invalid_argument("ProxSchedule::constant: step must lie in (0, 1]");
    }
    ProxSchedule s;
    s.kind_ = Kind::constant;
    s.first_ = t;
    return s;
}

ProxSchedule ProxSchedule::geometric(double first, double ratio) {
    if (!(first > 0.0) || !(first <= 1.0)) {
        throw std::invalid_argument("ProxSchedule::geometric: first step must lie in (0, 1]");
    }
    if (!(ratio > 0.0) || !(ratio <= 1.0)) {
        throw std::invalid_argument("ProxSchedule::geometric: ratio must lie in (0, 1]");
    }
    ProxSchedule s;
    s.kind_ = Kind::geometric;
    s.first_ = first;
    s.ratio_ = ratio;
    return s;
}

ProxSchedule ProxSchedule::harmonic() {
    ProxSchedule s;
    s.kind_ = Kind::harmonic;
    return s;
}

ProxSchedule ProxSchedule::explicit_steps(std::vector<double> steps) {
    if (steps.empty()) {
        throw std::invalid_argument("ProxSchedule::explicit_steps: empty schedule");
    }
    for (double t : steps) {
        if (!(t > 0.0) || !(t <= 1.0)) {
            throw std::invalid_argument("ProxSchedule::explicit_steps: step outside (0, 1]");
        }
    }
    ProxSchedule s;
    s.kind_ = Kind::explicit_list;
    s.list_ = std::move(steps);
    return s;
}

double ProxSchedule::step(int i) const {
    if (i < 0) {
        throw std::invalid_argument("ProxSchedule::step: negative index");
    }
    switch (kind_) {
        case Kind::constant:
            return first_;
        case Kind::geometric:
            return first_ * std::pow(ratio_, i);
        case Kind::harmonic:
            return 1.0 / (i + 1);
        case Kind::explicit_list:
            if (i >= static_cast<int>(list_.size())) {
                throw std::invalid_argument("ProxSchedule::step: index past explicit schedule");
            }
            return list_[static_cast<std::size_t>(i)];
    }
    return first_;
}

std::optional<int> ProxSchedule::limit() const {
    if (kind_ == Kind::explicit_list) {
        return static_cast<int>(list_.size());
    }
    return std::nullopt;
}

ProxTrace run_prox(const ConvexFunction& f, const Vec& x0, const ProxSchedule& schedule,
                   int max_iter, double stop_step, double solver_tol) {
    require_dim(f, x0, "run_prox");
    if (max_iter < 0) {
        throw std::invalid_argument("run_prox: max_iter must be >= 0");
    }
    ProxTrace trace;
    trace.dim = f.dim();
    trace.iterates.push_back(x0);
    trace.values.push_back(f.value(x0));
    int budget = max_iter;
    if (schedule.limit()) {
        budget = std::min(budget, *schedule.limit());
    }
    trace.terminated_by = Termination::max_iter;
    for (int i = 0; i < budget; ++i) {
        double t = schedule.step(i);
        ProxResult step = prox_step(f, trace.iterates.back(), t, solver_tol);
        double moved = (step.point - trace.iterates.back()).norm();
        trace.iterates.push_back(step.point);
        trace.values.push_back(f.value(step.point));
        trace.steps.push_back(t);
        trace.residuals.push_back(step.residual);
        if (moved == 0.0) {
            trace.terminated_by = Termination::fixpoint;
            break;
        }
        if (stop_step > 0.0 && moved < stop_step) {
            trace.terminated_by = Termination::step_below_tol;
            break;
        }
    }
    return trace;
}

DiscreteCurve trace_to_curve(const ProxTrace& trace) {
    if (trace.iterates.empty()) {
        throw std::invalid_argument("trace_to_curve: empty trace");
    }
    std::vector<Vec> pts;
    pts.reserve(trace.iterates.size());
    for (const Vec& p : trace.iterates) {
        if (pts.empty() || (p - pts.back()).norm() > 0.0) {
            pts.push_back(p);
        }
    }
    return DiscreteCurve(std::move(pts));
}

ProjectionCheckResult verify_projection_property(const ProxTrace& trace, const ConvexFunction& f,
                                                 std::uint64_t seed, int samples_per_step,
                                                 const ToleranceConfig& tol) {
    if (samples_per_step < 1) {
        throw std::invalid_argument("verify_projection_property: need at least 1 sample per step");
    }
    ProjectionCheckResult result;
    Rng rng(seed);
    int dim = trace.dim;
    for (std::size_t i = 0; i + 1 < trace.iterates.size(); ++i) {
        const Vec& from = trace.iterates[i];
        const Vec& to = trace.iterates[i + 1];
        double dist = (to - from).norm();
        if (dist == 0.0) {
            continue; // projection onto a set containing the point
        }
        double level = trace.values[i + 1];
        double slack = tol.abs_tol + 2.0 * trace.residuals[i];
        // Radii scan from the step scale downwards; near-minimizer sublevel
        // sets can be tiny, so small radii matter.
        int found = 0;
        for (int s = 0; s < samples_per_step; ++s) {
            double radius = dist * std::pow(0.5, s % 6) * (0.5 + rng.uniform01());
            Vec y(dim);
            for (int d = 0; d < dim; ++d) {
                y[d] = rng.gaussian();
            }
            y = to + radius * y;
            if (f.value(y) > level) {
                continue;
            }
            ++found;
            ++result.samples_used;
            if ((y - from).norm() < dist - slack) {
                result.holds = false;
                result.witness = Witness{i, i + 1, static_cast<std::size_t>(s),
                                         dist - (y - from).norm()};
                return result;
            }
        }
        if (found == 0) {
            ++result.steps_skipped;
        }
    }
    return result;
}

ConvergenceBoundReport verify_convergence_bound(const ProxTrace& trace, int n,
                                                const ToleranceConfig& tol) {
    if (trace.iterates.size() < 1) {
        throw std::invalid_argument("verify_convergence_bound: empty trace");
    }
    ConvergenceBoundReport report;
    report.c_n = bound_constants(n).c_n;
    const Vec& last = trace.iterates.back();
    const Vec& first = trace.iterates.front();
    report.displacement = (first - last).norm();
    double total = 0.0;
    bool monotone = true;
    for (std::size_t i = 0; i + 1 < trace.iterates.size(); ++i) {
        total += (trace.iterates[i + 1] - trace.iterates[i]).norm();
        if ((trace.iterates[i] - last).norm() > report.displacement + tol.abs_tol) {
            monotone = false;
        }
    }
    report.total_step_sum = total;
    report.bound = 2.0 * report.c_n * report.displacement;
    report.distance_monotone = monotone;
    report.inconclusive = report.displacement <= tol.abs_tol && total > tol.abs_tol;
    report.holds = report.total_step_sum <= report.bound + tol.abs_tol;
    return report;
}

bool validate_convexity(const ConvexFunction& f, std::uint64_t seed, int trials, double radius) {
    Rng rng(seed);
    int dim = f.dim();
    auto random_point = [&]() {
        Vec p(dim);
        for (int d = 0; d < dim; ++d) {
            p[d] = radius * (2.0 * rng.uniform01() - 1.0);
        }
        return p;
    };
    for (int t = 0; t < trials; ++t) {
        Vec x = random_point();
        Vec y = random_point();
        double mid = f.value(0.5 * (x + y));
        if (mid > 0.5 * f.value(x) + 0.5 * f.value(y) + 1e-9) {
            return false;
        }
        Vec g = f.subgradient(x);
        if (f.value(y) < f.value(x) + g.dot(y - x) - 1e-9) {
            return false;
        }
    }
    return true;
}

Vec ConvexFunction::min_norm_subgradient(const Vec& x) const {
    require_dim(*this, x, "ConvexFunction::min_norm_subgradient");
    if (min_norm_) {
        return (*min_norm_)(x);
    }
    if (tag_ == Tag::max_affine) {
        return ProxSolver::max_affine_min_norm_subgrad(*this, x);
    }
    // Smooth entries: the subdifferential is the singleton gradient.
    return subgradient(x);
}

} // namespace selfcontract
