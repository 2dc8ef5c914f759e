#pragma once

#include "selfcontract/curves.hpp"
#include "selfcontract/geometry.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

namespace selfcontract {

using Mat = Eigen::MatrixXd;

// Convex objective with a value oracle and a subgradient selector. The
// catalog entries carry extra structure the solvers exploit: a closed-form
// proximal map where one exists, a gradient Lipschitz bound where the
// function is smooth, and a min-norm subgradient where the subdifferential
// is known in full.
class ConvexFunction {
public:
    enum class Tag { quadratic, paper_piecewise, norm_scaled, max_affine, custom };

    using ValueFn = std::function<double(const Vec&)>;
    using SubgradFn = std::function<Vec(const Vec&)>;
    using ProxFn = std::function<Vec(const Vec&, double)>;

    struct CustomOptions {
        std::optional<ProxFn> exact_prox;
        std::optional<double> smoothness_bound;
        std::optional<SubgradFn> min_norm_subgradient;
    };

    // f(x) = 0.5 x^T A x + b^T x + c with A symmetric positive semidefinite.
    static ConvexFunction quadratic(Mat a, Vec b, double c = 0.0);

    // One-dimensional piecewise function
    //   f(x) = x^2        for |x| <= 1/2
    //   f(x) = |x| - 1/4  for |x| >= 1/2,
    // C^1 and convex; its proximal iterates from x0 = 2 with steps 2^{-(i+1)}
    // walk down the linear branch to the noncritical limit 1.
    static ConvexFunction paper_piecewise();

    // f(x) = lambda * |x|_2.
    static ConvexFunction norm_scaled(int dim, double lambda);

    // f(x) = max_i (<a_i, x> + b_i); pieces supplied as (a_i, b_i).
    static ConvexFunction max_affine(std::vector<std::pair<Vec, double>> pieces);

    static ConvexFunction custom(int dim, ValueFn value, SubgradFn subgradient,
                                 CustomOptions options = {});

    Tag tag() const { return tag_; }
    int dim() const { return dim_; }

    double value(const Vec& x) const;
    Vec subgradient(const Vec& x) const;

    // Element of minimal Euclidean norm in the subdifferential at x, where
    // the catalog knows it; customs fall back to their selector unless they
    // declared one. The norm of this vector is the criticality measure used
    // to label limits noncritical.
    Vec min_norm_subgradient(const Vec& x) const;

    bool has_exact_prox() const;
    std::optional<double> smoothness_bound() const { return smoothness_; }

    // True when the subgradient selector is an honest gradient (smooth f).
    bool has_gradient() const;

private:
    ConvexFunction() = default;

    struct QuadraticData {
        Mat a;
        Vec b;
        double c;
    };
    struct MaxAffineData {
        Mat a;  // one piece per row
        Vec b;
    };

    Tag tag_ = Tag::custom;
    int dim_ = 0;
    ValueFn value_;
    SubgradFn subgrad_;
    std::optional<ProxFn> exact_prox_;
    std::optional<double> smoothness_;
    std::optional<SubgradFn> min_norm_;
    std::optional<QuadraticData> quad_;
    std::optional<MaxAffineData> maxaff_;

    friend struct ProxSolver;
};

struct ProxResult {
    Vec point;
    // Upper bound on the distance to the true proximal point: 0 for closed
    // forms, the final bracket width for 1-D bisection, t * |grad| for the
    // smooth descent route, and the final pattern radius (heuristic) for the
    // derivative-free fallback.
    double residual = 0.0;
};

// Proximal point argmin_s f(s) + |s - x|^2 / (2 lambda) for any lambda > 0.
// Set allow_exact = false to force the iterative route (used to cross-check
// the closed forms). Throws if no solver route applies or the iteration
// budget runs out before reaching tol.
ProxResult prox_point(const ConvexFunction& f, const Vec& x, double lambda, double tol,
                      bool allow_exact = true);

// Single algorithm step: same as prox_point but enforcing the step range
// t in (0, 1] that the trace analysis relies on. No clamping: out-of-range
// steps are rejected.
ProxResult prox_step(const ConvexFunction& f, const Vec& x, double t, double tol = 1e-10,
                     bool allow_exact = true);

// Step-size schedule with every step required to lie in (0, 1].
class ProxSchedule {
public:
    static ProxSchedule constant(double t);
    // t_i = first * ratio^i; needs first in (0, 1] and ratio in (0, 1].
    static ProxSchedule geometric(double first, double ratio);
    // t_i = 1 / (i + 1).
    static ProxSchedule harmonic();
    static ProxSchedule explicit_steps(std::vector<double> steps);

    double step(int i) const;
    // Number of steps available; nullopt when unbounded.
    std::optional<int> limit() const;

private:
    ProxSchedule() = default;
    enum class Kind { constant, geometric, harmonic, explicit_list };
    Kind kind_ = Kind::harmonic;
    double first_ = 1.0;
    double ratio_ = 1.0;
    std::vector<double> list_;
};

enum class Termination { max_iter, step_below_tol, fixpoint };

struct ProxTrace {
    int dim = 0;
    std::vector<Vec> iterates;     // x_0 .. x_N
    std::vector<double> values;    // f(x_i), same length as iterates
    std::vector<double> steps;     // t_i used, one per transition
    std::vector<double> residuals; // solver residual per transition
    Termination terminated_by = Termination::max_iter;
};

// Runs the proximal iteration from x0. Stops at the iteration budget, when a
// step lands exactly on the previous iterate (fixpoint), or when a nonzero
// step gets shorter than stop_step.
ProxTrace run_prox(const ConvexFunction& f, const Vec& x0, const ProxSchedule& schedule,
                   int max_iter, double stop_step = 0.0, double solver_tol = 1e-10);

// Curve through the iterates, consecutive duplicates collapsed.
DiscreteCurve trace_to_curve(const ProxTrace& trace);

struct ProjectionCheckResult {
    bool holds = true;
    std::optional<Witness> witness; // (i, i+1, sample index)
    std::size_t samples_used = 0;
    std::size_t steps_skipped = 0; // steps where no sublevel sample was found
};

// Randomized check that each iterate is the closest point of the recorded
// sublevel set: draws points y with f(y) <= f(x_{i+1}) near the step and
// verifies |x_{i+1} - x_i| <= |y - x_i| + slack, slack covering the solver
// residual. Steps where sampling finds no sublevel point are counted, not
// failed.
ProjectionCheckResult verify_projection_property(const ProxTrace& trace, const ConvexFunction& f,
                                                 std::uint64_t seed, int samples_per_step,
                                                 const ToleranceConfig& tol = {});

struct ConvergenceBoundReport {
    double total_step_sum = 0.0;
    double displacement = 0.0; // |x_0 - x_last|
    double bound = 0.0;        // 2 c_n * displacement
    double c_n = 0.0;
    bool holds = false;
    bool distance_monotone = false; // |x_i - x_last| <= |x_0 - x_last| for all i
    bool inconclusive = false;      // loop-shaped trace: zero displacement, positive length
};

// Checks the trace against total step sum <= 2 c_n |x_0 - x_last|, treating
// the last iterate as the limit.
ConvergenceBoundReport verify_convergence_bound(const ProxTrace& trace, int n,
                                                const ToleranceConfig& tol = {});

// Sampled sanity check used by the test suite: midpoint convexity and the
// subgradient inequality on random pairs in a box around the origin.
bool validate_convexity(const ConvexFunction& f, std::uint64_t seed, int trials, double radius);

} // namespace selfcontract
