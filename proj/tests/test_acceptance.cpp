// Acceptance gate for the toolkit. Each criterion prints exactly one line,
// [PASS] or [FAIL] plus a short detail, and the process exits nonzero when
// any criterion fails. Tolerances are pinned next to the checks they guard.

#include "selfcontract/curves.hpp"
#include "selfcontract/foliation.hpp"
#include "selfcontract/geometry.hpp"
#include "selfcontract/instances.hpp"
#include "selfcontract/prox.hpp"
#include "selfcontract/random.hpp"
#include "selfcontract/sphere_lemmas.hpp"

#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

using namespace selfcontract;

namespace {

int g_failures = 0;

void report(const std::string& name, bool ok, const std::string& detail) {
    std::printf("[%s] %s%s%s\n", ok ? "PASS" : "FAIL", name.c_str(),
                detail.empty() ? "" : ": ", detail.c_str());
    if (!ok) {
        ++g_failures;
    }
}

void run(const std::string& name, const std::function<std::pair<bool, std::string>()>& body) {
    try {
        auto [ok, detail] = body();
        report(name, ok, detail);
    } catch (const std::exception& e) {
        report(name, false, std::string("exception: ") + e.what());
    }
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

Vec scalar(double x) {
    Vec v(1);
    v[0] = x;
    return v;
}

// The corpus used by several criteria: seeds 0..99 of the canonical trace
// generator (random strongly convex quadratics, dims cycling 2/3/5).
std::vector<ProxTrace> corpus() {
    std::vector<ProxTrace> traces;
    traces.reserve(100);
    for (std::uint64_t s = 0; s < 100; ++s) {
        traces.push_back(corpus_prox_trace(s));
    }
    return traces;
}

// Golden-section minimizer of f(s) + (s-x)^2/(2t) over a safe 1-D bracket.
double golden_prox(const ConvexFunction& f, double x, double t) {
    auto obj = [&](double s) {
        return f.value(scalar(s)) + (s - x) * (s - x) / (2.0 * t);
    };
    double slope = std::abs(f.subgradient(scalar(x))[0]);
    double radius = t * (slope + 2.0) + 1.0;
    double a = x - radius;
    double b = x + radius;
    const double inv_phi = 0.6180339887498949;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = obj(c);
    double fd = obj(d);
    while (b - a > 1e-10) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = obj(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = obj(d);
        }
    }
    return 0.5 * (a + b);
}

// Unit vectors inside a 45 degree cap around a random center. Pairwise
// angles stay at or below 90 degrees, so all pairwise inner products are
// nonnegative and the hemisphere hypothesis is met with room to spare.
std::vector<UnitVector> cap_family(Rng& rng, int n, int count) {
    Vec center(n);
    double norm = 0.0;
    do {
        for (int d = 0; d < n; ++d) {
            center[d] = rng.gaussian();
        }
        norm = center.norm();
    } while (norm < 1e-9);
    center /= norm;

    std::vector<UnitVector> out;
    out.reserve(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) {
        Vec w(n);
        double wnorm = 0.0;
        do {
            for (int d = 0; d < n; ++d) {
                w[d] = rng.gaussian();
            }
            w -= w.dot(center) * center;
            wnorm = w.norm();
        } while (wnorm < 1e-9);
        w /= wnorm;
        double theta = rng.uniform01() * 0.25 * 3.14159265358979323846;
        out.push_back(UnitVector::normalize(std::cos(theta) * center + std::sin(theta) * w));
    }
    return out;
}

std::pair<bool, std::string> a1_noncritical_limit() {
    const double limit_tol = 1e-6;
    ConvexFunction f = ConvexFunction::paper_piecewise();
    std::vector<double> steps(60);
    for (int i = 0; i < 60; ++i) {
        steps[static_cast<std::size_t>(i)] = std::ldexp(1.0, -(i + 1));
    }
    ProxTrace trace = run_prox(f, scalar(2.0), ProxSchedule::explicit_steps(steps), 60);
    double final_x = trace.iterates.back()[0];
    double grad_norm = f.min_norm_subgradient(trace.iterates.back()).norm();
    bool ok = std::abs(final_x - 1.0) <= limit_tol && std::abs(grad_norm - 1.0) <= 1e-12;
    return {ok, "limit " + fmt(final_x) + ", |subgrad| " + fmt(grad_norm)};
}

std::pair<bool, std::string> a2_corpus_contraction(const std::vector<ProxTrace>& traces) {
    const double dist_tol = 1e-9;
    int bad = 0;
    for (const ProxTrace& trace : traces) {
        if (!is_self_contracted(trace_to_curve(trace)).holds) {
            ++bad;
            continue;
        }
        const Vec& last = trace.iterates.back();
        double prev = std::numeric_limits<double>::infinity();
        for (const Vec& x : trace.iterates) {
            double d = (x - last).norm();
            if (d > prev + dist_tol) {
                ++bad;
                break;
            }
            prev = d;
        }
    }
    return {bad == 0, std::to_string(traces.size() - static_cast<std::size_t>(bad)) +
                          "/" + std::to_string(traces.size()) + " traces contract"};
}

std::pair<bool, std::string> a3_length_bound(const std::vector<ProxTrace>& traces) {
    SphereSampler sampler(42, 100000);
    int bad = 0;
    double max_ratio = 0.0;
    for (const ProxTrace& trace : traces) {
        LengthBoundReport rep = verify_length_bound(trace_to_curve(trace), sampler);
        if (!rep.holds) {
            ++bad;
        }
        if (std::isfinite(rep.ratio)) {
            max_ratio = std::max(max_ratio, rep.ratio);
        }
    }
    return {bad == 0, "max length/width ratio " + fmt(max_ratio)};
}

std::pair<bool, std::string> a4_family_counting() {
    int bad = 0;
    std::size_t largest = 0;
    for (int n = 2; n <= 5; ++n) {
        double cap = std::pow(3.0, n);
        for (std::uint64_t s = 0; s < 1000; ++s) {
            int count = 5 + static_cast<int>(s % 36);
            SphereSampler sampler(1000 * static_cast<std::uint64_t>(n) + s, count);
            SaturatedFamily family = greedy_saturated_family(sampler.sample(n));
            largest = std::max(largest, family.vectors.size());
            if (static_cast<double>(family.vectors.size()) > cap ||
                family.max_pairwise_dot > 0.5 + 1e-12) {
                ++bad;
            }
        }
    }
    return {bad == 0, "largest family " + std::to_string(largest)};
}

std::pair<bool, std::string> a5_hemisphere_direction() {
    const double slack = 1e-12;
    int bad = 0;
    double worst_margin = std::numeric_limits<double>::infinity();
    for (int n = 2; n <= 4; ++n) {
        BoundConstants bc = bound_constants(n);
        double norm_cap = std::pow(3.0, 2 * n);
        for (std::uint64_t s = 0; s < 500; ++s) {
            Rng rng(s * 131 + static_cast<std::uint64_t>(n));
            std::vector<UnitVector> sigma = cap_family(rng, n, 1 + static_cast<int>(s % 10));
            HemisphereResult res = hemisphere_direction(sigma);
            double min_dot = std::numeric_limits<double>::infinity();
            for (const UnitVector& x : sigma) {
                min_dot = std::min(min_dot, res.direction.dot(x.coords()));
            }
            worst_margin = std::min(worst_margin, min_dot - bc.zeta_bound);
            if (min_dot < bc.zeta_bound - slack || res.family_norm_sq > norm_cap) {
                ++bad;
            }
        }
    }
    return {bad == 0, "worst margin over the bound " + fmt(worst_margin)};
}

std::pair<bool, std::string> a6_reversal_equivalence(const std::vector<ProxTrace>& traces) {
    int bad = 0;
    int total = 0;
    auto check = [&](const DiscreteCurve& curve) {
        ++total;
        bool sc = is_self_contracted(curve).holds;
        bool se_rev = is_self_expanded(reverse(curve)).holds;
        if (sc != se_rev) {
            ++bad;
        }
    };
    for (const ProxTrace& trace : traces) {
        check(trace_to_curve(trace));
    }
    for (std::uint64_t s = 0; s < 100; ++s) {
        check(random_walk_curve(2000 + s, 2 + static_cast<int>(s % 3), 12));
    }
    return {bad == 0, std::to_string(total - bad) + "/" + std::to_string(total) + " agree"};
}

std::pair<bool, std::string> a7_width_calibration() {
    const double rel_tol = 0.01;
    bool ok = true;
    double worst = 0.0;
    for (std::uint64_t seed : {42ull, 43ull}) {
        SphereSampler sampler(seed, 100000);
        for (int n : {2, 3}) {
            MeanWidthEstimate ball = mean_width(ConvexBody::ball(Vec::Zero(n), 1.0), sampler);
            double rel = std::abs(ball.value - 2.0) / 2.0;
            worst = std::max(worst, rel);
            ok = ok && rel <= rel_tol;
        }
        std::vector<Vec> seg = {Vec::Zero(2), Vec::Zero(2)};
        seg[1][0] = 1.0;
        MeanWidthEstimate w = mean_width(ConvexBody::point_cloud(seg), sampler);
        double target = 2.0 / 3.14159265358979323846;
        double rel = std::abs(w.value - target) / target;
        worst = std::max(worst, rel);
        ok = ok && rel <= rel_tol;
    }
    return {ok, "worst relative error " + fmt(worst)};
}

std::pair<bool, std::string> a8_width_monotonicity() {
    SphereSampler sampler(42, 20000);
    double eps = bound_constants(2).epsilon; // 1/C_2
    int bad = 0;
    for (int k = 0; k < 20; ++k) {
        // seeds divisible by 3 give two-dimensional corpus traces
        ProxTrace trace = corpus_prox_trace(static_cast<std::uint64_t>(3 * k));
        DiscreteCurve curve = trace_to_curve(trace);
        std::vector<MeanWidthEstimate> profile = tail_width_estimates(curve, sampler);
        for (std::size_t i = 0; i + 1 < profile.size(); ++i) {
            double decrease = profile[i].value - profile[i + 1].value;
            double step = (curve[i + 1] - curve[i]).norm();
            double allowance = 3.0 * (profile[i].standard_error + profile[i + 1].standard_error);
            if (decrease < eps * step - allowance) {
                ++bad;
                break;
            }
        }
    }
    return {bad == 0, std::to_string(20 - bad) + "/20 profiles decrease"};
}

std::pair<bool, std::string> a9_flow_approximation() {
    const double hausdorff_slack = 1e-6;
    Mat a = Mat::Zero(2, 2);
    a(0, 0) = 1.0;
    a(1, 1) = 4.0;
    ConvexFunction f = ConvexFunction::quadratic(a, Vec::Zero(2));
    Vec x0(2);
    x0 << 1.0, 1.0;
    DiscreteCurve flow = gradient_flow_curve(f, x0, 1e-3, 6.0);
    DiscreteCurve sampled = arc_length_reparam(flow, 1e-3);
    bool ok = true;
    std::string detail;
    for (double delta : {0.02, 0.05, 0.1}) {
        ApproximationResult res = polygonal_approximation(sampled, delta);
        bool sc = is_self_contracted(res.polyline).holds;
        bool close = res.hausdorff_achieved <= delta + hausdorff_slack;
        ok = ok && sc && close;
        if (!detail.empty()) {
            detail += ", ";
        }
        detail += "delta " + fmt(delta) + " -> " + std::to_string(res.polyline.size()) +
                  " vertices, d_H " + fmt(res.hausdorff_achieved);
    }
    return {ok, detail};
}

std::pair<bool, std::string> a10_prox_oracle() {
    const double agree_tol = 1e-6;
    Mat a = Mat::Zero(1, 1);
    a(0, 0) = 1.7;
    Vec b = scalar(-0.4);
    std::vector<std::pair<Vec, double>> pieces = {
        {scalar(1.0), 0.0}, {scalar(-1.0), 0.0}, {scalar(0.3), -0.2}};
    std::vector<ConvexFunction> catalog;
    catalog.push_back(ConvexFunction::paper_piecewise());
    catalog.push_back(ConvexFunction::quadratic(a, b, 0.1));
    catalog.push_back(ConvexFunction::norm_scaled(1, 1.3));
    catalog.push_back(ConvexFunction::max_affine(pieces));

    Rng rng(424242);
    int bad = 0;
    double worst = 0.0;
    for (int trial = 0; trial < 250; ++trial) {
        for (const ConvexFunction& f : catalog) {
            double x = 8.0 * rng.uniform01() - 4.0;
            double t = rng.uniform_open_closed(0.0, 1.0);
            double mine = prox_step(f, scalar(x), t).point[0];
            double gold = golden_prox(f, x, t);
            double err = std::abs(mine - gold);
            worst = std::max(worst, err);
            if (err > agree_tol) {
                ++bad;
            }
        }
    }
    return {bad == 0, "1000 pairs, worst gap " + fmt(worst)};
}

std::pair<bool, std::string> a11_reparameterization(const std::vector<ProxTrace>& traces) {
    const double lipschitz_slack = 1e-12;
    const double length_tol = 1e-9;
    int bad = 0;
    double worst_ratio = 0.0;
    for (const ProxTrace& trace : traces) {
        DiscreteCurve curve = trace_to_curve(trace);
        double len = length(curve);
        DiscreteCurve re = arc_length_reparam(curve, std::max(len / 100.0, 1e-9));
        if (!re.params()) {
            ++bad;
            continue;
        }
        const std::vector<double>& ts = *re.params();
        double ratio = 0.0;
        for (std::size_t i = 0; i + 1 < re.size(); ++i) {
            double dt = ts[i + 1] - ts[i];
            ratio = std::max(ratio, (re[i + 1] - re[i]).norm() / dt);
        }
        worst_ratio = std::max(worst_ratio, ratio);
        bool ok = ratio <= 1.0 + lipschitz_slack &&
                  std::abs(length(re) - len) <= length_tol &&
                  is_self_contracted(re).holds;
        if (!ok) {
            ++bad;
        }
    }
    return {bad == 0, "max Lipschitz ratio " + fmt(worst_ratio)};
}

std::pair<bool, std::string> a12_convergence_bound(const std::vector<ProxTrace>& traces) {
    int bad = 0;
    for (const ProxTrace& trace : traces) {
        ConvergenceBoundReport rep = verify_convergence_bound(trace, trace.dim);
        if (!(rep.holds && rep.distance_monotone && !rep.inconclusive)) {
            ++bad;
        }
    }
    return {bad == 0, std::to_string(traces.size() - static_cast<std::size_t>(bad)) + "/" +
                          std::to_string(traces.size()) + " traces within bound"};
}

} // namespace

int main() {
    std::vector<ProxTrace> traces = corpus();

    run("noncritical limit of the built-in piecewise example",
        [] { return a1_noncritical_limit(); });
    run("prox trace corpus is self-contracted with monotone distances",
        [&] { return a2_corpus_contraction(traces); });
    run("length bounded by C_n times mean width on the corpus",
        [&] { return a3_length_bound(traces); });
    run("greedy saturated families stay within the 3^n cap",
        [] { return a4_family_counting(); });
    run("hemisphere direction clears its inner product bound",
        [] { return a5_hemisphere_direction(); });
    run("self-contraction equals self-expansion of the reversal",
        [&] { return a6_reversal_equivalence(traces); });
    run("mean width calibration on balls and a segment",
        [] { return a7_width_calibration(); });
    run("tail widths decrease at the guaranteed rate",
        [] { return a8_width_monotonicity(); });
    run("polygonal approximation of the anisotropic flow",
        [] { return a9_flow_approximation(); });
    run("proximal steps match the golden-section oracle",
        [] { return a10_prox_oracle(); });
    run("arc-length reparameterization is tight and contraction-safe",
        [&] { return a11_reparameterization(traces); });
    run("step sums obey the convergence bound",
        [&] { return a12_convergence_bound(traces); });

    return g_failures == 0 ? 0 : 1;
}
