// Command line surface for the selfcontract library. Exit codes: 0 when the
// inspected property holds, 1 when it is violated (a witness is printed),
// 2 on malformed input or usage errors.

#include "selfcontract/curves.hpp"
#include "selfcontract/foliation.hpp"
#include "selfcontract/geometry.hpp"
#include "selfcontract/instances.hpp"
#include "selfcontract/io.hpp"
#include "selfcontract/prox.hpp"
#include "selfcontract/random.hpp"
#include "selfcontract/sphere_lemmas.hpp"

#include "CLI11.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace sc = selfcontract;

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

std::string fmt_point(const sc::Vec& p) {
    std::string out = "(";
    for (int d = 0; d < p.size(); ++d) {
        if (d > 0) out += ", ";
        out += fmt(p[d]);
    }
    out += ")";
    return out;
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep)) {
        out.push_back(item);
    }
    return out;
}

double parse_double(const std::string& s, const std::string& what) {
    std::size_t pos = 0;
    double v;
    try {
        v = std::stod(s, &pos);
    } catch (const std::exception&) {
        throw std::invalid_argument(what + ": cannot parse '" + s + "' as a number");
    }
    if (pos != s.size() || !std::isfinite(v)) {
        throw std::invalid_argument(what + ": bad number '" + s + "'");
    }
    return v;
}

sc::Vec parse_vec(const std::string& s, const std::string& what) {
    std::vector<std::string> parts = split(s, ',');
    if (parts.empty()) {
        throw std::invalid_argument(what + ": empty vector");
    }
    sc::Vec v(static_cast<int>(parts.size()));
    for (std::size_t i = 0; i < parts.size(); ++i) {
        v[static_cast<int>(i)] = parse_double(parts[i], what);
    }
    return v;
}

sc::Mat parse_rows(const std::string& s, const std::string& what) {
    std::vector<std::string> rows = split(s, '|');
    if (rows.empty()) {
        throw std::invalid_argument(what + ": empty matrix");
    }
    std::vector<sc::Vec> parsed;
    for (const std::string& r : rows) {
        parsed.push_back(parse_vec(r, what));
    }
    sc::Mat m(static_cast<int>(parsed.size()), parsed[0].size());
    for (std::size_t i = 0; i < parsed.size(); ++i) {
        if (parsed[i].size() != parsed[0].size()) {
            throw std::invalid_argument(what + ": ragged matrix rows");
        }
        m.row(static_cast<int>(i)) = parsed[i].transpose();
    }
    return m;
}

// "key=value;key=value" after the grammar head.
std::map<std::string, std::string> parse_kv(const std::string& s, const std::string& what) {
    std::map<std::string, std::string> kv;
    for (const std::string& part : split(s, ';')) {
        if (part.empty()) continue;
        std::size_t eq = part.find('=');
        if (eq == std::string::npos) {
            throw std::invalid_argument(what + ": expected key=value, got '" + part + "'");
        }
        kv[part.substr(0, eq)] = part.substr(eq + 1);
    }
    return kv;
}

// Function mini-grammar:
//   quadratic                      identity-free default, f(x) = |x|^2
//   quadratic:A=1,0|0,4;b=0,0;c=0  explicit pieces, rows of A split by '|'
//   paper-example                  the 1-D piecewise example from the catalog
//   norm:lambda=0.5                lambda * |x|
//   maxaffine:pieces=1,0|-1,0.25   rows a_1..a_n,b
// fallback_dim is taken from the start vector when the spec leaves it open.
sc::ConvexFunction parse_function(const std::string& spec, int fallback_dim) {
    std::string head = spec;
    std::string rest;
    std::size_t colon = spec.find(':');
    if (colon != std::string::npos) {
        head = spec.substr(0, colon);
        rest = spec.substr(colon + 1);
    }
    if (head == "paper-example") {
        if (!rest.empty()) {
            throw std::invalid_argument("function spec: paper-example takes no parameters");
        }
        return sc::ConvexFunction::paper_piecewise();
    }
    if (head == "quadratic") {
        auto kv = parse_kv(rest, "function spec");
        if (kv.count("A")) {
            sc::Mat a = parse_rows(kv["A"], "function spec A");
            sc::Vec b = sc::Vec::Zero(a.rows());
            if (kv.count("b")) b = parse_vec(kv["b"], "function spec b");
            double c = kv.count("c") ? parse_double(kv["c"], "function spec c") : 0.0;
            return sc::ConvexFunction::quadratic(a, b, c);
        }
        // bare quadratic: f(x) = |x|^2 in the dimension of the start point
        if (fallback_dim < 1) {
            throw std::invalid_argument("function spec: bare quadratic needs a start point");
        }
        sc::Mat a = 2.0 * sc::Mat::Identity(fallback_dim, fallback_dim);
        return sc::ConvexFunction::quadratic(a, sc::Vec::Zero(fallback_dim), 0.0);
    }
    if (head == "norm") {
        auto kv = parse_kv(rest, "function spec");
        if (!kv.count("lambda")) {
            throw std::invalid_argument("function spec: norm needs lambda=");
        }
        double lambda = parse_double(kv["lambda"], "function spec lambda");
        int dim = fallback_dim;
        if (kv.count("dim")) dim = static_cast<int>(parse_double(kv["dim"], "function spec dim"));
        if (dim < 1) {
            throw std::invalid_argument("function spec: norm needs dim= or a start point");
        }
        return sc::ConvexFunction::norm_scaled(dim, lambda);
    }
    if (head == "maxaffine") {
        auto kv = parse_kv(rest, "function spec");
        if (!kv.count("pieces")) {
            throw std::invalid_argument("function spec: maxaffine needs pieces=");
        }
        sc::Mat rows = parse_rows(kv["pieces"], "function spec pieces");
        if (rows.cols() < 2) {
            throw std::invalid_argument("function spec: each maxaffine piece needs "
                                        "coefficients plus an offset");
        }
        std::vector<std::pair<sc::Vec, double>> pieces;
        for (int i = 0; i < rows.rows(); ++i) {
            sc::Vec a = rows.row(i).head(rows.cols() - 1).transpose();
            pieces.emplace_back(a, rows(i, rows.cols() - 1));
        }
        return sc::ConvexFunction::max_affine(std::move(pieces));
    }
    throw std::invalid_argument("function spec: unknown head '" + head + "'");
}

// Schedule mini-grammar: constant:0.5 | geometric:first=0.5;ratio=0.5 |
// harmonic | explicit:0.5,0.25,0.125
sc::ProxSchedule parse_schedule(const std::string& spec) {
    std::string head = spec;
    std::string rest;
    std::size_t colon = spec.find(':');
    if (colon != std::string::npos) {
        head = spec.substr(0, colon);
        rest = spec.substr(colon + 1);
    }
    if (head == "constant") {
        return sc::ProxSchedule::constant(parse_double(rest, "schedule constant"));
    }
    if (head == "geometric") {
        auto kv = parse_kv(rest, "schedule");
        if (!kv.count("first") || !kv.count("ratio")) {
            throw std::invalid_argument("schedule: geometric needs first= and ratio=");
        }
        return sc::ProxSchedule::geometric(parse_double(kv["first"], "schedule first"),
                                           parse_double(kv["ratio"], "schedule ratio"));
    }
    if (head == "harmonic") {
        if (!rest.empty()) {
            throw std::invalid_argument("schedule: harmonic takes no parameters");
        }
        return sc::ProxSchedule::harmonic();
    }
    if (head == "explicit") {
        std::vector<double> steps;
        for (const std::string& part : split(rest, ',')) {
            steps.push_back(parse_double(part, "schedule step"));
        }
        return sc::ProxSchedule::explicit_steps(std::move(steps));
    }
    throw std::invalid_argument("schedule: unknown head '" + head + "'");
}

std::uint64_t resolve_seed(std::uint64_t flag_seed) {
    const char* env = std::getenv("SELFCONTRACT_SEED");
    if (env == nullptr || *env == '\0') {
        return flag_seed;
    }
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end == env || *end != '\0') {
        throw std::invalid_argument("SELFCONTRACT_SEED must be an unsigned integer, got '" +
                                    std::string(env) + "'");
    }
    return static_cast<std::uint64_t>(v);
}

int report_verdict(const sc::PredicateVerdict& v, const std::string& label) {
    if (v.holds) {
        std::cout << label << ": HOLDS\n";
        return 0;
    }
    const sc::Witness& w = *v.witness;
    std::cout << label << ": VIOLATED witness=(" << w.i << "," << w.j << "," << w.k
              << ") violation=" << fmt(w.violation) << "\n";
    return 1;
}

// ---------------------------------------------------------------- plotting

struct PlotSeries {
    std::vector<std::pair<double, double>> xy;
    std::string color;
};

std::vector<std::pair<double, double>> project_curve(const sc::DiscreteCurve& curve) {
    std::vector<std::pair<double, double>> xy;
    xy.reserve(curve.size());
    for (std::size_t i = 0; i < curve.size(); ++i) {
        if (curve.dim() >= 2) {
            xy.emplace_back(curve[i][0], curve[i][1]);
        } else {
            // 1-D curves plot against the sample index
            xy.emplace_back(static_cast<double>(i), curve[i][0]);
        }
    }
    return xy;
}

void write_svg(const std::string& path, const std::vector<PlotSeries>& series,
               const std::vector<double>* inset_values) {
    const double width = 800.0, height = 600.0, margin = 50.0;
    double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
    double ymin = xmin, ymax = -xmin;
    for (const PlotSeries& s : series) {
        for (auto [x, y] : s.xy) {
            xmin = std::min(xmin, x);
            xmax = std::max(xmax, x);
            ymin = std::min(ymin, y);
            ymax = std::max(ymax, y);
        }
    }
    if (!(xmin <= xmax)) {
        throw std::invalid_argument("plot: nothing to draw");
    }
    double xspan = std::max(xmax - xmin, 1e-12);
    double yspan = std::max(ymax - ymin, 1e-12);
    auto px = [&](double x) { return margin + (x - xmin) / xspan * (width - 2 * margin); };
    auto py = [&](double y) { return height - margin - (y - ymin) / yspan * (height - 2 * margin); };

    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("cannot open '" + path + "' for writing");
    }
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
        << height << "\" viewBox=\"0 0 " << width << " " << height << "\">\n";
    out << "<rect width=\"" << width << "\" height=\"" << height
        << "\" fill=\"white\" stroke=\"#cccccc\"/>\n";
    for (const PlotSeries& s : series) {
        out << "<polyline fill=\"none\" stroke=\"" << s.color << "\" stroke-width=\"2\" points=\"";
        for (std::size_t i = 0; i < s.xy.size(); ++i) {
            if (i > 0) out << " ";
            out << fmt(px(s.xy[i].first)) << "," << fmt(py(s.xy[i].second));
        }
        out << "\"/>\n";
        for (auto [x, y] : s.xy) {
            out << "<circle cx=\"" << fmt(px(x)) << "\" cy=\"" << fmt(py(y))
                << "\" r=\"3\" fill=\"" << s.color << "\"/>\n";
        }
    }
    if (inset_values != nullptr && inset_values->size() >= 2) {
        // value-decay inset, top right
        const double ix = 560.0, iy = 40.0, iw = 200.0, ih = 120.0;
        double vmin = *std::min_element(inset_values->begin(), inset_values->end());
        double vmax = *std::max_element(inset_values->begin(), inset_values->end());
        double vspan = std::max(vmax - vmin, 1e-12);
        out << "<rect x=\"" << ix << "\" y=\"" << iy << "\" width=\"" << iw << "\" height=\""
            << ih << "\" fill=\"#f8f8f8\" stroke=\"#999999\"/>\n";
        out << "<polyline fill=\"none\" stroke=\"#2ca02c\" stroke-width=\"1.5\" points=\"";
        for (std::size_t i = 0; i < inset_values->size(); ++i) {
            double x = ix + 5 + (iw - 10) * static_cast<double>(i) /
                                   static_cast<double>(inset_values->size() - 1);
            double y = iy + ih - 5 - (ih - 10) * ((*inset_values)[i] - vmin) / vspan;
            if (i > 0) out << " ";
            out << fmt(x) << "," << fmt(y);
        }
        out << "\"/>\n";
        out << "<text x=\"" << ix + 5 << "\" y=\"" << iy + 14
            << "\" font-size=\"11\" font-family=\"sans-serif\" fill=\"#333333\">value</text>\n";
    }
    out << "</svg>\n";
}

// ------------------------------------------------------------- subcommands

struct CheckArgs {
    std::string file;
    std::string mode = "sc";
    double tol = 1e-9;
    double margin = 1e-6;
};

int cmd_check(const CheckArgs& a) {
    sc::DiscreteCurve curve = sc::read_curve_csv_file(a.file);
    sc::ToleranceConfig cfg{a.tol, a.margin};
    if (a.mode == "sc") {
        return report_verdict(sc::is_self_contracted(curve, cfg), "self-contracted");
    }
    if (a.mode == "se") {
        return report_verdict(sc::is_self_expanded(curve, cfg), "self-expanded");
    }
    if (a.mode == "strong") {
        return report_verdict(sc::secant_cone_check(curve, cfg), "strongly self-contracted");
    }
    if (a.mode == "halfspace") {
        return report_verdict(sc::check_halfspace_property(curve, cfg), "halfspace property");
    }
    throw std::invalid_argument("check: unknown mode '" + a.mode + "'");
}

struct LengthArgs {
    std::string file;
};

int cmd_length(const LengthArgs& a) {
    sc::DiscreteCurve curve = sc::read_curve_csv_file(a.file);
    std::cout << "vertices = " << curve.size() << "\n";
    std::cout << "length = " << fmt(sc::length(curve)) << "\n";
    std::cout << "diameter = " << fmt(sc::diameter(curve.points())) << "\n";
    return 0;
}

struct MeanWidthArgs {
    std::string file;
    std::uint64_t seed = 42;
    int samples = 100000;
};

int cmd_meanwidth(const MeanWidthArgs& a) {
    sc::DiscreteCurve curve = sc::read_curve_csv_file(a.file);
    sc::ConvexBody body = sc::ConvexBody::point_cloud(curve.points());
    sc::SphereSampler sampler(resolve_seed(a.seed), a.samples);
    sc::MeanWidthEstimate est = sc::mean_width(body, sampler);
    std::cout << "mean width = " << fmt(est.value) << "\n";
    std::cout << "standard error = " << fmt(est.standard_error) << "\n";
    std::cout << "samples = " << est.samples << "\n";
    return 0;
}

struct BoundArgs {
    std::string file;
    std::uint64_t seed = 42;
    int samples = 100000;
    double tol = 1e-9;
    double margin = 1e-6;
};

int cmd_bound(const BoundArgs& a) {
    sc::DiscreteCurve curve = sc::read_curve_csv_file(a.file);
    sc::ToleranceConfig cfg{a.tol, a.margin};
    sc::PredicateVerdict v = sc::is_self_contracted(curve, cfg);
    if (!v.holds) {
        return report_verdict(v, "self-contracted (precondition)");
    }
    sc::SphereSampler sampler(resolve_seed(a.seed), a.samples);
    sc::LengthBoundReport rep = sc::verify_length_bound(curve, sampler, cfg);
    double diam = sc::diameter(curve.points());
    std::cout << "length = " << fmt(rep.length) << "\n";
    std::cout << "mean width = " << fmt(rep.width.value) << "  (se " << fmt(rep.width.standard_error)
              << ", " << rep.width.samples << " samples)\n";
    std::cout << "C_n = " << fmt(rep.c_n) << "\n";
    std::cout << "length / width ratio = " << fmt(rep.ratio) << "\n";
    std::cout << "width bound C_n*W + 3se = "
              << fmt(rep.c_n * rep.width.value + 3.0 * rep.width.standard_error) << "\n";
    std::cout << "diameter bound C_n*diam = " << fmt(rep.c_n * diam) << "\n";
    std::cout << "bound: " << (rep.holds ? "HOLDS" : "VIOLATED") << "\n";
    return rep.holds ? 0 : 1;
}

struct ProxArgs {
    std::string function;
    std::string x0;
    std::string schedule = "harmonic";
    int iters = 60;
    double stop_step = 0.0;
    double tol = 1e-10;
    std::uint64_t seed = 42;
    int proj_samples = 32;
    std::string out;
    std::string curve_out;
};

const char* termination_name(sc::Termination t) {
    switch (t) {
    case sc::Termination::max_iter: return "max_iter";
    case sc::Termination::step_below_tol: return "step_below_tol";
    case sc::Termination::fixpoint: return "fixpoint";
    }
    return "unknown";
}

int cmd_prox(const ProxArgs& a) {
    sc::Vec x0 = parse_vec(a.x0, "x0");
    sc::ConvexFunction f = parse_function(a.function, static_cast<int>(x0.size()));
    sc::ProxSchedule sched = parse_schedule(a.schedule);
    sc::ProxTrace trace = sc::run_prox(f, x0, sched, a.iters, a.stop_step, a.tol);

    const sc::Vec& last = trace.iterates.back();
    sc::Vec g = f.min_norm_subgradient(last);
    double gn = g.norm();
    double step_sum = 0.0;
    for (std::size_t i = 0; i + 1 < trace.iterates.size(); ++i) {
        step_sum += (trace.iterates[i + 1] - trace.iterates[i]).norm();
    }
    double displacement = (trace.iterates.front() - last).norm();

    std::cout << "iterations = " << trace.iterates.size() - 1 << "\n";
    std::cout << "terminated by = " << termination_name(trace.terminated_by) << "\n";
    std::cout << "final value = " << fmt(trace.values.back()) << "\n";
    std::cout << "limit estimate = " << fmt_point(last) << "\n";
    if (gn > 1e-6) {
        std::cout << "limit noncritical: |subgrad|min = " << fmt(gn) << "\n";
    } else {
        std::cout << "limit critical: |subgrad|min = " << fmt(gn) << "\n";
    }
    std::cout << "step sum = " << fmt(step_sum) << "\n";
    std::cout << "displacement = " << fmt(displacement) << "\n";
    std::cout << "step-sum ratio = "
              << fmt(displacement > 0 ? step_sum / displacement
                                      : (step_sum > 0 ? std::numeric_limits<double>::infinity()
                                                      : 1.0))
              << "\n";

    int rc = 0;
    sc::DiscreteCurve curve = sc::trace_to_curve(trace);
    sc::PredicateVerdict v = sc::is_self_contracted(curve);
    rc = std::max(rc, report_verdict(v, "trace self-contracted"));

    sc::ProjectionCheckResult proj =
        sc::verify_projection_property(trace, f, resolve_seed(a.seed), a.proj_samples);
    if (proj.holds) {
        std::cout << "projection property: HOLDS (" << proj.samples_used << " samples, "
                  << proj.steps_skipped << " steps without sublevel hits)\n";
    } else {
        const sc::Witness& w = *proj.witness;
        std::cout << "projection property: VIOLATED witness=(" << w.i << "," << w.j << ","
                  << w.k << ") violation=" << fmt(w.violation) << "\n";
        rc = 1;
    }

    if (trace.dim >= 2 && trace.dim <= 16) {
        sc::ConvergenceBoundReport cb = sc::verify_convergence_bound(trace, trace.dim);
        if (cb.inconclusive) {
            std::cout << "convergence bound: inconclusive (zero displacement)\n";
        } else {
            std::cout << "convergence bound: " << (cb.holds ? "HOLDS" : "VIOLATED")
                      << " (step sum " << fmt(cb.total_step_sum) << " vs "
                      << fmt(cb.bound) << ")\n";
            if (!cb.holds) rc = 1;
        }
    } else {
        std::cout << "convergence bound: skipped (dimension outside the constant table)\n";
    }

    if (!a.out.empty()) {
        sc::write_trace_json_file(a.out, trace);
        std::cout << "wrote " << a.out << "\n";
    }
    if (!a.curve_out.empty()) {
        sc::write_curve_csv_file(a.curve_out, curve);
        std::cout << "wrote " << a.curve_out << "\n";
    }
    return rc;
}

struct FoliateArgs {
    std::string function;
    std::string start;
    std::string levels;
    double tol = 1e-9;
    std::string out;
};

int cmd_foliate(const FoliateArgs& a) {
    sc::Vec x0 = parse_vec(a.start, "start");
    sc::ConvexFunction f = parse_function(a.function, static_cast<int>(x0.size()));
    std::vector<double> levels;
    for (const std::string& part : split(a.levels, ',')) {
        levels.push_back(parse_double(part, "levels"));
    }
    sc::FoliationOrbit orbit = sc::sublevel_projection_orbit(f, x0, levels, a.tol);
    std::cout << "recorded levels = " << orbit.levels.size() << "\n";
    std::cout << "final point = " << fmt_point(orbit.curve[orbit.curve.size() - 1]) << "\n";
    std::cout << "final level = " << fmt(orbit.levels.back()) << "\n";
    int rc = report_verdict(sc::decreasing_level_check(orbit, f), "level check");
    if (!a.out.empty()) {
        sc::write_orbit_json_file(a.out, orbit);
        std::cout << "wrote " << a.out << "\n";
    }
    return rc;
}

struct ApproxArgs {
    std::string file;
    double delta = 0.0;
    double tol = 1e-9;
    double margin = 1e-6;
    std::string out;
};

int cmd_approx(const ApproxArgs& a) {
    sc::DiscreteCurve curve = sc::read_curve_csv_file(a.file);
    sc::ToleranceConfig cfg{a.tol, a.margin};
    sc::ApproximationResult res = sc::polygonal_approximation(curve, a.delta, cfg);
    std::cout << "input vertices = " << curve.size() << "\n";
    std::cout << "polyline vertices = " << res.polyline.size() << "\n";
    std::cout << "delta = " << fmt(res.accuracy) << "\n";
    std::cout << "hausdorff = " << fmt(res.hausdorff_achieved) << "\n";
    bool ok = res.hausdorff_achieved <= a.delta + a.tol;
    std::cout << "within delta: " << (ok ? "HOLDS" : "VIOLATED") << "\n";
    if (!a.out.empty()) {
        sc::write_curve_csv_file(a.out, res.polyline);
        std::cout << "wrote " << a.out << "\n";
    }
    return ok ? 0 : 1;
}

struct GenArgs {
    std::string kind;
    std::uint64_t seed = 42;
    int dim = 2;
    int count = 0; // 0 picks the per-kind default
    double h = 1e-3;
    double horizon = 3.0;
    std::string out;
};

int cmd_gen(const GenArgs& a) {
    if (a.dim < 1) {
        throw std::invalid_argument("gen: --dim must be >= 1");
    }
    std::uint64_t seed = resolve_seed(a.seed);
    std::optional<sc::DiscreteCurve> curve;
    if (a.kind == "prox-polyline") {
        int iters = a.count > 0 ? a.count : 30;
        sc::ConvexFunction f = sc::random_psd_quadratic(seed, a.dim);
        sc::ProxSchedule sched = sc::random_schedule(seed);
        sc::Rng rng(seed ^ 0x5bf03635u);
        sc::Vec x0(a.dim);
        for (int d = 0; d < a.dim; ++d) {
            x0[d] = 3.0 * rng.gaussian();
        }
        curve = sc::trace_to_curve(sc::run_prox(f, x0, sched, iters));
    } else if (a.kind == "flow-curve") {
        sc::ConvexFunction f = sc::random_psd_quadratic(seed, a.dim);
        sc::Rng rng(seed ^ 0x243f6a88u);
        sc::Vec x0(a.dim);
        for (int d = 0; d < a.dim; ++d) {
            x0[d] = 1.5 * rng.gaussian();
        }
        curve = sc::gradient_flow_curve(f, x0, a.h, a.horizon);
    } else if (a.kind == "random-walk") {
        int count = a.count > 0 ? a.count : 50;
        curve = sc::random_walk_curve(seed, a.dim, static_cast<std::size_t>(count));
    } else {
        throw std::invalid_argument("gen: unknown kind '" + a.kind + "'");
    }
    if (a.out.empty()) {
        sc::write_curve_csv(std::cout, *curve);
    } else {
        sc::write_curve_csv_file(a.out, *curve);
        std::cout << "wrote " << a.out << "\n";
    }
    return 0;
}

struct PlotArgs {
    std::string input;
    std::string out;
    std::string overlay;
};

int cmd_plot(const PlotArgs& a) {
    bool is_trace = a.input.size() >= 5 && a.input.substr(a.input.size() - 5) == ".json";
    std::vector<PlotSeries> series;
    std::vector<double> inset;
    if (is_trace) {
        sc::ProxTrace trace = sc::read_trace_json_file(a.input);
        series.push_back({project_curve(sc::trace_to_curve(trace)), "#1f77b4"});
        inset = trace.values;
    } else {
        series.push_back({project_curve(sc::read_curve_csv_file(a.input)), "#1f77b4"});
    }
    if (!a.overlay.empty()) {
        series.push_back({project_curve(sc::read_curve_csv_file(a.overlay)), "#d62728"});
    }
    write_svg(a.out, series, inset.empty() ? nullptr : &inset);
    std::cout << "wrote " << a.out << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Verification toolkit for self-contracted polylines and proximal traces"};
    app.require_subcommand(1);

    CheckArgs check_args;
    CLI::App* check = app.add_subcommand("check", "Run a monotonicity predicate on a curve CSV");
    check->add_option("file", check_args.file, "curve CSV")->required();
    check->add_option("--mode", check_args.mode, "sc | se | strong | halfspace")
        ->check(CLI::IsMember({"sc", "se", "strong", "halfspace"}));
    check->add_option("--tol", check_args.tol, "absolute comparison tolerance");
    check->add_option("--margin", check_args.margin, "relative cone margin (strong mode)");

    LengthArgs length_args;
    CLI::App* length = app.add_subcommand("length", "Print curve length and diameter");
    length->add_option("file", length_args.file, "curve CSV")->required();

    MeanWidthArgs mw_args;
    CLI::App* mw = app.add_subcommand("meanwidth",
                                      "Monte Carlo mean width of the vertex hull");
    mw->add_option("file", mw_args.file, "curve CSV")->required();
    mw->add_option("--seed", mw_args.seed, "sampler seed (SELFCONTRACT_SEED overrides)");
    mw->add_option("--samples", mw_args.samples, "number of directions")
        ->check(CLI::Range(2, 100000000));

    BoundArgs bound_args;
    CLI::App* bound = app.add_subcommand("bound", "Check the length vs mean width bound");
    bound->add_option("file", bound_args.file, "curve CSV")->required();
    bound->add_option("--seed", bound_args.seed, "sampler seed (SELFCONTRACT_SEED overrides)");
    bound->add_option("--samples", bound_args.samples, "number of directions")
        ->check(CLI::Range(2, 100000000));
    bound->add_option("--tol", bound_args.tol, "absolute comparison tolerance");
    bound->add_option("--margin", bound_args.margin, "relative cone margin");

    ProxArgs prox_args;
    CLI::App* prox = app.add_subcommand("prox", "Run the proximal iteration and verify it");
    prox->add_option("--function", prox_args.function,
                     "quadratic[:A=..;b=..;c=..] | paper-example | norm:lambda=.. | "
                     "maxaffine:pieces=..")
        ->required();
    prox->add_option("--x0", prox_args.x0, "start point, comma separated")->required();
    prox->add_option("--schedule", prox_args.schedule,
                     "constant:t | geometric:first=..;ratio=.. | harmonic | explicit:t0,t1,..");
    prox->add_option("--iters", prox_args.iters, "iteration budget")->check(CLI::Range(1, 1000000));
    prox->add_option("--stop-step", prox_args.stop_step, "stop once a step is shorter than this");
    prox->add_option("--tol", prox_args.tol, "inner solver tolerance");
    prox->add_option("--seed", prox_args.seed, "projection check seed (SELFCONTRACT_SEED overrides)");
    prox->add_option("--proj-samples", prox_args.proj_samples, "samples per step for the projection check")
        ->check(CLI::Range(1, 100000));
    prox->add_option("--out", prox_args.out, "write the trace JSON here");
    prox->add_option("--curve-out", prox_args.curve_out, "write the iterate polyline CSV here");

    FoliateArgs fol_args;
    CLI::App* foliate = app.add_subcommand("foliate", "Project a point through decreasing sublevels");
    foliate->add_option("--function", fol_args.function, "function spec, as in prox")->required();
    foliate->add_option("--start", fol_args.start, "start point, comma separated")->required();
    foliate->add_option("--levels", fol_args.levels, "strictly decreasing levels, comma separated")
        ->required();
    foliate->add_option("--tol", fol_args.tol, "level matching tolerance");
    foliate->add_option("--out", fol_args.out, "write the orbit JSON here");

    ApproxArgs approx_args;
    CLI::App* approx = app.add_subcommand("approx", "Polygonal approximation of a sampled curve");
    approx->add_option("file", approx_args.file, "curve CSV")->required();
    approx->add_option("--delta", approx_args.delta, "target Hausdorff accuracy")->required();
    approx->add_option("--tol", approx_args.tol, "absolute comparison tolerance");
    approx->add_option("--margin", approx_args.margin, "relative cone margin");
    approx->add_option("--out", approx_args.out, "write the polyline CSV here");

    GenArgs gen_args;
    CLI::App* gen = app.add_subcommand("gen", "Generate a seeded instance curve");
    gen->add_option("--kind", gen_args.kind, "prox-polyline | flow-curve | random-walk")
        ->required()
        ->check(CLI::IsMember({"prox-polyline", "flow-curve", "random-walk"}));
    gen->add_option("--seed", gen_args.seed, "instance seed (SELFCONTRACT_SEED overrides)");
    gen->add_option("--dim", gen_args.dim, "ambient dimension");
    gen->add_option("--count", gen_args.count, "iterations / vertices (0 = per-kind default)");
    gen->add_option("--flow-step", gen_args.h, "flow-curve integrator step");
    gen->add_option("--T", gen_args.horizon, "flow-curve time horizon");
    gen->add_option("--out", gen_args.out, "output CSV (stdout when omitted)");

    PlotArgs plot_args;
    CLI::App* plot = app.add_subcommand("plot", "Render a curve CSV or trace JSON to SVG");
    plot->add_option("input", plot_args.input, "curve CSV or trace JSON (.json)")->required();
    plot->add_option("--out", plot_args.out, "output SVG path")->required();
    plot->add_option("--overlay", plot_args.overlay, "second curve CSV drawn on top");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (check->parsed()) return cmd_check(check_args);
        if (length->parsed()) return cmd_length(length_args);
        if (mw->parsed()) return cmd_meanwidth(mw_args);
        if (bound->parsed()) return cmd_bound(bound_args);
        if (prox->parsed()) return cmd_prox(prox_args);
        if (foliate->parsed()) return cmd_foliate(fol_args);
        if (approx->parsed()) return cmd_approx(approx_args);
        if (gen->parsed()) return cmd_gen(gen_args);
        if (plot->parsed()) return cmd_plot(plot_args);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
