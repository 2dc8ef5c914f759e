#include "selfcontract/instances.hpp"

#include "selfcontract/random.hpp"

#include <Eigen/Dense>

namespace selfcontract {

ConvexFunction random_psd_quadratic(std::uint64_t seed, int dim) {
    Rng rng(seed);
    Mat b(dim, dim);
    for (int i = 0; i < dim; ++i) {
        for (int j = 0; j < dim; ++j) {
            b(i, j) = rng.gaussian();
        }
    }
    Mat a = (b.transpose() * b) / static_cast<double>(dim) +
            0.2 * Mat::Identity(dim, dim);
    Vec lin(dim);
    for (int i = 0; i < dim; ++i) {
        lin[i] = rng.gaussian();
    }
    return ConvexFunction::quadratic(a, lin, rng.uniform01());
}

ProxSchedule random_schedule(std::uint64_t seed) {
    Rng rng(seed);
    switch (seed % 4) {
    case 0:
        return ProxSchedule::constant(rng.uniform_open_closed(0.1, 1.0));
    case 1: {
        double first = rng.uniform_open_closed(0.2, 1.0);
        double ratio = rng.uniform_open_closed(0.5, 0.95);
        return ProxSchedule::geometric(first, ratio);
    }
    case 2:
        return ProxSchedule::harmonic();
    default: {
        std::size_t count = 5 + static_cast<std::size_t>(rng.next_word() % 10);
        std::vector<double> steps;
        steps.reserve(count);
        for (std::size_t i = 0; i < count; ++i) {
            steps.push_back(rng.uniform_open_closed(0.05, 1.0));
        }
        return ProxSchedule::explicit_steps(std::move(steps));
    }
    }
}

ProxTrace corpus_prox_trace(std::uint64_t seed) {
    static const int dims[] = {2, 3, 5};
    int dim = dims[seed % 3];
    ConvexFunction f = random_psd_quadratic(seed * 2654435761u + 1, dim);
    Rng rng(seed ^ 0x9e3779b97f4a7c15ull);
    Vec x0(dim);
    for (int i = 0; i < dim; ++i) {
        x0[i] = 3.0 * rng.gaussian();
    }
    ProxSchedule sched = random_schedule(seed + 17);
    return run_prox(f, x0, sched, 30);
}

DiscreteCurve random_walk_curve(std::uint64_t seed, int dim, std::size_t count,
                                double step_scale) {
    if (dim < 1 || count < 1) {
        throw std::invalid_argument("random_walk_curve: need dim >= 1 and count >= 1");
    }
    Rng rng(seed);
    std::vector<Vec> pts;
    pts.reserve(count);
    Vec x = Vec::Zero(dim);
    pts.push_back(x);
    for (std::size_t i = 1; i < count; ++i) {
        for (int d = 0; d < dim; ++d) {
            x[d] += step_scale * rng.gaussian();
        }
        pts.push_back(x);
    }
    return DiscreteCurve(std::move(pts));
}

} // namespace selfcontract
