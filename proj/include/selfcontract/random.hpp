#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace selfcontract {

// Seeded random stream with a fully pinned-down mapping from engine words to
// doubles. std::mt19937_64 output is specified by the standard, and we avoid
// std::*_distribution on purpose: their algorithms are implementation-defined,
// which would break the "same seed, same bytes" guarantee across toolchains.
//
// uniform01 returns (x >> 11) * 2^-53, i.e. values in [0, 1).
// gaussian uses Box-Muller on (1 - u1, u2) so the log argument stays in (0, 1].
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    double uniform01() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    // Uniform in (lo, hi]; used for step schedules where 0 must be excluded.
    double uniform_open_closed(double lo, double hi) {
        return hi - (hi - lo) * uniform01();
    }

    double gaussian() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = 1.0 - uniform01();
        double u2 = uniform01();
        double radius = std::sqrt(-2.0 * std::log(u1));
        double angle = 2.0 * pi_ * u2;
        spare_ = radius * std::sin(angle);
        have_spare_ = true;
        return radius * std::cos(angle);
    }

    std::uint64_t next_word() { return engine_(); }

private:
    static constexpr double pi_ = 3.14159265358979323846;
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

} // namespace selfcontract
