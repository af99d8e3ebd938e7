#pragma once

// Counter-based deterministic random generator (splitmix64).  Identical seeds
// produce identical streams on every platform, independent of the standard
// library's distribution implementations.

#include <cmath>
#include <cstdint>
#include <numbers>

#include "slgeo/linalg.hpp"

namespace slgeo {

class CounterRng {
public:
    explicit CounterRng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    /// Uniform in [0, 1).
    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Uniform in (0, 1]; safe for log().
    double next_open() { return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53; }

    /// Uniform in [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * next_double(); }

    /// Standard normal via Box-Muller (pairs cached).
    double next_normal() {
        if (have_cached_) {
            have_cached_ = false;
            return cached_;
        }
        const double u1 = next_open();
        const double u2 = next_double();
        const double radius = std::sqrt(-2.0 * std::log(u1));
        const double angle = 2.0 * std::numbers::pi * u2;
        cached_ = radius * std::sin(angle);
        have_cached_ = true;
        return radius * std::cos(angle);
    }

    /// Uniform point on the unit sphere S^{n-1}.
    RVector unit_sphere(int n) {
        RVector y(static_cast<std::size_t>(n));
        while (true) {
            double norm2 = 0.0;
            for (double& c : y) {
                c = next_normal();
                norm2 += c * c;
            }
            if (norm2 > 1e-24) {
                const double inv = 1.0 / std::sqrt(norm2);
                for (double& c : y) c *= inv;
                return y;
            }
        }
    }

    CVector complex_vector(int n, double scale = 1.0) {
        CVector v(static_cast<std::size_t>(n));
        for (Complex& c : v) {
            const double re = scale * next_normal();
            const double im = scale * next_normal();
            c = Complex{re, im};
        }
        return v;
    }

private:
    std::uint64_t state_;
    double cached_ = 0.0;
    bool have_cached_ = false;
};

}  // namespace slgeo
