#pragma once

#include "gsvi/catalog.hpp"
#include "gsvi/surface.hpp"

#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <string>

namespace gsvi::testing {

/// Seeded draw helper for the hand-rolled property generators.
class Draw {
public:
    explicit Draw(std::uint64_t seed) : rng_(seed) {}
    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
    double log_uniform(double lo, double hi) { return std::exp(uniform(std::log(lo), std::log(hi))); }
    int index(int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng_); }
    bool coin() { return index(2) == 1; }

private:
    std::mt19937_64 rng_;
};

inline double central_diff(const std::function<double(double)>& f, double x, double h) {
    return (f(x + h) - f(x - h)) / (2.0 * h);
}

inline bool close_rel(double a, double b, double rel, double abs_floor = 0.0) {
    return std::abs(a - b) <= rel * std::max(std::abs(a), std::abs(b)) + abs_floor;
}

inline GenSurface example_kink() { return catalog::sqrt_kink_surface(); }
inline GenSurface example_power(double nu, double alpha) { return catalog::power_norm_surface(nu, alpha); }
inline GenSurface symmetric_svi(PhiCurve phi) {
    return GenSurface(catalog::svi(0.0), std::move(phi), catalog::linear(1.0));
}

}  // namespace gsvi::testing
