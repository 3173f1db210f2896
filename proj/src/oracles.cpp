#include "gsvi/oracles.hpp"

#include "gsvi/black_scholes.hpp"
#include "gsvi/errors.hpp"

#include <cmath>
#include <limits>
#include <vector>

namespace gsvi {

Grid default_strike_grid() { return Grid::logarithmic(std::exp(-5.0), std::exp(5.0), 2001); }

Grid default_time_grid() { return Grid::logarithmic(0.01, 10.0, 101); }

OracleReport convexity_oracle(const GenSurface& surface, double t, const Grid& strikes) {
    const auto K = strikes.points();
    if (K.size() < 3 || !(K.front() > 0.0)) {
        throw GridError("convexity oracle needs at least 3 positive strikes");
    }
    const std::size_t n = K.size();
    std::vector<double> call(n);
    std::vector<double> put(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double w = surface.total_variance(std::log(K[i]), t);
        call[i] = call_bs(K[i], w);
        put[i] = put_bs(K[i], w);
    }
    // Slope of the call chord over [K_i, K_i+1].
    const auto chord = [&](std::size_t i) {
        const double dk = K[i + 1] - K[i];
        if (K[i + 1] <= 1.0) return (put[i + 1] - put[i]) / dk - 1.0;
        return (call[i + 1] - call[i]) / dk;
    };

    OracleReport out{std::numeric_limits<double>::infinity(), K[1], t, "K", "K", strikes.spacing(),
                     strikes.lo(), strikes.hi(), n};
    double prev = chord(0);
    for (std::size_t i = 1; i + 1 < n; ++i) {
        const double next = chord(i);
        const double dd = 2.0 * (next - prev) / (K[i + 1] - K[i - 1]);
        if (dd < out.min_margin) {
            out.min_margin = dd;
            out.witness = K[i];
        }
        prev = next;
    }
    return out;
}

OracleReport monotonicity_oracle(const GenSurface& surface, double k, const Grid& times) {
    const auto T = times.points();
    if (T.size() < 2 || !(T.front() > 0.0)) {
        throw GridError("monotonicity oracle needs at least 2 positive maturities");
    }
    OracleReport out{std::numeric_limits<double>::infinity(), k, T[0], "k", "t", times.spacing(),
                     times.lo(), times.hi(), T.size()};
    double prev = surface.total_variance(k, T[0]);
    for (std::size_t i = 1; i < T.size(); ++i) {
        const double next = surface.total_variance(k, T[i]);
        if (next - prev < out.min_margin) {
            out.min_margin = next - prev;
            out.witness_t = T[i - 1];
        }
        prev = next;
    }
    return out;
}

double price_slope_jump(const GenSurface& surface, double t, double k0, double h) {
    const double K0 = std::exp(k0);
    const double H = h * K0;
    // Put and call slopes differ by one, so the jump is the same; puts are better conditioned below the forward.
    const auto price = [&](double K) {
        const double w = surface.total_variance(std::log(K), t);
        return K0 < 1.0 ? put_bs(K, w) : call_bs(K, w);
    };
    const double p0 = price(K0);
    const double right = (-3.0 * p0 + 4.0 * price(K0 + H) - price(K0 + 2.0 * H)) / (2.0 * H);
    const double left = (3.0 * p0 - 4.0 * price(K0 - H) + price(K0 - 2.0 * H)) / (2.0 * H);
    return right - left;
}

}  // namespace gsvi
