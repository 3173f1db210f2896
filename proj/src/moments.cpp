#include "gsvi/moments.hpp"

#include "gsvi/black_scholes.hpp"
#include "gsvi/errors.hpp"
#include "gsvi/numerics.hpp"
#include "gsvi/operator_l.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

namespace gsvi {

namespace {

constexpr int kDoublings = 7;

// log p_-(k); -inf where L vanishes.
double log_density(const SmileSlice& slice, double k) {
    const double v = slice.value(k);
    const double d = d_pm(k, v).minus;
    const double l = apply_l(slice, k).worst();
    if (!(l > 0.0)) return -std::numeric_limits<double>::infinity();
    return -0.5 * std::log(2.0 * std::numbers::pi * v) - 0.5 * d * d + std::log(l);
}

double least_squares_slope(const std::vector<double>& x, const std::vector<double>& y) {
    const double n = static_cast<double>(x.size());
    double sx = 0.0, sy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
    }
    const double mx = sx / n;
    const double my = sy / n;
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxy += (x[i] - mx) * (y[i] - my);
        sxx += (x[i] - mx) * (x[i] - mx);
    }
    return sxy / sxx;
}

// log of the trapezoid sum of exp(g) on consecutive samples.
double log_trapezoid(const std::vector<double>& x, const std::vector<double>& g, std::size_t from, std::size_t to) {
    double peak = -std::numeric_limits<double>::infinity();
    for (std::size_t i = from; i <= to; ++i) peak = std::max(peak, g[i]);
    if (!std::isfinite(peak)) return peak;
    double sum = 0.0;
    for (std::size_t i = from + 1; i <= to; ++i) {
        sum += 0.5 * (x[i] - x[i - 1]) * (std::exp(g[i] - peak) + std::exp(g[i - 1] - peak));
    }
    return peak + std::log(sum);
}

}  // namespace

double critical_moment(double alpha) {
    // alpha = 2 is the boundary of the large-moneyness regime and gives 0.
    if (!(alpha > 0.0 && alpha <= 2.0)) {
        throw PreconditionError("critical moment formula needs a wing slope in (0, 2]");
    }
    return 0.5 * (alpha / 4.0 - 1.0 + 1.0 / alpha);
}

double tail_decay_rate(double alpha, double m) {
    return ((alpha - 2.0) * (alpha - 2.0) - 8.0 * m * alpha) / (8.0 * alpha);
}

WingSlopeFit fit_right_wing_slope(const SmileSlice& slice, double k_lo, double k_hi) {
    std::vector<double> x;
    std::vector<double> y;
    double curvature = 0.0;
    const auto grid = Grid::linear(k_lo, k_hi, 301);
    for (double k : grid.points()) {
        x.push_back(k);
        y.push_back(slice.value(k));
        const Side side = slice.is_knot(k) ? Side::right : Side::none;
        curvature = std::max(curvature, std::abs(slice.deriv2(k, side)));
    }
    return WingSlopeFit{least_squares_slope(x, y), curvature};
}

double tail_log_slope(const SmileSlice& slice, double m, double k_lo, double k_hi) {
    std::vector<double> x;
    std::vector<double> y;
    const auto grid = Grid::linear(k_lo, k_hi, 401);
    for (double k : grid.points()) {
        x.push_back(k);
        y.push_back((1.0 + m) * k + log_density(slice, k));
    }
    return least_squares_slope(x, y);
}

MomentBracket bracket_critical_moment(const SmileSlice& slice, int iterations) {
    // Samples: fine on [-40, 40], then 2000 per doubling out to 40 * 2^7.
    std::vector<double> k;
    std::vector<std::size_t> ends;
    {
        const auto core = Grid::linear(-40.0, 40.0, 8001);
        k.assign(core.points().begin(), core.points().end());
        ends.push_back(k.size() - 1);
        double lo = 40.0;
        for (int j = 1; j <= kDoublings; ++j) {
            const auto piece = Grid::linear(lo, 2.0 * lo, 2001);
            k.insert(k.end(), piece.points().begin() + 1, piece.points().end());
            ends.push_back(k.size() - 1);
            lo *= 2.0;
        }
    }
    std::vector<double> log_p(k.size());
    for (std::size_t i = 0; i < k.size(); ++i) log_p[i] = log_density(slice, k[i]);

    const std::vector<Atom> atoms = l_atoms(slice);

    const auto diverges = [&](double m) {
        std::vector<double> g(k.size());
        for (std::size_t i = 0; i < k.size(); ++i) g[i] = (1.0 + m) * k[i] + log_p[i];
        // Atom contributions are bounded and identical for every domain, so they only shift the base value.
        double atoms_total = 0.0;
        for (const Atom& a : atoms) {
            const double v = slice.value(a.k);
            const double d = d_pm(a.k, v).minus;
            atoms_total += std::exp((1.0 + m) * a.k) * a.mass * std::exp(-0.5 * d * d) /
                           std::sqrt(2.0 * std::numbers::pi * v);
        }
        const double before = log_trapezoid(k, g, 0, ends[kDoublings - 1]);
        const double after = log_trapezoid(k, g, 0, ends[kDoublings]);
        const double base = std::exp(before) + atoms_total;
        const double grown = std::exp(after) + atoms_total;
        if (!std::isfinite(grown)) return true;
        return grown > 1.1 * base;
    };

    MomentBracket out{0.0, 1.0, 0};
    if (diverges(0.0)) return MomentBracket{0.0, 0.0, 0};
    if (!diverges(1.0)) return MomentBracket{1.0, 1.0, 0};
    for (int i = 0; i < iterations; ++i) {
        const double mid = 0.5 * (out.lo + out.hi);
        if (diverges(mid)) out.hi = mid;
        else out.lo = mid;
        ++out.iterations;
    }
    return out;
}

}  // namespace gsvi
