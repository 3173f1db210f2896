#include "gsvi/numerics.hpp"

#include "gsvi/errors.hpp"

#include <boost/math/tools/toms748_solve.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>

namespace gsvi {

Grid::Grid(double lo, double hi, Spacing spacing, std::vector<double> points)
    : lo_(lo), hi_(hi), spacing_(spacing), points_(std::move(points)) {}

Grid Grid::linear(double lo, double hi, std::size_t n) {
    if (n < 2 || !(hi > lo)) {
        throw GridError("linear grid needs n >= 2 and hi > lo");
    }
    std::vector<double> pts(n);
    const double step = (hi - lo) / static_cast<double>(n - 1);
    for (std::size_t i = 0; i < n; ++i) {
        pts[i] = lo + step * static_cast<double>(i);
    }
    pts.back() = hi;
    return Grid(lo, hi, Spacing::linear, std::move(pts));
}

Grid Grid::logarithmic(double lo, double hi, std::size_t n) {
    if (n < 2 || !(lo > 0.0) || !(hi > lo)) {
        throw GridError("log grid needs n >= 2 and 0 < lo < hi");
    }
    std::vector<double> pts(n);
    const double a = std::log(lo);
    const double step = (std::log(hi) - a) / static_cast<double>(n - 1);
    for (std::size_t i = 0; i < n; ++i) {
        pts[i] = std::exp(a + step * static_cast<double>(i));
    }
    pts.front() = lo;
    pts.back() = hi;
    return Grid(lo, hi, Spacing::logarithmic, std::move(pts));
}

Grid Grid::symmetric_log(double lo, double hi, std::size_t n, bool include_zero) {
    const Grid half = logarithmic(lo, hi, n);
    std::vector<double> pts;
    pts.reserve(2 * n + 1);
    for (auto it = half.points_.rbegin(); it != half.points_.rend(); ++it) {
        pts.push_back(-*it);
    }
    if (include_zero) {
        pts.push_back(0.0);
    }
    pts.insert(pts.end(), half.points_.begin(), half.points_.end());
    return Grid(lo, hi, Spacing::symmetric_log, std::move(pts));
}

Grid Grid::from_points(std::vector<double> points) {
    if (points.empty()) {
        throw GridError("empty grid");
    }
    require_increasing(points, "grid");
    const double lo = points.front();
    const double hi = points.back();
    return Grid(lo, hi, Spacing::explicit_points, std::move(points));
}

bool Grid::contains(double x) const {
    return std::binary_search(points_.begin(), points_.end(), x);
}

std::string to_string(Spacing spacing) {
    switch (spacing) {
    case Spacing::linear: return "linear";
    case Spacing::logarithmic: return "log";
    case Spacing::symmetric_log: return "symmetric_log";
    case Spacing::explicit_points: return "explicit";
    }
    return "unknown";
}

void require_increasing(std::span<const double> points, const char* what) {
    for (std::size_t i = 1; i < points.size(); ++i) {
        if (!(points[i] > points[i - 1])) {
            throw GridError(std::string(what) + " must be strictly increasing");
        }
    }
}

ScalarMinimum golden_section_minimize(const std::function<double(double)>& f, double a, double b,
                                      double tol, int max_iter) {
    if (a > b) {
        std::swap(a, b);
    }
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = f(c);
    double fd = f(d);
    for (int i = 0; i < max_iter && (b - a) > tol; ++i) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    return fc < fd ? ScalarMinimum{c, fc} : ScalarMinimum{d, fd};
}

std::vector<double> sign_change_roots(const std::function<double(double)>& f,
                                      std::span<const double> grid, double tol) {
    std::vector<double> roots;
    if (grid.empty()) {
        return roots;
    }
    double x_prev = grid[0];
    double f_prev = f(x_prev);
    if (f_prev == 0.0) {
        roots.push_back(x_prev);
    }
    for (std::size_t i = 1; i < grid.size(); ++i) {
        const double x = grid[i];
        const double fx = f(x);
        if (fx == 0.0) {
            roots.push_back(x);
        } else if (f_prev != 0.0 && std::isfinite(f_prev) && std::isfinite(fx) &&
                   std::signbit(f_prev) != std::signbit(fx)) {
            std::uintmax_t max_iter = 200;
            const auto done = [tol](double lo, double hi) { return std::abs(hi - lo) <= tol; };
            const auto [lo, hi] =
                boost::math::tools::toms748_solve(f, x_prev, x, f_prev, fx, done, max_iter);
            roots.push_back(0.5 * (lo + hi));
        }
        x_prev = x;
        f_prev = fx;
    }
    return roots;
}

double trapezoid(std::span<const double> x, std::span<const double> y) {
    double sum = 0.0;
    for (std::size_t i = 1; i < x.size(); ++i) {
        sum += 0.5 * (x[i] - x[i - 1]) * (y[i] + y[i - 1]);
    }
    return sum;
}

std::vector<double> cumulative_trapezoid(std::span<const double> x, std::span<const double> y) {
    std::vector<double> out(x.size(), 0.0);
    for (std::size_t i = 1; i < x.size(); ++i) {
        out[i] = out[i - 1] + 0.5 * (x[i] - x[i - 1]) * (y[i] + y[i - 1]);
    }
    return out;
}

}  // namespace gsvi
