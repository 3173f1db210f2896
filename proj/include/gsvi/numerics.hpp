#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace gsvi {

enum class Spacing { linear, logarithmic, symmetric_log, explicit_points };

/// An ordered set of evaluation points together with the recipe that produced it.
class Grid {
public:
    static Grid linear(double lo, double hi, std::size_t n);
    static Grid logarithmic(double lo, double hi, std::size_t n);
    /// Points -logspace(lo,hi,n) reversed, optionally 0, then logspace(lo,hi,n).
    static Grid symmetric_log(double lo, double hi, std::size_t n, bool include_zero);
    static Grid from_points(std::vector<double> points);

    std::span<const double> points() const { return points_; }
    std::size_t size() const { return points_.size(); }
    double operator[](std::size_t i) const { return points_[i]; }
    double lo() const { return lo_; }
    double hi() const { return hi_; }
    Spacing spacing() const { return spacing_; }
    bool contains(double x) const;

private:
    Grid(double lo, double hi, Spacing spacing, std::vector<double> points);

    double lo_;
    double hi_;
    Spacing spacing_;
    std::vector<double> points_;
};

std::string to_string(Spacing spacing);

/// Throws GridError unless the points are strictly increasing.
void require_increasing(std::span<const double> points, const char* what);

struct ScalarMinimum {
    double x;
    double value;
};

/// Golden-section search for a minimum of f on [a, b], stopping when the
/// bracket is narrower than tol. Assumes f is unimodal on the bracket.
ScalarMinimum golden_section_minimize(const std::function<double(double)>& f, double a, double b,
                                      double tol = 1e-10, int max_iter = 200);

/// Roots of f located by scanning the grid for sign changes and refining each
/// bracket to an absolute width of tol. Exact zeros on the grid are reported as-is.
std::vector<double> sign_change_roots(const std::function<double(double)>& f,
                                      std::span<const double> grid, double tol = 1e-12);

/// Composite trapezoid rule on an arbitrary increasing grid.
double trapezoid(std::span<const double> x, std::span<const double> y);

/// Running trapezoid integral; result[0] = 0.
std::vector<double> cumulative_trapezoid(std::span<const double> x, std::span<const double> y);

}  // namespace gsvi
