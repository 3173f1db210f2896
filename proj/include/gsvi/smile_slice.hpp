#pragma once

#include "gsvi/surface.hpp"

#include <functional>
#include <optional>
#include <span>
#include <vector>

namespace gsvi {

/// One maturity of a surface: k -> v(k) = w(k, t), with one-sided derivatives
/// and the kinks of v' mapped into log-moneyness.
class SmileSlice {
public:
    using ValueFn = std::function<double(double)>;
    using DerivFn = std::function<double(double, Side)>;

    struct Definition {
        ValueFn value;
        DerivFn deriv1;
        DerivFn deriv2;
        std::vector<double> knots;  // increasing k positions
        std::vector<double> jumps;  // v'(k+) - v'(k-)
        std::optional<double> slope_neg;  // limits of v' at -inf / +inf
        std::optional<double> slope_pos;
    };

    explicit SmileSlice(Definition def);

    /// v(k) = theta_t Psi(k phi(theta_t)); knots a_i / phi, jumps theta phi alpha_i.
    static SmileSlice from_surface(const GenSurface& surface, double t);

    /// k -> v(-k). Knots are mirrored; jump sizes are unchanged.
    SmileSlice reflected() const;

    double value(double k) const { return def_.value(k); }
    /// Throws KnotError at a knot when side is Side::none.
    double deriv1(double k, Side side = Side::none) const;
    double deriv2(double k, Side side = Side::none) const;

    std::span<const double> knots() const { return def_.knots; }
    std::span<const double> jumps() const { return def_.jumps; }
    bool is_knot(double k) const;
    std::optional<double> slope_neg() const { return def_.slope_neg; }
    std::optional<double> slope_pos() const { return def_.slope_pos; }

private:
    Definition def_;
};

}  // namespace gsvi
