#include "gsvi/surface.hpp"

#include "gsvi/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>

namespace gsvi {

namespace {

double fd_step1(double z) { return 1e-5 * std::max(1.0, std::abs(z)); }
double fd_step2(double z) { return 1e-4 * std::max(1.0, std::abs(z)); }

// Side to differentiate from when z sits on, or within two steps of, a knot.
Side stencil_side(std::span<const double> knots, double z, double h, Side requested) {
    for (double a : knots) {
        if (z == a) {
            return requested;
        }
        if (std::abs(z - a) < 3.0 * h) {
            return a > z ? Side::left : Side::right;
        }
    }
    return Side::none;
}

struct NumericDerivatives {
    PsiShape::ValueFn f;
    std::vector<double> knots;

    double d1(double z, Side side) const {
        const double h = fd_step1(z);
        switch (stencil_side(knots, z, h, side)) {
        case Side::left:
            return (3.0 * f(z) - 4.0 * f(z - h) + f(z - 2.0 * h)) / (2.0 * h);
        case Side::right:
            return (-3.0 * f(z) + 4.0 * f(z + h) - f(z + 2.0 * h)) / (2.0 * h);
        case Side::none:
            break;
        }
        return (f(z + h) - f(z - h)) / (2.0 * h);
    }

    double d2(double z, Side side) const {
        const double h = fd_step2(z);
        switch (stencil_side(knots, z, h, side)) {
        case Side::left:
            return (2.0 * f(z) - 5.0 * f(z - h) + 4.0 * f(z - 2.0 * h) - f(z - 3.0 * h)) / (h * h);
        case Side::right:
            return (2.0 * f(z) - 5.0 * f(z + h) + 4.0 * f(z + 2.0 * h) - f(z + 3.0 * h)) / (h * h);
        case Side::none:
            break;
        }
        return (f(z + h) - 2.0 * f(z) + f(z - h)) / (h * h);
    }
};

double aitken(double s1, double s2, double s3) {
    const double d1 = s2 - s1;
    const double d2 = s3 - s2;
    const double denom = d2 - d1;
    if (std::abs(denom) < 1e-300 || std::abs(d2) < 1e-15 * std::max(1.0, std::abs(s3))) {
        return s3;
    }
    return s3 - d2 * d2 / denom;
}

}  // namespace

PsiShape::PsiShape(Definition def) : def_(std::move(def)) {
    if (!def_.value || !def_.deriv1 || !def_.deriv2) {
        throw ParameterError("PsiShape '" + def_.name + "' needs value and both derivatives");
    }
    if (def_.jumps.size() != def_.knots.size()) {
        throw ParameterError("PsiShape '" + def_.name + "': one jump size per knot");
    }
    if (!std::is_sorted(def_.knots.begin(), def_.knots.end()) ||
        std::adjacent_find(def_.knots.begin(), def_.knots.end()) != def_.knots.end()) {
        throw ParameterError("PsiShape '" + def_.name + "': knots must be strictly increasing");
    }
    if (def_.value(0.0) != 1.0) {
        throw ParameterError("PsiShape '" + def_.name + "': Psi(0) must equal 1");
    }
}

PsiShape PsiShape::from_values(std::string name, ValueFn value, std::vector<double> knots,
                               std::optional<double> slope_neg, std::optional<double> slope_pos) {
    std::sort(knots.begin(), knots.end());
    auto numeric = std::make_shared<NumericDerivatives>(NumericDerivatives{value, knots});
    std::vector<double> jumps;
    jumps.reserve(knots.size());
    for (double a : knots) {
        jumps.push_back(numeric->d1(a, Side::right) - numeric->d1(a, Side::left));
    }
    return PsiShape(Definition{
        std::move(name),
        std::move(value),
        [numeric](double z, Side s) { return numeric->d1(z, s); },
        [numeric](double z, Side s) { return numeric->d2(z, s); },
        std::move(knots),
        std::move(jumps),
        slope_neg,
        slope_pos,
    });
}

bool PsiShape::is_knot(double z) const {
    return std::binary_search(def_.knots.begin(), def_.knots.end(), z);
}

double PsiShape::deriv1(double z, Side side) const {
    if (side == Side::none && is_knot(z)) {
        throw KnotError("Psi' requested at knot z=" + std::to_string(z) + " without a side");
    }
    return def_.deriv1(z, side);
}

double PsiShape::deriv2(double z, Side side) const {
    if (side == Side::none && is_knot(z)) {
        throw KnotError("Psi'' requested at knot z=" + std::to_string(z) + " without a side");
    }
    return def_.deriv2(z, side);
}

bool PsiShape::asymptotically_linear() const {
    const auto ok = [](const std::optional<double>& s) {
        return s.has_value() && std::isfinite(*s) && *s != 0.0;
    };
    return ok(def_.slope_neg) && ok(def_.slope_pos);
}

PhiCurve::PhiCurve(Definition def) : def_(std::move(def)) {
    if (!def_.value || !def_.deriv) {
        throw ParameterError("PhiCurve '" + def_.name + "' needs value and derivative");
    }
}

double PhiCurve::value(double u) const {
    if (!(u > 0.0)) {
        throw DomainError("phi(u) requires u > 0");
    }
    return def_.value(u);
}

double PhiCurve::deriv(double u) const {
    if (!(u > 0.0)) {
        throw DomainError("phi'(u) requires u > 0");
    }
    return def_.deriv(u);
}

ThetaCurve::ThetaCurve(Definition def) : def_(std::move(def)) {
    if (!def_.value || !def_.deriv) {
        throw ParameterError("ThetaCurve '" + def_.name + "' needs value and derivative");
    }
}

double ThetaCurve::value(double t) const {
    if (!(t > 0.0)) {
        throw DomainError("theta_t requires t > 0");
    }
    return def_.value(t);
}

double ThetaCurve::deriv(double t) const {
    if (!(t > 0.0)) {
        throw DomainError("theta'_t requires t > 0");
    }
    return def_.deriv(t);
}

GenSurface::GenSurface(PsiShape psi, PhiCurve phi, ThetaCurve theta)
    : psi_(std::move(psi)), phi_(std::move(phi)), theta_(std::move(theta)) {}

double GenSurface::rescaled(double k, double t) const {
    return k * phi_.value(theta_.value(t));
}

double GenSurface::total_variance(double k, double t) const {
    const double th = theta_.value(t);
    return th * psi_.value(k * phi_.value(th));
}

SurfacePoint GenSurface::partials(double k, double t, Side side) const {
    const double th = theta_.value(t);
    const double ph = phi_.value(th);
    const double z = k * ph;
    const double p0 = psi_.value(z);
    const double p1 = psi_.deriv1(z, side);
    const double p2 = psi_.deriv2(z, side);
    const double dth = theta_.deriv(t);
    return SurfacePoint{
        th * p0,
        th * ph * p1,
        th * ph * ph * p2,
        dth * (p0 + th * p1 * k * phi_.deriv(th)),
    };
}

double psi_elasticity(const PsiShape& psi, double z, Side side) {
    if (z == 0.0) {
        return 0.0;
    }
    return z * psi.deriv1(z, side) / psi.value(z);
}

double phi_elasticity(const PhiCurve& phi, double u) {
    return u * phi.deriv(u) / phi.value(u);
}

WingSlopes estimate_wing_slopes(const PsiShape& psi) {
    constexpr double zs[3] = {1e4, 1e5, 1e6};
    const auto limit = [&](double sign, bool& converged) {
        const double s1 = psi.deriv1(sign * zs[0]);
        const double s2 = psi.deriv1(sign * zs[1]);
        const double s3 = psi.deriv1(sign * zs[2]);
        const double extrapolated = aitken(s1, s2, s3);
        // Successive discrepancies must shrink and the extrapolation must sit close to the last sample.
        const bool shrinking = std::abs(s3 - s2) <= std::abs(s2 - s1) + 1e-14;
        converged = std::isfinite(extrapolated) && shrinking &&
                    std::abs(extrapolated - s3) <= 1e-3 * std::max(1.0, std::abs(extrapolated));
        return extrapolated;
    };
    WingSlopes out{};
    out.neg = limit(-1.0, out.converged_neg);
    out.pos = limit(1.0, out.converged_pos);
    constexpr double zero_tol = 1e-8;
    out.linear = out.converged_neg && out.converged_pos && std::abs(out.neg) > zero_tol &&
                 std::abs(out.pos) > zero_tol;
    return out;
}

}  // namespace gsvi
