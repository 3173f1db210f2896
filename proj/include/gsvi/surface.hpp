#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace gsvi {

/// Which one-sided limit to take when a derivative is evaluated at a knot.
enum class Side { none, left, right };

/// Smile shape Psi(z) on the rescaled moneyness z = k * phi(theta_t).
///
/// Psi is continuous, positive, with Psi(0) = 1. Its first derivative may jump
/// at a finite set of declared knots; away from them Psi is C^2. Derivative
/// callables receive the requested side so that catalog shapes can return the
/// exact one-sided limits at a knot.
class PsiShape {
public:
    using ValueFn = std::function<double(double)>;
    using DerivFn = std::function<double(double, Side)>;

    struct Definition {
        std::string name;
        ValueFn value;
        DerivFn deriv1;
        DerivFn deriv2;
        std::vector<double> knots;
        std::vector<double> jumps;  // Psi'(a+) - Psi'(a-) for each knot
        std::optional<double> slope_neg;
        std::optional<double> slope_pos;
    };

    explicit PsiShape(Definition def);

    /// Shape known only through its values. Derivatives use central differences
    /// with step 1e-5 * max(1, |z|), one-sided next to knots; jump sizes are
    /// measured from one-sided differences at the declared knots.
    static PsiShape from_values(std::string name, ValueFn value, std::vector<double> knots = {},
                                std::optional<double> slope_neg = std::nullopt,
                                std::optional<double> slope_pos = std::nullopt);

    const std::string& name() const { return def_.name; }
    double value(double z) const { return def_.value(z); }
    /// Throws KnotError when z is a knot and side is Side::none.
    double deriv1(double z, Side side = Side::none) const;
    double deriv2(double z, Side side = Side::none) const;

    std::span<const double> knots() const { return def_.knots; }
    std::span<const double> jumps() const { return def_.jumps; }
    bool is_knot(double z) const;

    std::optional<double> slope_neg() const { return def_.slope_neg; }
    std::optional<double> slope_pos() const { return def_.slope_pos; }
    /// Both wing slopes declared, finite and non-zero.
    bool asymptotically_linear() const;

private:
    Definition def_;
};

/// Scale function phi(u) > 0 on u > 0.
class PhiCurve {
public:
    using Fn = std::function<double(double)>;

    struct Definition {
        std::string name;
        Fn value;
        Fn deriv;
        std::optional<double> limit_at_zero;
        /// lim u*phi(u) as u grows; +infinity when the product diverges.
        std::optional<double> m_infinity;
    };

    explicit PhiCurve(Definition def);

    const std::string& name() const { return def_.name; }
    double value(double u) const;
    double deriv(double u) const;
    std::optional<double> limit_at_zero() const { return def_.limit_at_zero; }
    std::optional<double> m_infinity() const { return def_.m_infinity; }

private:
    Definition def_;
};

/// At-the-money total variance term structure theta_t.
class ThetaCurve {
public:
    using Fn = std::function<double(double)>;

    struct Definition {
        std::string name;
        Fn value;
        Fn deriv;
        double theta_infinity;  // may be +infinity
        double sup_value;       // sup over t > 0; equals theta_infinity for non-decreasing curves
    };

    explicit ThetaCurve(Definition def);

    const std::string& name() const { return def_.name; }
    double value(double t) const;
    double deriv(double t) const;
    double theta_infinity() const { return def_.theta_infinity; }
    double sup_value() const { return def_.sup_value; }

private:
    Definition def_;
};

/// Value and analytic partial derivatives of w at one (k, t).
struct SurfacePoint {
    double w;
    double dk;
    double dkk;
    double dt;
};

/// w(k, t) = theta_t * Psi(k * phi(theta_t)).
class GenSurface {
public:
    GenSurface(PsiShape psi, PhiCurve phi, ThetaCurve theta);

    const PsiShape& psi() const { return psi_; }
    const PhiCurve& phi() const { return phi_; }
    const ThetaCurve& theta() const { return theta_; }

    /// z = k * phi(theta_t).
    double rescaled(double k, double t) const;
    /// Throws DomainError for t <= 0.
    double total_variance(double k, double t) const;
    /// Chain-rule partials. At a knot of Psi the side selects the one-sided
    /// limit; Side::none at a knot throws KnotError.
    SurfacePoint partials(double k, double t, Side side = Side::none) const;

private:
    PsiShape psi_;
    PhiCurve phi_;
    ThetaCurve theta_;
};

/// F(z) = z Psi'(z) / Psi(z).
double psi_elasticity(const PsiShape& psi, double z, Side side = Side::none);
/// f(u) = u phi'(u) / phi(u).
double phi_elasticity(const PhiCurve& phi, double u);

struct WingSlopes {
    double neg;
    double pos;
    bool converged_neg;
    bool converged_pos;
    /// Both limits converged, finite and non-zero.
    bool linear;
};

/// Limits of Psi' at -inf and +inf, extrapolated from Psi' on the geometric
/// grid |z| = 1e4, 1e5, 1e6 with Aitken's delta-squared step.
WingSlopes estimate_wing_slopes(const PsiShape& psi);

}  // namespace gsvi
