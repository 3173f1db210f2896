#include "gsvi/catalog.hpp"

#include "gsvi/errors.hpp"

#include <cmath>
#include <limits>

namespace gsvi::catalog {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double sign_of(double z, Side side) {
    if (z > 0.0) return 1.0;
    if (z < 0.0) return -1.0;
    return side == Side::left ? -1.0 : 1.0;
}

// (u + 1) e^-u - 1, accurate for small u.
double exp_ratio_numerator(double u) {
    if (u < 0.1) {
        double term = 1.0;  // u^n / n!
        double sum = 0.0;
        for (int n = 1; n <= 16; ++n) {
            term *= u / n;
            const double coef = (n % 2 == 0 ? 1.0 : -1.0) * (1.0 - n);
            sum += coef * term;
        }
        return sum;
    }
    return (u + 1.0) * std::exp(-u) - 1.0;
}

// (x - 1 + e^-x) / x^2
double heston_value(double x) {
    if (x < 0.1) {
        double term = 1.0;
        double sum = 0.0;
        for (int n = 1; n <= 18; ++n) {
            term *= x / n;
            if (n >= 2) sum += (n % 2 == 0 ? 1.0 : -1.0) * term;
        }
        return sum / (x * x);
    }
    return (x + std::expm1(-x)) / (x * x);
}

// d/dx of heston_value: (2 - x - (x + 2) e^-x) / x^3
double heston_slope(double x) {
    if (x < 0.1) {
        double term = 1.0;
        double sum = 0.0;
        for (int n = 1; n <= 18; ++n) {
            term *= x / n;
            if (n >= 3) sum += (n % 2 == 0 ? 1.0 : -1.0) * (n - 2) * term;
        }
        return sum / (x * x * x);
    }
    return (2.0 - x - (x + 2.0) * std::exp(-x)) / (x * x * x);
}

void require(bool ok, const char* message) {
    if (!ok) throw ParameterError(message);
}

}  // namespace

PsiShape svi(double rho) {
    require(rho > -1.0 && rho < 1.0, "svi: rho must lie in (-1, 1)");
    const auto root = [rho](double z) { return std::sqrt(z * z + 2.0 * rho * z + 1.0); };
    return PsiShape(PsiShape::Definition{
        "svi",
        [rho, root](double z) { return 0.5 * (1.0 + rho * z + root(z)); },
        [rho, root](double z, Side) { return 0.5 * (rho + (z + rho) / root(z)); },
        [rho, root](double z, Side) {
            const double s = root(z);
            return 0.5 * (1.0 - rho * rho) / (s * s * s);
        },
        {},
        {},
        0.5 * (rho - 1.0),
        0.5 * (rho + 1.0),
    });
}

PsiShape sqrt_kink() {
    return PsiShape(PsiShape::Definition{
        "nonsvi_sqrt",
        [](double z) {
            const double a = std::abs(z);
            return a + 0.5 * (1.0 + std::sqrt(1.0 + a));
        },
        [](double z, Side side) {
            return sign_of(z, side) * (1.0 + 0.25 / std::sqrt(1.0 + std::abs(z)));
        },
        [](double z, Side) {
            const double r = std::sqrt(1.0 + std::abs(z));
            return -0.125 / (r * r * r);
        },
        {0.0},
        {2.5},
        -1.0,
        1.0,
    });
}

PsiShape power_norm(double nu) {
    require(nu > 1.0 && std::isfinite(nu), "nonsvi_power: nu must exceed 1");
    // q = |z|^nu / (1 + |z|^nu), evaluated without overflow.
    const auto ratio = [nu](double a) {
        return a <= 1.0 ? std::pow(a, nu) / (1.0 + std::pow(a, nu)) : 1.0 / (1.0 + std::pow(a, -nu));
    };
    return PsiShape(PsiShape::Definition{
        "nonsvi_power",
        [nu](double z) {
            const double a = std::abs(z);
            if (a <= 1.0) return std::exp(std::log1p(std::pow(a, nu)) / nu);
            return a * std::exp(std::log1p(std::pow(a, -nu)) / nu);
        },
        [nu, ratio](double z, Side side) {
            return sign_of(z, side) * std::pow(ratio(std::abs(z)), 1.0 - 1.0 / nu);
        },
        [nu](double z, Side) {
            const double a = std::abs(z);
            if (a <= 1.0) {
                return (nu - 1.0) * std::pow(a, nu - 2.0) / std::pow(1.0 + std::pow(a, nu), 2.0 - 1.0 / nu);
            }
            return (nu - 1.0) * std::pow(a, -nu - 1.0) / std::pow(1.0 + std::pow(a, -nu), 2.0 - 1.0 / nu);
        },
        {0.0},
        {0.0},
        -1.0,
        1.0,
    });
}

PhiCurve exp_ratio(double alpha) {
    require(alpha > 0.0, "exp_ratio: alpha must be positive");
    return PhiCurve(PhiCurve::Definition{
        "exp_ratio",
        [alpha](double u) { return -alpha * std::expm1(-u) / u; },
        [alpha](double u) { return alpha * exp_ratio_numerator(u) / (u * u); },
        alpha,
        alpha,
    });
}

PhiCurve constant(double alpha) {
    require(alpha > 0.0, "constant: alpha must be positive");
    return PhiCurve(PhiCurve::Definition{
        "constant",
        [alpha](double) { return alpha; },
        [](double) { return 0.0; },
        alpha,
        kInf,
    });
}

PhiCurve power(double gamma) {
    require(gamma > 0.0, "power: exponent must be positive");
    const double m_inf = gamma < 1.0 ? kInf : (gamma == 1.0 ? 1.0 : 0.0);
    return PhiCurve(PhiCurve::Definition{
        "power",
        [gamma](double u) { return std::pow(u, -gamma); },
        [gamma](double u) { return -gamma * std::pow(u, -gamma - 1.0); },
        std::nullopt,
        m_inf,
    });
}

PhiCurve heston_like(double lambda) {
    require(lambda > 0.0, "heston: lambda must be positive");
    return PhiCurve(PhiCurve::Definition{
        "heston",
        [lambda](double u) { return heston_value(lambda * u); },
        [lambda](double u) { return lambda * heston_slope(lambda * u); },
        0.5,
        1.0 / lambda,
    });
}

ThetaCurve linear(double a) {
    require(a > 0.0, "linear theta: a must be positive");
    return ThetaCurve(ThetaCurve::Definition{
        "linear",
        [a](double t) { return a * t; },
        [a](double) { return a; },
        kInf,
        kInf,
    });
}

ThetaCurve power_law(double a, double p) {
    require(a > 0.0, "power theta: a must be positive");
    require(p > 0.0 && p <= 1.0, "power theta: p must lie in (0, 1]");
    return ThetaCurve(ThetaCurve::Definition{
        "power",
        [a, p](double t) { return a * std::pow(t, p); },
        [a, p](double t) { return a * p * std::pow(t, p - 1.0); },
        kInf,
        kInf,
    });
}

ThetaCurve saturating(double theta_inf, double lambda) {
    require(theta_inf > 0.0 && std::isfinite(theta_inf), "saturating theta: inf must be positive and finite");
    require(lambda > 0.0, "saturating theta: lambda must be positive");
    return ThetaCurve(ThetaCurve::Definition{
        "saturating",
        [theta_inf, lambda](double t) { return -theta_inf * std::expm1(-lambda * t); },
        [theta_inf, lambda](double t) { return theta_inf * lambda * std::exp(-lambda * t); },
        theta_inf,
        theta_inf,
    });
}

ThetaCurve decaying(double a, double lambda) {
    require(a > 0.0, "decay theta: a must be positive");
    require(lambda > 0.0, "decay theta: lambda must be positive");
    return ThetaCurve(ThetaCurve::Definition{
        "decay",
        [a, lambda](double t) { return a * std::exp(-lambda * t); },
        [a, lambda](double t) { return -lambda * a * std::exp(-lambda * t); },
        0.0,
        a,
    });
}

GenSurface sqrt_kink_surface() {
    return GenSurface(sqrt_kink(), exp_ratio(1.0), linear(1.0));
}

GenSurface power_norm_surface(double nu, double alpha) {
    return GenSurface(power_norm(nu), exp_ratio(alpha), linear(1.0));
}

}  // namespace gsvi::catalog
