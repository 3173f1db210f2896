#pragma once

#include "gsvi/surface.hpp"

namespace gsvi::catalog {

// Smile shapes -------------------------------------------------------------

/// Normalised SVI: Psi(z) = (1 + rho z + sqrt(z^2 + 2 rho z + 1)) / 2, |rho| < 1.
/// Wing slopes are (rho - 1)/2 and (rho + 1)/2.
PsiShape svi(double rho);

/// Psi(z) = |z| + (1 + sqrt(1 + |z|)) / 2. Kink at 0 with Psi' jump 5/2.
PsiShape sqrt_kink();

/// Psi(z) = (1 + |z|^nu)^(1/nu), nu > 1. C^1 at 0 (declared knot with zero jump);
/// Psi'' is singular at 0 for nu < 2.
PsiShape power_norm(double nu);

// Scale functions ----------------------------------------------------------

/// phi(u) = alpha (1 - e^-u) / u; u phi(u) increases to alpha.
PhiCurve exp_ratio(double alpha);
/// phi(u) = alpha.
PhiCurve constant(double alpha);
/// phi(u) = u^-gamma, gamma > 0.
PhiCurve power(double gamma);
/// Heston-like phi(u) = (lambda u - 1 + e^(-lambda u)) / (lambda u)^2.
PhiCurve heston_like(double lambda);

// ATM variance term structures --------------------------------------------

/// theta_t = a t.
ThetaCurve linear(double a);
/// theta_t = a t^p, p in (0, 1].
ThetaCurve power_law(double a, double p);
/// theta_t = theta_inf (1 - e^(-lambda t)).
ThetaCurve saturating(double theta_inf, double lambda);
/// theta_t = a e^(-lambda t). Decreasing, so never calendar-arbitrage free.
ThetaCurve decaying(double a, double lambda);

// Reference surfaces -------------------------------------------------------

/// theta_t = t, phi(u) = (1 - e^-u)/u, Psi = sqrt_kink().
GenSurface sqrt_kink_surface();
/// theta_t = t, phi(u) = alpha (1 - e^-u)/u, Psi = power_norm(nu).
GenSurface power_norm_surface(double nu, double alpha);

}  // namespace gsvi::catalog
