#pragma once

#include "gsvi/surface.hpp"

#include <array>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace gsvi {

// Pieces of the pointwise butterfly condition in the rescaled variable z.
//   curvature   Psi'^2/Psi - 2 Psi''
//   denominator curvature / (4u) + Psi'^2 / 16
//   numerator   (1 - z Psi' / (2 Psi))^2
// L w >= 0 at level u = theta_t iff (u phi(u))^2 <= numerator / denominator wherever
// the denominator is positive.
double fly_curvature(const PsiShape& psi, double z, Side side = Side::none);
double fly_denominator(const PsiShape& psi, double z, double u, Side side = Side::none);
double fly_numerator(const PsiShape& psi, double z, Side side = Side::none);
double fly_ratio(const PsiShape& psi, double z, double u, Side side = Side::none);

enum class Region {
    positive_denominator,  // denominator > 0 at level u
    positive_curvature,    // curvature > 0
    nonpositive_curvature_positive_denominator,
};
std::string to_string(Region region);

/// Knots are never members.
bool in_region(const PsiShape& psi, Region region, double z, double u);

struct RegionClassification {
    std::vector<double> curvature_roots;    // boundary of {curvature > 0}
    std::vector<double> denominator_roots;  // boundary of {denominator > 0}, when u is given
};

/// Sign changes of curvature (and of the denominator at level u) on
/// +/-logspace(1e-4, 1e4, 2000), refined to 1e-12. Sign changes across a knot are dropped.
RegionClassification classify_regions(const PsiShape& psi, std::optional<double> u = std::nullopt);

struct ButterflyBound {
    double u;
    double bound;     // +inf when the region is empty
    double argmin_z;  // +/-inf when the infimum is the wing limit
    Region region;
};

/// Infimum of fly_ratio over the region: grid scan on +/-logspace(1e-4, 1e4, 2000)
/// plus region boundaries and knot neighbours, golden-section refinement of the
/// best cell, and the wing limit 4/alpha^2 for asymptotically linear shapes.
ButterflyBound butterfly_bound(const PsiShape& psi, double u, Region region);

// Closed forms for symmetric SVI.
double sym_svi_a(double y, double u);
/// Throws DomainError unless 0 <= u < 4.
double sym_svi_y(double u);
double sym_svi_a_star(double u);
/// Exact symmetric-SVI bound on (u phi)^2: A*(u) below 4, 16 above.
double sym_svi_bound(double u);
/// Combined sufficient bound 16 min(1, phi^-2) on (u phi)^2 from the classical SVI conditions.
double gj_combined_bound(double phi_value);

/// Edge (2(nu-1))^(1/nu) of the nonpositive-curvature band of power_norm(nu).
double power_norm_band_edge(double nu);
/// Closed-form infimum of |4/Psi' - 2z/Psi| over that band: 4 nu (2nu-2)^((1-nu)/nu) (2nu-1)^(-1/nu).
double power_norm_wing_cap(double nu);

struct CurvePeak {
    double u;
    double value;
    /// value^(-1/2): largest scale for which the peak stays at or below 1.
    double alpha_bar;
};
/// Maximum over u of (u phi(u))^2 (1/u + 1/4), golden section on log u in [1e-3, 1e3].
CurvePeak wing_curve_peak(const PhiCurve& phi);

enum class NecessaryScope { whole_line, nonpositive_curvature };

struct EasyNecessary {
    double infimum;  // inf |4/Psi' - 2z/Psi|
    double argmin_z;
    double margin;   // infimum - m_infinity
};

/// Throws PreconditionError when Psi is not asymptotically linear.
EasyNecessary easy_necessary(const PsiShape& psi, double m_infinity,
                             NecessaryScope scope = NecessaryScope::whole_line);

struct GjCondition {
    std::string name;
    bool ok;
    double margin;
};

/// The five sufficient conditions for SVI with skew rho:
/// theta' >= 0, phi + u phi' >= 0, phi' < 0, u phi (1+|rho|) < 4, u phi^2 (1+|rho|) <= 4.
std::array<GjCondition, 5> gj_sufficient(double rho, const PhiCurve& phi, const ThetaCurve& theta,
                                         std::span<const double> u_grid, std::span<const double> t_grid,
                                         double tol = 1e-12);

struct PsiUpperBound {
    bool found_start;  // a tail start z+ exists on [0, 1e4]
    double z_plus;
    double u_plus;
    double k_s;
    double k_l;
    double kappa;
    bool pass;
    double worst_margin;  // min of bound - Psi on [z+, 1e4]
    double witness_z;
};

/// Upper bound on the right wing of Psi implied by absence of arbitrage when theta grows without bound:
/// Psi(z) <= kappa^2 + lambda z - kappa sqrt(kappa^2 + 2 lambda z) with lambda = 2 / m_infinity.
/// Throws PreconditionError when Psi is not asymptotically linear with a positive right slope,
/// or when m_infinity is not positive and finite.
PsiUpperBound psi_upper_bound(const PsiShape& psi, double m_infinity);

enum class LmbStatus { ok, marginal, violated };
std::string to_string(LmbStatus status);

struct ButterflyOptions {
    std::vector<double> u_grid;
    double tol = 1e-12;
};

/// u in logspace(1e-3, min(sup theta (1 - 1e-6), 1e3), 300).
ButterflyOptions default_butterfly_options(const GenSurface& surface);

struct PerLevel {
    double u;
    double lhs;  // (u phi(u))^2
    double bound;
    double argmin_z;
    bool ok;
};

struct WingCondition {
    bool applicable;  // asymptotically linear Psi with non-decreasing theta
    bool finite_branch;
    double lhs;
    double bound;
    double argmin_z;
    bool ok;
};

struct ButterflyVerdict {
    bool pass;
    std::vector<PerLevel> per_u;
    bool levels_ok;
    WingCondition m_inf;
    bool jumps_ok;
    double min_jump;
    LmbStatus lmb;
    double lmb_slope;  // sup of the right-wing slope of w(., t)/k; NaN if not asymptotically linear
};

/// Exact pointwise condition at every u of the grid, the wing condition,
/// non-negative kinks, and large-moneyness behaviour.
ButterflyVerdict check_butterfly(const GenSurface& surface, const ButterflyOptions& options);
ButterflyVerdict check_butterfly(const GenSurface& surface);

}  // namespace gsvi
