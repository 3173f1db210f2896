#pragma once

#include "gsvi/surface.hpp"

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace gsvi {

struct CalendarOptions {
    std::vector<double> z_grid;
    std::vector<double> u_grid;
    std::vector<double> t_grid;
    double tol = 1e-9;
};

/// z in +/-logspace(1e-3, 1e4, 400) plus 0; u in logspace(1e-3, min(sup theta (1 - 1e-6), 1e3), 300);
/// t on the default oracle time grid.
CalendarOptions default_calendar_options(const GenSurface& surface);

struct CalendarWitness {
    std::string condition;  // "theta_decreasing", "coupling" or "uphi_decreasing"
    double z;
    double u;
    double t;
    double value;
};

/// Suprema of the positive and negative parts of F and f.
struct CompactCalendar {
    double sup_F_pos;
    double sup_F_neg;
    double sup_f_pos;
    double sup_f_neg;
    double margin_pos;  // 1 - supF+ supf-
    double margin_neg;  // 1 - supF- supf+
};

struct UphiMonotone {
    bool pass;
    double min_one_plus_f;  // 1 + f(u) = (u phi)' / phi
    double worst_u;
    double min_slope;  // min of d/du (u phi(u))
};

struct CalendarVerdict {
    bool pass;
    bool theta_monotone;
    double theta_min_slope;
    double theta_witness_t;
    double coupling_margin;  // inf of 1 + F(z) f(u)
    double coupling_z;
    double coupling_u;
    CompactCalendar compact;
    std::optional<UphiMonotone> uphi;  // only for asymptotically linear shapes
    std::vector<CalendarWitness> witnesses;
};

/// Values of F on the grid; knots contribute both one-sided values, and the
/// limit 1 is appended when the shape is asymptotically linear.
std::vector<double> elasticity_samples(const PsiShape& psi, std::span<const double> z_grid);

CompactCalendar compact_calendar(const PsiShape& psi, const PhiCurve& phi, std::span<const double> z_grid,
                                 std::span<const double> u_grid);

UphiMonotone check_uphi_monotone(const PhiCurve& phi, std::span<const double> u_grid, double tol = 1e-9);

/// Throws GridError if the u grid leaves the range of theta.
CalendarVerdict check_calendar(const GenSurface& surface, const CalendarOptions& options);
CalendarVerdict check_calendar(const GenSurface& surface);

}  // namespace gsvi
