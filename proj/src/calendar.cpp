#include "gsvi/calendar.hpp"

#include "gsvi/errors.hpp"
#include "gsvi/numerics.hpp"
#include "gsvi/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace gsvi {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::vector<double> default_u_grid(const ThetaCurve& theta) {
    const double hi = std::min(theta.sup_value() * (1.0 - 1e-6), 1e3);
    const auto grid = Grid::logarithmic(1e-3, hi, 300);
    return {grid.points().begin(), grid.points().end()};
}

}  // namespace

CalendarOptions default_calendar_options(const GenSurface& surface) {
    CalendarOptions out;
    const auto z = Grid::symmetric_log(1e-3, 1e4, 400, true);
    out.z_grid.assign(z.points().begin(), z.points().end());
    out.u_grid = default_u_grid(surface.theta());
    const auto t = default_time_grid();
    out.t_grid.assign(t.points().begin(), t.points().end());
    return out;
}

std::vector<double> elasticity_samples(const PsiShape& psi, std::span<const double> z_grid) {
    std::vector<double> out;
    out.reserve(z_grid.size() + 2);
    for (double z : z_grid) {
        if (psi.is_knot(z)) {
            out.push_back(psi_elasticity(psi, z, Side::left));
            out.push_back(psi_elasticity(psi, z, Side::right));
        } else {
            out.push_back(psi_elasticity(psi, z));
        }
    }
    for (double a : psi.knots()) {
        if (std::find(z_grid.begin(), z_grid.end(), a) == z_grid.end()) {
            out.push_back(psi_elasticity(psi, a, Side::left));
            out.push_back(psi_elasticity(psi, a, Side::right));
        }
    }
    if (psi.asymptotically_linear()) {
        out.push_back(1.0);
    }
    return out;
}

CompactCalendar compact_calendar(const PsiShape& psi, const PhiCurve& phi, std::span<const double> z_grid,
                                 std::span<const double> u_grid) {
    CompactCalendar out{};
    for (double F : elasticity_samples(psi, z_grid)) {
        out.sup_F_pos = std::max(out.sup_F_pos, F);
        out.sup_F_neg = std::max(out.sup_F_neg, -F);
    }
    for (double u : u_grid) {
        const double f = phi_elasticity(phi, u);
        out.sup_f_pos = std::max(out.sup_f_pos, f);
        out.sup_f_neg = std::max(out.sup_f_neg, -f);
    }
    out.margin_pos = 1.0 - out.sup_F_pos * out.sup_f_neg;
    out.margin_neg = 1.0 - out.sup_F_neg * out.sup_f_pos;
    return out;
}

UphiMonotone check_uphi_monotone(const PhiCurve& phi, std::span<const double> u_grid, double tol) {
    UphiMonotone out{true, kInf, u_grid.empty() ? 0.0 : u_grid.front(), kInf};
    for (double u : u_grid) {
        const double g = 1.0 + phi_elasticity(phi, u);
        if (g < out.min_one_plus_f) {
            out.min_one_plus_f = g;
            out.worst_u = u;
        }
        out.min_slope = std::min(out.min_slope, phi.value(u) + u * phi.deriv(u));
    }
    out.pass = out.min_one_plus_f >= -tol;
    return out;
}

CalendarVerdict check_calendar(const GenSurface& surface, const CalendarOptions& options) {
    const double u_cap = surface.theta().sup_value();
    for (double u : options.u_grid) {
        if (!(u > 0.0) || u >= u_cap) {
            throw GridError("calendar u grid must lie inside the range of theta");
        }
    }

    CalendarVerdict out{};
    out.theta_min_slope = kInf;
    for (double t : options.t_grid) {
        const double slope = surface.theta().deriv(t);
        if (slope < out.theta_min_slope) {
            out.theta_min_slope = slope;
            out.theta_witness_t = t;
        }
    }
    out.theta_monotone = out.theta_min_slope >= -options.tol;
    if (!out.theta_monotone) {
        out.witnesses.push_back({"theta_decreasing", 0.0, surface.theta().value(out.theta_witness_t),
                                 out.theta_witness_t, out.theta_min_slope});
    }

    // Pair each F sample with its z so the witness can be reported.
    const PsiShape& psi = surface.psi();
    std::vector<std::pair<double, double>> zF;
    for (double z : options.z_grid) {
        if (psi.is_knot(z)) {
            zF.emplace_back(z, psi_elasticity(psi, z, Side::left));
            zF.emplace_back(z, psi_elasticity(psi, z, Side::right));
        } else {
            zF.emplace_back(z, psi_elasticity(psi, z));
        }
    }
    if (psi.asymptotically_linear()) {
        zF.emplace_back(kInf, 1.0);
    }

    out.coupling_margin = kInf;
    for (double u : options.u_grid) {
        const double f = phi_elasticity(surface.phi(), u);
        for (const auto& [z, F] : zF) {
            const double m = 1.0 + F * f;
            if (m < out.coupling_margin) {
                out.coupling_margin = m;
                out.coupling_z = z;
                out.coupling_u = u;
            }
        }
    }
    if (out.coupling_margin < -options.tol) {
        out.witnesses.push_back({"coupling", out.coupling_z, out.coupling_u, 0.0, out.coupling_margin});
    }

    out.compact = compact_calendar(psi, surface.phi(), options.z_grid, options.u_grid);
    if (psi.asymptotically_linear()) {
        out.uphi = check_uphi_monotone(surface.phi(), options.u_grid, options.tol);
        if (!out.uphi->pass) {
            out.witnesses.push_back({"uphi_decreasing", 0.0, out.uphi->worst_u, 0.0, out.uphi->min_one_plus_f});
        }
    }
    out.pass = out.theta_monotone && out.coupling_margin >= -options.tol;
    return out;
}

CalendarVerdict check_calendar(const GenSurface& surface) {
    return check_calendar(surface, default_calendar_options(surface));
}

}  // namespace gsvi
