#include "gsvi/butterfly.hpp"

#include "gsvi/black_scholes.hpp"
#include "gsvi/errors.hpp"
#include "gsvi/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

namespace gsvi {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kScanLo = 1e-4;
constexpr double kScanHi = 1e4;

const std::vector<double>& scan_grid() {
    static const std::vector<double> grid = [] {
        const auto g = Grid::symmetric_log(kScanLo, kScanHi, 2000, true);
        return std::vector<double>(g.points().begin(), g.points().end());
    }();
    return grid;
}

struct Pieces {
    double curvature;
    double denominator;
    double numerator;
};

Pieces pieces(const PsiShape& psi, double z, double u, Side side) {
    const double p0 = psi.value(z);
    const double p1 = psi.deriv1(z, side);
    const double p2 = psi.deriv2(z, side);
    const double curvature = p1 * p1 / p0 - 2.0 * p2;
    const double a = 1.0 - z * p1 / (2.0 * p0);
    return Pieces{curvature, curvature / (4.0 * u) + p1 * p1 / 16.0, a * a};
}

bool member(Region region, const Pieces& p) {
    switch (region) {
    case Region::positive_denominator: return p.denominator > 0.0;
    case Region::positive_curvature: return p.curvature > 0.0;
    case Region::nonpositive_curvature_positive_denominator: return p.curvature <= 0.0 && p.denominator > 0.0;
    }
    return false;
}

struct Infimum {
    double value;
    double z;
};

// Minimum of g over the scan grid, the extra points and the knot neighbours,
// refined by golden section around the best grid cell, then compared with the
// wing limits. g returns +inf outside the admissible set.
Infimum scan_infimum(const PsiShape& psi, const std::function<double(double)>& g, std::vector<double> extra,
                     std::optional<double> tail_neg, std::optional<double> tail_pos) {
    std::vector<double> pts = scan_grid();
    for (double a : psi.knots()) {
        const double d = 1e-8 * std::max(1.0, std::abs(a));
        pts.push_back(a - d);
        pts.push_back(a + d);
    }
    pts.insert(pts.end(), extra.begin(), extra.end());
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

    std::vector<double> vals(pts.size());
    std::size_t best = pts.size();
    for (std::size_t i = 0; i < pts.size(); ++i) {
        vals[i] = psi.is_knot(pts[i]) ? kInf : g(pts[i]);
        if (std::isnan(vals[i])) vals[i] = kInf;
        if (best == pts.size() || vals[i] < vals[best]) best = i;
    }

    Infimum out{kInf, kNaN};
    if (best < pts.size() && std::isfinite(vals[best])) {
        out = {vals[best], pts[best]};
        const double lo = pts[best == 0 ? 0 : best - 1];
        const double hi = pts[std::min(best + 1, pts.size() - 1)];
        if (hi > lo) {
            const auto guarded = [&](double z) {
                if (psi.is_knot(z)) return kInf;
                const double v = g(z);
                return std::isnan(v) ? kInf : v;
            };
            const auto refined =
                golden_section_minimize(guarded, lo, hi, 1e-12 * std::max(1.0, std::abs(pts[best])), 300);
            if (refined.value < out.value) out = {refined.value, refined.x};
        }
    }
    if (tail_pos && std::isfinite(g(pts.back())) && *tail_pos < out.value) out = {*tail_pos, kInf};
    if (tail_neg && std::isfinite(g(pts.front())) && *tail_neg < out.value) out = {*tail_neg, -kInf};
    return out;
}

std::vector<double> nudged(std::span<const double> roots) {
    std::vector<double> out;
    for (double r : roots) {
        const double d = 1e-9 * std::max(1.0, std::abs(r));
        out.insert(out.end(), {r - d, r, r + d});
    }
    return out;
}

std::vector<double> knot_free_roots(const PsiShape& psi, const std::function<double(double)>& f) {
    const auto guarded = [&](double z) { return psi.is_knot(z) ? kNaN : f(z); };
    auto roots = sign_change_roots(guarded, scan_grid(), 1e-12);
    std::erase_if(roots, [&](double r) {
        return std::any_of(psi.knots().begin(), psi.knots().end(),
                           [r](double a) { return std::abs(r - a) < 1e-7 * std::max(1.0, std::abs(a)); });
    });
    return roots;
}

double sup_uphi(const GenSurface& surface, std::span<const double> u_grid) {
    double sup = 0.0;
    for (double u : u_grid) sup = std::max(sup, u * surface.phi().value(u));
    if (!std::isfinite(surface.theta().theta_infinity())) {
        if (const auto m = surface.phi().m_infinity()) {
            sup = std::max(sup, *m);
        } else {
            sup = std::max(sup, 1e8 * surface.phi().value(1e8));
        }
    }
    return sup;
}

}  // namespace

double fly_curvature(const PsiShape& psi, double z, Side side) {
    const double p1 = psi.deriv1(z, side);
    return p1 * p1 / psi.value(z) - 2.0 * psi.deriv2(z, side);
}

double fly_denominator(const PsiShape& psi, double z, double u, Side side) {
    return pieces(psi, z, u, side).denominator;
}

double fly_numerator(const PsiShape& psi, double z, Side side) {
    const double a = 1.0 - z * psi.deriv1(z, side) / (2.0 * psi.value(z));
    return a * a;
}

double fly_ratio(const PsiShape& psi, double z, double u, Side side) {
    const Pieces p = pieces(psi, z, u, side);
    return p.numerator / p.denominator;
}

std::string to_string(Region region) {
    switch (region) {
    case Region::positive_denominator: return "positive_denominator";
    case Region::positive_curvature: return "positive_curvature";
    case Region::nonpositive_curvature_positive_denominator: return "nonpositive_curvature_positive_denominator";
    }
    return "unknown";
}

bool in_region(const PsiShape& psi, Region region, double z, double u) {
    if (psi.is_knot(z)) return false;
    return member(region, pieces(psi, z, u, Side::none));
}

RegionClassification classify_regions(const PsiShape& psi, std::optional<double> u) {
    RegionClassification out;
    out.curvature_roots = knot_free_roots(psi, [&](double z) { return fly_curvature(psi, z); });
    if (u) {
        const double level = *u;
        out.denominator_roots = knot_free_roots(psi, [&](double z) { return fly_denominator(psi, z, level); });
    }
    return out;
}

ButterflyBound butterfly_bound(const PsiShape& psi, double u, Region region) {
    const auto regions = classify_regions(psi, u);
    std::vector<double> extra = nudged(regions.curvature_roots);
    const auto more = nudged(regions.denominator_roots);
    extra.insert(extra.end(), more.begin(), more.end());

    std::optional<double> tail_neg;
    std::optional<double> tail_pos;
    if (psi.asymptotically_linear()) {
        tail_neg = 4.0 / (*psi.slope_neg() * *psi.slope_neg());
        tail_pos = 4.0 / (*psi.slope_pos() * *psi.slope_pos());
    }
    const auto g = [&](double z) {
        const Pieces p = pieces(psi, z, u, Side::none);
        return member(region, p) ? p.numerator / p.denominator : kInf;
    };
    const Infimum inf = scan_infimum(psi, g, std::move(extra), tail_neg, tail_pos);
    return ButterflyBound{u, inf.value, inf.z, region};
}

double sym_svi_a(double y, double u) {
    return 16.0 * u * y * (y + 1.0) / (8.0 * (y - 2.0) + u * y * (y - 1.0));
}

double sym_svi_y(double u) {
    if (!(u >= 0.0 && u < 4.0)) {
        throw DomainError("Y(u) is defined for 0 <= u < 4");
    }
    const double c = 2.0 / (1.0 - u / 4.0);
    return c + std::sqrt(c * c + c);
}

double sym_svi_a_star(double u) { return sym_svi_a(sym_svi_y(u), u); }

double sym_svi_bound(double u) { return u < 4.0 ? sym_svi_a_star(u) : 16.0; }

double gj_combined_bound(double phi_value) {
    return 16.0 * std::min(1.0, 1.0 / (phi_value * phi_value));
}

double power_norm_band_edge(double nu) {
    if (!(nu > 1.0)) throw DomainError("power_norm_band_edge: nu must exceed 1");
    return std::pow(2.0 * (nu - 1.0), 1.0 / nu);
}

double power_norm_wing_cap(double nu) {
    if (!(nu > 1.0)) throw DomainError("power_norm_wing_cap: nu must exceed 1");
    const double log_mid = (1.0 - nu) / nu * std::log(2.0 * nu - 2.0);
    return 4.0 * nu * std::exp(log_mid - std::log(2.0 * nu - 1.0) / nu);
}

CurvePeak wing_curve_peak(const PhiCurve& phi) {
    const auto g = [&phi](double log_u) {
        const double u = std::exp(log_u);
        const double m = u * phi.value(u);
        return m * m * (1.0 / u + 0.25);
    };
    // coarse scan first so the golden section starts on the right hump
    const Grid grid = Grid::linear(std::log(1e-3), std::log(1e3), 401);
    const auto& pts = grid.points();
    std::size_t best = 0;
    for (std::size_t i = 1; i < pts.size(); ++i) {
        if (g(pts[i]) > g(pts[best])) best = i;
    }
    const double a = pts[best == 0 ? 0 : best - 1];
    const double b = pts[std::min(best + 1, pts.size() - 1)];
    const auto peak = golden_section_minimize([&g](double x) { return -g(x); }, a, b, 1e-12, 300);
    const double value = -peak.value;
    return CurvePeak{std::exp(peak.x), value, 1.0 / std::sqrt(value)};
}

EasyNecessary easy_necessary(const PsiShape& psi, double m_infinity, NecessaryScope scope) {
    if (!psi.asymptotically_linear()) {
        throw PreconditionError("wing condition needs an asymptotically linear Psi");
    }
    const auto gap = [&](double z, Side side) {
        const double p1 = psi.deriv1(z, side);
        if (p1 == 0.0) return kInf;
        return std::abs(4.0 / p1 - 2.0 * z / psi.value(z));
    };
    const auto g = [&](double z) {
        if (scope == NecessaryScope::nonpositive_curvature && fly_curvature(psi, z) > 0.0) return kInf;
        return gap(z, Side::none);
    };
    std::vector<double> extra;
    if (scope == NecessaryScope::nonpositive_curvature) {
        extra = nudged(classify_regions(psi).curvature_roots);
    }
    const double slope_neg = std::abs(*psi.slope_neg());
    const double slope_pos = std::abs(*psi.slope_pos());
    Infimum inf = scan_infimum(psi, g, std::move(extra), 2.0 / slope_neg, 2.0 / slope_pos);
    if (scope == NecessaryScope::whole_line) {
        for (double a : psi.knots()) {
            for (Side side : {Side::left, Side::right}) {
                const double v = gap(a, side);
                if (v < inf.value) inf = {v, a};
            }
        }
    }
    return EasyNecessary{inf.value, inf.z, inf.value - m_infinity};
}

std::array<GjCondition, 5> gj_sufficient(double rho, const PhiCurve& phi, const ThetaCurve& theta,
                                         std::span<const double> u_grid, std::span<const double> t_grid,
                                         double tol) {
    const double skew = 1.0 + std::abs(rho);
    double m1 = kInf, m2 = kInf, m3 = kInf, m4 = kInf, m5 = kInf;
    for (double t : t_grid) m1 = std::min(m1, theta.deriv(t));
    for (double u : u_grid) {
        const double p = phi.value(u);
        const double dp = phi.deriv(u);
        m2 = std::min(m2, p + u * dp);
        m3 = std::min(m3, -dp);
        m4 = std::min(m4, 4.0 - u * p * skew);
        m5 = std::min(m5, 4.0 - u * p * p * skew);
    }
    return {{
        {"theta_nondecreasing", m1 >= -tol, m1},
        {"phi_plus_u_dphi_nonnegative", m2 >= -tol, m2},
        {"phi_decreasing", m3 > 0.0, m3},
        {"u_phi_below_4", m4 > 0.0, m4},
        {"u_phi_squared_at_most_4", m5 >= -tol, m5},
    }};
}

PsiUpperBound psi_upper_bound(const PsiShape& psi, double m_infinity) {
    if (!psi.asymptotically_linear() || !(*psi.slope_pos() > 0.0)) {
        throw PreconditionError("upper bound needs an asymptotically linear Psi with a positive right slope");
    }
    if (!(m_infinity > 0.0) || !std::isfinite(m_infinity)) {
        throw PreconditionError("upper bound needs 0 < M_inf < inf");
    }
    const double m = m_infinity;
    // Tail condition: Psi' > 0, 4/Psi' - 2z/Psi >= M and 2z/Psi >= M (the latter keeps K_s >= 0).
    const auto tail_gap = [&](double z) {
        const Side side = psi.is_knot(z) ? Side::right : Side::none;
        const double p0 = psi.value(z);
        const double p1 = psi.deriv1(z, side);
        if (!(p1 > 0.0)) return -1.0;
        return std::min(4.0 / p1 - 2.0 * z / p0 - m, 2.0 * z / p0 - m);
    };

    std::vector<double> zs{0.0};
    const auto pos = Grid::logarithmic(kScanLo, kScanHi, 2000);
    zs.insert(zs.end(), pos.points().begin(), pos.points().end());

    PsiUpperBound out{};
    out.k_l = 0.5 * m;
    std::size_t last_bad = zs.size();
    for (std::size_t i = zs.size(); i-- > 0;) {
        if (tail_gap(zs[i]) < 0.0) {
            last_bad = i;
            break;
        }
    }
    if (last_bad + 1 >= zs.size()) {
        out.found_start = false;
        out.pass = false;
        out.witness_z = last_bad < zs.size() ? zs[last_bad] : zs.back();
        out.worst_margin = tail_gap(zs.back());
        return out;
    }
    out.found_start = true;
    double z_plus = zs[last_bad + 1];
    if (last_bad != zs.size()) {
        const auto roots = sign_change_roots(tail_gap, std::vector<double>{zs[last_bad], zs[last_bad + 1]}, 1e-12);
        if (!roots.empty() && tail_gap(roots.back()) >= 0.0) z_plus = roots.back();
    }
    out.z_plus = z_plus;
    out.u_plus = psi.value(z_plus);
    out.k_s = z_plus / std::sqrt(out.u_plus) - 0.5 * m * std::sqrt(out.u_plus);
    out.kappa = out.k_s / (std::sqrt(2.0) * out.k_l);
    const double lambda = 1.0 / out.k_l;
    const double kappa2 = out.kappa * out.kappa;

    out.worst_margin = kInf;
    out.witness_z = z_plus;
    for (double z : zs) {
        if (z < z_plus) continue;
        const double bound = kappa2 + lambda * z - out.kappa * std::sqrt(kappa2 + 2.0 * lambda * z);
        const double margin = bound - psi.value(z);
        if (margin < out.worst_margin) {
            out.worst_margin = margin;
            out.witness_z = z;
        }
    }
    out.pass = out.worst_margin >= -1e-9 * std::max(1.0, psi.value(out.witness_z));
    return out;
}

std::string to_string(LmbStatus status) {
    switch (status) {
    case LmbStatus::ok: return "ok";
    case LmbStatus::marginal: return "marginal";
    case LmbStatus::violated: return "violated";
    }
    return "unknown";
}

ButterflyOptions default_butterfly_options(const GenSurface& surface) {
    ButterflyOptions out;
    const double hi = std::min(surface.theta().sup_value() * (1.0 - 1e-6), 1e3);
    const auto grid = Grid::logarithmic(1e-3, hi, 300);
    out.u_grid.assign(grid.points().begin(), grid.points().end());
    return out;
}

ButterflyVerdict check_butterfly(const GenSurface& surface, const ButterflyOptions& options) {
    const PsiShape& psi = surface.psi();
    const ThetaCurve& theta = surface.theta();
    ButterflyVerdict out{};

    out.levels_ok = true;
    for (double u : options.u_grid) {
        const double uphi = u * surface.phi().value(u);
        const auto b = butterfly_bound(psi, u, Region::positive_denominator);
        const double lhs = uphi * uphi;
        const bool ok = lhs <= b.bound + options.tol;
        out.per_u.push_back(PerLevel{u, lhs, b.bound, b.argmin_z, ok});
        out.levels_ok = out.levels_ok && ok;
    }

    out.m_inf = WingCondition{false, false, kNaN, kNaN, kNaN, true};
    const double theta_inf = theta.theta_infinity();
    if (psi.asymptotically_linear() && theta_inf >= theta.sup_value()) {
        out.m_inf.applicable = true;
        if (std::isfinite(theta_inf)) {
            // sup of u phi(u) over (0, theta_inf) for an increasing product
            const double top = theta_inf * surface.phi().value(theta_inf);
            const auto b = butterfly_bound(psi, theta_inf, Region::nonpositive_curvature_positive_denominator);
            out.m_inf.finite_branch = true;
            out.m_inf.lhs = top * top;
            out.m_inf.bound = b.bound;
            out.m_inf.argmin_z = b.argmin_z;
        } else {
            const double m = surface.phi().m_infinity().value_or(1e8 * surface.phi().value(1e8));
            const auto e = easy_necessary(psi, m, NecessaryScope::nonpositive_curvature);
            out.m_inf.lhs = m;
            out.m_inf.bound = e.infimum;
            out.m_inf.argmin_z = e.argmin_z;
        }
        out.m_inf.ok = out.m_inf.lhs <= out.m_inf.bound + options.tol;
    }

    out.min_jump = kInf;
    for (double j : psi.jumps()) out.min_jump = std::min(out.min_jump, j);
    out.jumps_ok = psi.jumps().empty() || out.min_jump >= -1e-12;

    if (psi.asymptotically_linear()) {
        out.lmb_slope = sup_uphi(surface, options.u_grid) * *psi.slope_pos();
        if (std::abs(out.lmb_slope - 2.0) <= 1e-12) out.lmb = LmbStatus::marginal;
        else out.lmb = out.lmb_slope < 2.0 ? LmbStatus::ok : LmbStatus::violated;
    } else {
        // d_+ must head to -inf along the right wing at every sampled level.
        out.lmb_slope = kNaN;
        out.lmb = LmbStatus::ok;
        const auto& us = options.u_grid;
        for (double u : {us.front(), us[us.size() / 2], us.back()}) {
            const double ph = surface.phi().value(u);
            double prev = kInf;
            for (double k : {1e2, 1e3, 1e4}) {
                const double d = d_pm(k, u * psi.value(k * ph)).plus;
                if (!(d < prev)) out.lmb = LmbStatus::violated;
                prev = d;
            }
            if (!(prev < 0.0)) out.lmb = LmbStatus::violated;
        }
    }

    out.pass = out.levels_ok && out.m_inf.ok && out.jumps_ok && out.lmb == LmbStatus::ok;
    return out;
}

ButterflyVerdict check_butterfly(const GenSurface& surface) {
    return check_butterfly(surface, default_butterfly_options(surface));
}

}  // namespace gsvi
