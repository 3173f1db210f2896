#include "gsvi/density.hpp"

#include "gsvi/black_scholes.hpp"
#include "gsvi/errors.hpp"
#include "gsvi/operator_l.hpp"

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <random>

namespace gsvi {

namespace {

// Mass beyond the last sample under an exponential fit of the last two samples.
double exponential_tail(double x_in, double x_out, double p_in, double p_out) {
    if (p_out == 0.0) return 0.0;
    const double rate = std::log(p_in / p_out) / std::abs(x_out - x_in);
    if (!(rate > 0.0)) {
        throw TailError(fmt::format("density does not decay beyond k={:.6g}", x_out));
    }
    return p_out / rate;
}

double gaussian_factor(double k, double v) {
    const double d = d_pm(k, v).minus;
    return std::exp(-0.5 * d * d) / std::sqrt(2.0 * std::numbers::pi * v);
}

// Per-cell integrals of a density with samples p at the grid x. Regular cells
// use Simpson's rule with an extra midpoint evaluation; a cell ending at an
// infinite sample (integrable singularity at a knot) goes to tanh-sinh, which
// never evaluates the endpoints.
std::vector<double> cell_integrals(const std::vector<double>& x, const std::vector<double>& p,
                                   const std::function<double(double)>& density) {
    const std::size_t n = x.size();
    std::vector<double> cells(n - 1);
    boost::math::quadrature::tanh_sinh<double> singular;
    // Simpson loses accuracy for a few cells next to a singular sample too
    constexpr std::size_t kNearSingular = 16;
    std::vector<bool> near_singular(n - 1, false);
    for (std::size_t j = 0; j < n; ++j) {
        if (std::isfinite(p[j])) continue;
        const std::size_t lo = j > kNearSingular ? j - kNearSingular : 0;
        for (std::size_t i = lo; i < std::min(n - 1, j + kNearSingular); ++i) near_singular[i] = true;
    }
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const bool finite_l = std::isfinite(p[i]);
        const bool finite_r = std::isfinite(p[i + 1]);
        const double h = x[i + 1] - x[i];
        if (finite_l && finite_r && near_singular[i]) {
            cells[i] = singular.integrate(density, x[i], x[i + 1]);
            continue;
        }
        if (finite_l && finite_r) {
            const double mid = density(x[i] + 0.5 * h);
            cells[i] = h / 6.0 * (p[i] + 4.0 * mid + p[i + 1]);
            continue;
        }
        if (finite_l == finite_r) {
            throw DomainError(fmt::format("density is not finite on [{:.6g}, {:.6g}]", x[i], x[i + 1]));
        }
        // distance s from the singular end
        const double a = finite_l ? x[i + 1] : x[i];
        const double dir = finite_l ? -1.0 : 1.0;
        const auto f = [&](double dist) {
            const double k = a + dir * dist;
            return k == a ? 0.0 : density(k);
        };
        cells[i] = singular.integrate(f, 0.0, h);
    }
    return cells;
}

double boundary_term(const SmileSlice& slice, double k) {
    return 0.5 * slice.deriv1(k, Side::right) * gaussian_factor(k, slice.value(k));
}

}  // namespace

WingDiagnostics wing_diagnostics(const SmileSlice& slice) {
    WingDiagnostics out{};
    out.small_moneyness.k = {-1e2, -1e3, -1e4};
    out.large_moneyness.k = {1e2, 1e3, 1e4};
    out.amgm_ok = true;
    for (std::size_t i = 0; i < 3; ++i) {
        const double kl = out.small_moneyness.k[i];
        out.small_moneyness.value[i] = d_pm(kl, slice.value(kl)).minus;
        const double kr = out.large_moneyness.k[i];
        const DPair d = d_pm(kr, slice.value(kr));
        out.large_moneyness.value[i] = d.plus;
        out.amgm_ok = out.amgm_ok && -d.minus >= std::sqrt(2.0 * kr) * (1.0 - 1e-12);
    }
    const auto& s = out.small_moneyness.value;
    const auto& l = out.large_moneyness.value;
    out.small_moneyness.ok = s[0] < s[1] && s[1] < s[2] && s[2] > 0.0;
    out.large_moneyness.ok = l[0] > l[1] && l[1] > l[2] && l[2] < 0.0;
    out.boundary_left = boundary_term(slice, -1e3);
    out.boundary_right = boundary_term(slice, 1e3);
    out.boundary_ok = std::abs(out.boundary_left) <= 1e-8 && std::abs(out.boundary_right) <= 1e-8;
    return out;
}

double closed_form_cdf(const SmileSlice& slice, double k, Side side) {
    const double v = slice.value(k);
    const double d = d_pm(k, v).minus;
    const Side s = slice.is_knot(k) ? side : Side::none;
    return norm_cdf(-d) + 0.5 * slice.deriv1(k, s) * gaussian_factor(k, v);
}

DensitySlice build_density(const SmileSlice& slice, const DensityOptions& options) {
    DensitySlice out{};
    out.diagnostics = wing_diagnostics(slice);
    if (!out.diagnostics.small_moneyness.ok || !out.diagnostics.large_moneyness.ok) {
        throw ArbitrageError("slice fails the small/large moneyness wing conditions");
    }

    out.k.assign(options.k_grid.points().begin(), options.k_grid.points().end());
    for (double a : slice.knots()) {
        if (a > out.k.front() && a < out.k.back() && !std::binary_search(out.k.begin(), out.k.end(), a)) {
            out.k.insert(std::lower_bound(out.k.begin(), out.k.end(), a), a);
        }
    }
    const auto density_at = [&](double k) {
        const LResult l = apply_l(slice, k);
        return gaussian_factor(k, slice.value(k)) * 0.5 * (l.left + l.right);
    };
    const std::size_t n = out.k.size();
    out.p_minus.resize(n);
    out.p_plus.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double k = out.k[i];
        const LResult l = apply_l(slice, k);
        if (l.worst() < -options.l_tol) {
            throw ArbitrageError(fmt::format("L v = {:.6g} < 0 at k={:.6g}", l.worst(), k));
        }
        const double g = gaussian_factor(k, slice.value(k));
        out.p_minus[i] = g * 0.5 * (l.left + l.right);
        out.p_plus[i] = std::exp(k) * out.p_minus[i];
        if (!std::isfinite(out.p_minus[i]) && !slice.is_knot(k)) {
            throw DomainError(fmt::format("density is not finite at k={:.6g}", k));
        }
    }

    for (const Atom& a : l_atoms(slice)) {
        if (a.mass < 0.0) {
            throw ArbitrageError(fmt::format("negative atom {:.6g} at k={:.6g}", a.mass, a.k));
        }
        out.atoms.push_back(DensityAtom{a.k, a.mass, a.mass * gaussian_factor(a.k, slice.value(a.k))});
    }

    out.tail_left = exponential_tail(out.k[1], out.k[0], out.p_minus[1], out.p_minus[0]);
    out.tail_right = exponential_tail(out.k[n - 2], out.k[n - 1], out.p_minus[n - 2], out.p_minus[n - 1]);
    const double exp_tail_left = exponential_tail(out.k[1], out.k[0], out.p_plus[1], out.p_plus[0]);
    const double exp_tail_right = exponential_tail(out.k[n - 2], out.k[n - 1], out.p_plus[n - 2], out.p_plus[n - 1]);
    for (double tail : {out.tail_left, out.tail_right, exp_tail_left, exp_tail_right}) {
        if (tail > options.tail_tol) {
            throw TailError(fmt::format("tail mass {:.3g} beyond the grid exceeds {:.3g}", tail, options.tail_tol));
        }
    }

    const auto cells = cell_integrals(out.k, out.p_minus, density_at);
    out.cdf.assign(n, 0.0);
    for (std::size_t i = 1; i < n; ++i) out.cdf[i] = out.cdf[i - 1] + cells[i - 1];
    double atom_prob = 0.0;
    double atom_exp = 0.0;
    for (const DensityAtom& a : out.atoms) {
        atom_prob += a.probability;
        atom_exp += std::exp(a.k) * a.probability;
        const auto first = std::lower_bound(out.k.begin(), out.k.end(), a.k);
        for (auto i = static_cast<std::size_t>(first - out.k.begin()); i < n; ++i) out.cdf[i] += a.probability;
    }
    for (double& c : out.cdf) c += out.tail_left;

    out.mass = out.cdf.back() + out.tail_right;
    const auto exp_cells = cell_integrals(out.k, out.p_plus, [&](double k) { return std::exp(k) * density_at(k); });
    double body = 0.0;
    for (double c : exp_cells) body += c;
    out.mean_exp = body + atom_exp + exp_tail_left + exp_tail_right;
    return out;
}

DensitySlice build_density(const GenSurface& surface, double t, const DensityOptions& options) {
    return build_density(SmileSlice::from_surface(surface, t), options);
}

double cdf_quantile(const DensitySlice& slice, double u) {
    if (!(u > 0.0 && u < 1.0)) {
        throw DomainError("quantile level must lie in (0, 1)");
    }
    const auto& k = slice.k;
    const auto& c = slice.cdf;
    const double target = u * slice.mass;

    if (target < c.front()) {
        // Exponential left tail: mass below x is tail_left * exp(rate (x - k0)).
        const double rate = slice.p_minus.front() / slice.tail_left;
        return k.front() + std::log(target / slice.tail_left) / rate;
    }
    if (target >= c.back()) {
        const double rate = slice.p_minus.back() / slice.tail_right;
        return k.back() - std::log((slice.mass - target) / slice.tail_right) / rate;
    }
    const auto j = static_cast<std::size_t>(std::upper_bound(c.begin(), c.end(), target) - c.begin());
    double step = 0.0;
    for (const DensityAtom& a : slice.atoms) {
        if (a.k == k[j]) step += a.probability;
    }
    const double below = c[j] - step;  // CDF just left of k[j]
    if (target >= below) return k[j];
    const double lo = c[j - 1];
    if (below <= lo) return k[j];
    return k[j - 1] + (k[j] - k[j - 1]) * (target - lo) / (below - lo);
}

std::vector<double> sample_log_moneyness(const DensitySlice& slice, std::span<const double> uniforms) {
    std::vector<double> out;
    out.reserve(uniforms.size());
    for (double u : uniforms) out.push_back(cdf_quantile(slice, u));
    return out;
}

std::vector<double> uniform_stream(std::size_t n, std::uint64_t seed, bool antithetic) {
    std::mt19937_64 engine(seed);
    std::uniform_real_distribution<double> dist(0.0, 1.0);
    const auto draw = [&] {
        double u = 0.0;
        while (u == 0.0) u = dist(engine);
        return u;
    };
    std::vector<double> out;
    out.reserve(n);
    while (out.size() < n) {
        const double u = draw();
        out.push_back(u);
        if (antithetic && out.size() < n) out.push_back(1.0 - u);
    }
    return out;
}

void write_density_csv(std::ostream& out, const DensitySlice& slice) {
    out << "k,p_minus,p_plus,cdf\n";
    for (std::size_t i = 0; i < slice.k.size(); ++i) {
        out << fmt::format("{:.17g},{:.17g},{:.17g},{:.17g}\n", slice.k[i], slice.p_minus[i], slice.p_plus[i],
                           slice.cdf[i]);
    }
    for (const DensityAtom& a : slice.atoms) {
        out << fmt::format("# atom,{:.17g},{:.17g}\n", a.k, a.probability);
    }
}

}  // namespace gsvi
