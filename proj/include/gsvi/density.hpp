#pragma once

#include "gsvi/numerics.hpp"
#include "gsvi/smile_slice.hpp"
#include "gsvi/surface.hpp"

#include <array>
#include <cstdint>
#include <ostream>
#include <span>
#include <vector>

namespace gsvi {

/// Three samples of a wing quantity at growing |k|.
struct WingTrend {
    std::array<double, 3> k;
    std::array<double, 3> value;
    bool ok;
};

struct WingDiagnostics {
    WingTrend small_moneyness;  // d_- at k = -1e2, -1e3, -1e4: increasing and positive
    WingTrend large_moneyness;  // d_+ at k = 1e2, 1e3, 1e4: decreasing and negative
    bool amgm_ok;               // -d_- >= sqrt(2k) at the large-moneyness points
    double boundary_left;       // v'/(2 sqrt(2 pi v)) exp(-d_-^2/2) at k = -1e3
    double boundary_right;      // same at k = 1e3
    bool boundary_ok;           // both at most 1e-8 in absolute value
    bool ok() const { return small_moneyness.ok && large_moneyness.ok && amgm_ok && boundary_ok; }
};

WingDiagnostics wing_diagnostics(const SmileSlice& slice);

/// Point mass of log S at a kink of the slice.
struct DensityAtom {
    double k;
    double operator_mass;  // mass of the atom of L v
    double probability;    // operator_mass * n(d_-) / sqrt(v)
};

struct DensityOptions {
    Grid k_grid = Grid::linear(-40.0, 40.0, 16001);
    double l_tol = 1e-10;     // pointwise L below -l_tol is arbitrage
    double tail_tol = 1e-3;   // largest acceptable extrapolated tail mass
};

/// Density of log S for one maturity.
struct DensitySlice {
    std::vector<double> k;
    std::vector<double> p_minus;
    std::vector<double> p_plus;  // e^k p_minus, the density under the share measure
    std::vector<double> cdf;     // includes the left tail and atom steps
    std::vector<DensityAtom> atoms;
    double tail_left;   // extrapolated mass below k.front()
    double tail_right;  // extrapolated mass above k.back()
    double mass;        // total probability, tails and atoms included
    double mean_exp;    // E[e^X]
    WingDiagnostics diagnostics;
};

/// Knots of the slice are inserted into the grid; cells are integrated with Simpson's
/// rule, and tanh-sinh where the density is infinite at a knot. Throws ArbitrageError when
/// L < -l_tol or the wing diagnostics fail, TailError when a tail does not decay.
DensitySlice build_density(const SmileSlice& slice, const DensityOptions& options = {});
DensitySlice build_density(const GenSurface& surface, double t, const DensityOptions& options = {});

/// CDF of log S in closed form: N(-d_-) + v'/(2 sqrt(2 pi v)) exp(-d_-^2/2).
double closed_form_cdf(const SmileSlice& slice, double k, Side side = Side::right);

/// Inverse of the normalised CDF. A uniform landing on an atom step maps to the
/// atom itself. Throws DomainError unless 0 < u < 1.
double cdf_quantile(const DensitySlice& slice, double u);
std::vector<double> sample_log_moneyness(const DensitySlice& slice, std::span<const double> uniforms);

/// n uniforms in (0, 1) from a seeded mt19937_64; antithetic pairs (u, 1 - u) when requested.
std::vector<double> uniform_stream(std::size_t n, std::uint64_t seed, bool antithetic);

/// CSV with header k,p_minus,p_plus,cdf and trailing `# atom,k,mass` lines.
void write_density_csv(std::ostream& out, const DensitySlice& slice);

}  // namespace gsvi
