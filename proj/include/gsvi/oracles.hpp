#pragma once

#include "gsvi/numerics.hpp"
#include "gsvi/surface.hpp"

#include <string>

namespace gsvi {

/// Result of a brute-force price-level check.
struct OracleReport {
    double min_margin;
    double witness;    // strike K (convexity) or log-moneyness k (monotonicity)
    double witness_t;
    std::string witness_name;  // "K" or "k"
    std::string grid_variable;  // variable swept by the grid: "K" or "t"
    Spacing spacing;
    double grid_lo;
    double grid_hi;
    std::size_t grid_n;

    bool passed(double tol = 1e-10) const { return min_margin >= -tol; }
};

/// 2001 log-spaced strikes on [e^-5, e^5].
Grid default_strike_grid();
/// 101 log-spaced maturities on [0.01, 10].
Grid default_time_grid();

/// Minimum second divided difference of K -> C_BS(K, w(log K, t)).
/// Chords left of K = 1 are taken on put prices to avoid cancellation.
OracleReport convexity_oracle(const GenSurface& surface, double t, const Grid& strikes);
/// Minimum forward difference of t -> w(k, t).
OracleReport monotonicity_oracle(const GenSurface& surface, double k, const Grid& times);

/// Jump of K -> d_K C at K = e^k0, from second-order one-sided differences with
/// relative step h. Equals the probability mass that log S puts on k0.
double price_slope_jump(const GenSurface& surface, double t, double k0, double h = 1e-4);

}  // namespace gsvi
