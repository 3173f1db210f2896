#pragma once

#include "gsvi/smile_slice.hpp"

namespace gsvi {

/// Largest m with E[S^(1+m)] finite for a right-wing slope alpha of the total
/// variance: (alpha/4 - 1 + 1/alpha) / 2. Throws PreconditionError unless 0 < alpha <= 2.
double critical_moment(double alpha);

/// Exponential decay rate of e^((1+m)k) p_-(k) along the right wing: critical_moment(alpha) - m.
double tail_decay_rate(double alpha, double m);

struct WingSlopeFit {
    double alpha;          // least-squares slope of v on [k_lo, k_hi]
    double max_abs_curvature;  // max |v''| on the same window
};

WingSlopeFit fit_right_wing_slope(const SmileSlice& slice, double k_lo = 50.0, double k_hi = 200.0);

/// Least-squares slope of log(e^((1+m)k) p_-(k)) on [k_lo, k_hi].
double tail_log_slope(const SmileSlice& slice, double m, double k_lo = 200.0, double k_hi = 1000.0);

struct MomentBracket {
    double lo;  // largest m found convergent
    double hi;  // smallest m found divergent
    int iterations;
};

/// Bisection on m in [0, 1]. A moment counts as divergent when the integral of
/// e^((1+m)k) p_-(k) over [-40, 40 * 2^j] grows by more than 10% on the last doubling (j = 7).
MomentBracket bracket_critical_moment(const SmileSlice& slice, int iterations = 30);

}  // namespace gsvi
