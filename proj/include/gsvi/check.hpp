#pragma once

#include "gsvi/butterfly.hpp"
#include "gsvi/calendar.hpp"
#include "gsvi/numerics.hpp"
#include "gsvi/oracles.hpp"
#include "gsvi/surface.hpp"

#include <vector>

namespace gsvi {

struct CheckOptions {
    Grid k_grid = Grid::linear(-5.0, 5.0, 2001);
    std::vector<double> t_list{0.1, 0.5, 1.0, 2.0, 5.0, 10.0};
    Grid time_grid = default_time_grid();  // maturities for the monotonicity oracle
    double oracle_tol = 1e-10;
};

struct SurfaceCheck {
    CalendarVerdict calendar;
    ButterflyVerdict butterfly;
    std::vector<OracleReport> convexity;  // one per maturity in t_list, strikes e^k
    OracleReport monotonicity;            // worst over the k grid
    double min_pointwise_l;               // over k grid x t_list, one-sided at knots
    double min_l_k;
    double min_l_t;
    bool convexity_ok;
    bool monotonicity_ok;
    bool pass;
};

/// Analytic verdicts plus the brute-force price checks; pass is their conjunction.
SurfaceCheck check_surface(const GenSurface& surface, const CheckOptions& options = {});

}  // namespace gsvi
