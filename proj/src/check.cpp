#include "gsvi/check.hpp"

#include "gsvi/operator_l.hpp"

#include <cmath>
#include <limits>

namespace gsvi {

SurfaceCheck check_surface(const GenSurface& surface, const CheckOptions& options) {
    SurfaceCheck out{};
    out.calendar = check_calendar(surface);
    out.butterfly = check_butterfly(surface);

    std::vector<double> strikes;
    for (double k : options.k_grid.points()) strikes.push_back(std::exp(k));
    const Grid strike_grid = Grid::from_points(std::move(strikes));

    out.convexity_ok = true;
    out.min_pointwise_l = std::numeric_limits<double>::infinity();
    for (double t : options.t_list) {
        out.convexity.push_back(convexity_oracle(surface, t, strike_grid));
        out.convexity_ok = out.convexity_ok && out.convexity.back().passed(options.oracle_tol);
        for (double k : options.k_grid.points()) {
            const double l = apply_l(surface, k, t).worst();
            if (l < out.min_pointwise_l) {
                out.min_pointwise_l = l;
                out.min_l_k = k;
                out.min_l_t = t;
            }
        }
    }

    bool first = true;
    for (double k : options.k_grid.points()) {
        const OracleReport r = monotonicity_oracle(surface, k, options.time_grid);
        if (first || r.min_margin < out.monotonicity.min_margin) out.monotonicity = r;
        first = false;
    }
    out.monotonicity_ok = out.monotonicity.passed(options.oracle_tol);

    out.pass = out.calendar.pass && out.butterfly.pass && out.convexity_ok && out.monotonicity_ok;
    return out;
}

}  // namespace gsvi
