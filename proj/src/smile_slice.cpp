#include "gsvi/smile_slice.hpp"

#include "gsvi/errors.hpp"

#include <algorithm>
#include <memory>

namespace gsvi {

namespace {

Side mirror(Side side) {
    switch (side) {
    case Side::left: return Side::right;
    case Side::right: return Side::left;
    case Side::none: break;
    }
    return Side::none;
}

}  // namespace

SmileSlice::SmileSlice(Definition def) : def_(std::move(def)) {
    if (!def_.value || !def_.deriv1 || !def_.deriv2) {
        throw ParameterError("slice needs value and both derivatives");
    }
    if (def_.knots.size() != def_.jumps.size()) {
        throw ParameterError("slice: one jump size per knot");
    }
    if (!std::is_sorted(def_.knots.begin(), def_.knots.end())) {
        throw ParameterError("slice: knots must be increasing");
    }
}

SmileSlice SmileSlice::from_surface(const GenSurface& surface, double t) {
    const double th = surface.theta().value(t);
    const double ph = surface.phi().value(th);
    const PsiShape& psi = surface.psi();

    auto knots_z = std::vector<double>(psi.knots().begin(), psi.knots().end());
    std::vector<double> knots_k;
    std::vector<double> jumps;
    for (std::size_t i = 0; i < knots_z.size(); ++i) {
        knots_k.push_back(knots_z[i] / ph);
        jumps.push_back(th * ph * psi.jumps()[i]);
    }
    // Map k to z, landing exactly on the shape's knot when k is a mapped knot.
    auto to_z = [knots_k, knots_z, ph](double k) {
        const auto it = std::find(knots_k.begin(), knots_k.end(), k);
        if (it != knots_k.end()) return knots_z[static_cast<std::size_t>(it - knots_k.begin())];
        return k * ph;
    };

    auto shape = std::make_shared<const PsiShape>(psi);
    std::optional<double> slope_neg;
    std::optional<double> slope_pos;
    if (psi.slope_neg()) slope_neg = th * ph * *psi.slope_neg();
    if (psi.slope_pos()) slope_pos = th * ph * *psi.slope_pos();

    return SmileSlice(Definition{
        [shape, th, ph](double k) { return th * shape->value(k * ph); },
        [shape, to_z, th, ph](double k, Side s) { return th * ph * shape->deriv1(to_z(k), s); },
        [shape, to_z, th, ph](double k, Side s) { return th * ph * ph * shape->deriv2(to_z(k), s); },
        std::move(knots_k),
        std::move(jumps),
        slope_neg,
        slope_pos,
    });
}

SmileSlice SmileSlice::reflected() const {
    auto base = std::make_shared<const Definition>(def_);
    std::vector<double> knots;
    std::vector<double> jumps;
    for (std::size_t i = def_.knots.size(); i-- > 0;) {
        knots.push_back(-def_.knots[i]);
        jumps.push_back(def_.jumps[i]);
    }
    std::optional<double> slope_neg;
    std::optional<double> slope_pos;
    if (def_.slope_pos) slope_neg = -*def_.slope_pos;
    if (def_.slope_neg) slope_pos = -*def_.slope_neg;
    return SmileSlice(Definition{
        [base](double k) { return base->value(-k); },
        [base](double k, Side s) { return -base->deriv1(-k, mirror(s)); },
        [base](double k, Side s) { return base->deriv2(-k, mirror(s)); },
        std::move(knots),
        std::move(jumps),
        slope_neg,
        slope_pos,
    });
}

bool SmileSlice::is_knot(double k) const {
    return std::find(def_.knots.begin(), def_.knots.end(), k) != def_.knots.end();
}

double SmileSlice::deriv1(double k, Side side) const {
    if (side == Side::none && is_knot(k)) {
        throw KnotError("v' requested at a knot without a side");
    }
    return def_.deriv1(k, side);
}

double SmileSlice::deriv2(double k, Side side) const {
    if (side == Side::none && is_knot(k)) {
        throw KnotError("v'' requested at a knot without a side");
    }
    return def_.deriv2(k, side);
}

}  // namespace gsvi
