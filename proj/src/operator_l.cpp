#include "gsvi/operator_l.hpp"

#include "gsvi/errors.hpp"

#include <fmt/format.h>

namespace gsvi {

double l_kform(double k, double w, double wk, double wkk) {
    const double a = 1.0 - k * wk / (2.0 * w);
    return a * a - 0.25 * wk * wk * (1.0 / w + 0.25) + 0.5 * wkk;
}

double l_zform(double z, double psi, double dpsi, double d2psi, double theta, double phi) {
    const double a = 1.0 - z * dpsi / (2.0 * psi);
    const double scale = theta * phi;
    const double curvature = (dpsi * dpsi / psi - 2.0 * d2psi) / (4.0 * theta) + dpsi * dpsi / 16.0;
    return a * a - scale * scale * curvature;
}

double LResult::pointwise() const {
    if (at_knot) {
        throw KnotError("L w has an atom here; use the one-sided values");
    }
    return left;
}

std::vector<Atom> l_atoms(const SmileSlice& slice) {
    std::vector<Atom> atoms;
    for (std::size_t i = 0; i < slice.knots().size(); ++i) {
        atoms.push_back(Atom{slice.knots()[i], 0.5 * slice.jumps()[i]});
    }
    return atoms;
}

LResult apply_l(const SmileSlice& slice, double k) {
    LResult out{};
    out.atoms = l_atoms(slice);
    out.at_knot = slice.is_knot(k);
    const double w = slice.value(k);
    const auto eval = [&](Side side) {
        return l_kform(k, w, slice.deriv1(k, side), slice.deriv2(k, side));
    };
    if (out.at_knot) {
        out.left = eval(Side::left);
        out.right = eval(Side::right);
    } else {
        out.left = out.right = eval(Side::none);
    }
    return out;
}

LResult apply_l(const GenSurface& surface, double k, double t) {
    const double th = surface.theta().value(t);
    const double ph = surface.phi().value(th);
    const PsiShape& psi = surface.psi();
    const double z = k * ph;

    LResult out{};
    for (std::size_t i = 0; i < psi.knots().size(); ++i) {
        out.atoms.push_back(Atom{psi.knots()[i] / ph, 0.5 * th * ph * psi.jumps()[i]});
    }
    out.at_knot = psi.is_knot(z);
    const double p0 = psi.value(z);
    const auto eval = [&](Side side) {
        return l_zform(z, p0, psi.deriv1(z, side), psi.deriv2(z, side), th, ph);
    };
    if (out.at_knot) {
        out.left = eval(Side::left);
        out.right = eval(Side::right);
    } else {
        out.left = out.right = eval(Side::none);
    }
    return out;
}

LocalVariance dupire_local_var(const GenSurface& surface, double k, double t) {
    const double denominator = apply_l(surface, k, t).pointwise();
    const double numerator = surface.partials(k, t).dt;
    if (!(denominator > 0.0)) {
        throw ArbitrageError(fmt::format("L w = {:.6g} <= 0 at k={:.6g}, t={:.6g}", denominator, k, t));
    }
    return LocalVariance{numerator, denominator, numerator / denominator};
}

}  // namespace gsvi
