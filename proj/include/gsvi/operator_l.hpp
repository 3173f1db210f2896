#pragma once

#include "gsvi/smile_slice.hpp"
#include "gsvi/surface.hpp"

#include <vector>

namespace gsvi {

/// Density operator written with k-derivatives of the total variance:
/// (1 - k w'/(2w))^2 - w'^2/4 (1/w + 1/4) + w''/2.
double l_kform(double k, double w, double wk, double wkk);

/// Same operator in the rescaled variable z = k phi(theta):
/// (1 - z Psi'/(2 Psi))^2 - (theta phi)^2 [ (Psi'^2/Psi - 2 Psi'') / (4 theta) + Psi'^2 / 16 ].
double l_zform(double z, double psi, double dpsi, double d2psi, double theta, double phi);

/// Point mass of the distribution L w, located at a kink of v.
struct Atom {
    double k;
    double mass;  // half the jump of v' at k
};

struct LResult {
    double left;   // one-sided values; equal away from knots
    double right;
    bool at_knot;
    std::vector<Atom> atoms;  // every atom of the slice

    /// Throws KnotError when evaluated at a knot.
    double pointwise() const;
    double worst() const { return left < right ? left : right; }
};

std::vector<Atom> l_atoms(const SmileSlice& slice);

/// k-form evaluation on a slice.
LResult apply_l(const SmileSlice& slice, double k);
/// z-form evaluation on a surface.
LResult apply_l(const GenSurface& surface, double k, double t);

struct LocalVariance {
    double numerator;    // d_t w
    double denominator;  // pointwise L w
    double value;
};

/// d_t w / L w. Throws ArbitrageError when L w <= 0 and KnotError at a knot.
LocalVariance dupire_local_var(const GenSurface& surface, double k, double t);

}  // namespace gsvi
