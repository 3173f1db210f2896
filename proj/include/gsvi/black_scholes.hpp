#pragma once

namespace gsvi {

/// Spot 1, zero rates; k is log-strike, w total implied variance.
struct DPair {
    double plus;
    double minus;
};

/// d_+/- = -k/sqrt(w) +/- sqrt(w)/2. Throws DomainError for w <= 0.
DPair d_pm(double k, double w);

double norm_pdf(double x);
/// Standard normal CDF through erfc, accurate in both tails.
double norm_cdf(double x);

/// Undiscounted call on a unit forward. w = 0 gives the intrinsic value.
/// Throws DomainError for K <= 0 or w < 0.
double call_bs(double strike, double w);
double put_bs(double strike, double w);

}  // namespace gsvi
