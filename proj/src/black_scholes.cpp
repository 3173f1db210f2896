#include "gsvi/black_scholes.hpp"

#include "gsvi/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace gsvi {

namespace {

void check_inputs(double strike, double w) {
    if (!(strike > 0.0)) throw DomainError("strike must be positive");
    if (!(w >= 0.0)) throw DomainError("total variance must be non-negative");
}

}  // namespace

DPair d_pm(double k, double w) {
    if (!(w > 0.0)) {
        throw DomainError("d+/- requires w > 0");
    }
    const double s = std::sqrt(w);
    const double plus = -k / s + 0.5 * s;
    return DPair{plus, plus - s};
}

double norm_pdf(double x) {
    return std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi);
}

double norm_cdf(double x) {
    return 0.5 * std::erfc(-x / std::numbers::sqrt2);
}

double call_bs(double strike, double w) {
    check_inputs(strike, w);
    if (w == 0.0) return std::max(1.0 - strike, 0.0);
    const DPair d = d_pm(std::log(strike), w);
    return norm_cdf(d.plus) - strike * norm_cdf(d.minus);
}

double put_bs(double strike, double w) {
    check_inputs(strike, w);
    if (w == 0.0) return std::max(strike - 1.0, 0.0);
    const DPair d = d_pm(std::log(strike), w);
    return strike * norm_cdf(-d.minus) - norm_cdf(-d.plus);
}

}  // namespace gsvi
