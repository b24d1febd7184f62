#include "rdc/bessel.hpp"

#include <cmath>
#include <stdexcept>

namespace rdc {

namespace {

constexpr double kMaxArg = 50.0;
constexpr int kMaxTerms = 400;

// sum_{m>=0} (q/4)^m / (2 m! (m+1)!) in quad precision.
// Terms are generated by the ratio recurrence t_{m} = t_{m-1} * q / (4 m (m+1)).
__float128 ratio_series_q(__float128 q) {
    __float128 term = 0.5Q;
    __float128 sum = term;
    __float128 peak = 0.5Q;
    for (int m = 1; m < kMaxTerms; ++m) {
        term *= q / (4.0Q * m * (m + 1));
        sum += term;
        __float128 mag = term < 0 ? -term : term;
        if (mag > peak) peak = mag;
        if (mag < peak * 1e-38Q) break;
    }
    return sum;
}

double ratio_series_d(double q) {
    double term = 0.5;
    double sum = term;
    for (int m = 1; m < kMaxTerms; ++m) {
        term *= q / (4.0 * m * (m + 1));
        sum += term;
        if (std::abs(term) < 1e-17 * std::abs(sum) + 1e-300) break;
    }
    return sum;
}

}  // namespace

double i1_ratio(double q) {
    // |q| <= 25 keeps the alternating branch far from cancellation trouble
    // in double; larger arguments go through the quad-precision sum.
    if (std::abs(q) <= 25.0) return ratio_series_d(q);
    return static_cast<double>(ratio_series_q(static_cast<__float128>(q)));
}

double bessel_i1(double x) {
    if (!(x >= 0.0) || x > kMaxArg)
        throw std::domain_error("bessel_i1: argument outside [0, 50]");
    return static_cast<double>(static_cast<__float128>(x) *
                               ratio_series_q(static_cast<__float128>(x) * x));
}

double bessel_j1(double x) {
    if (!(x >= 0.0) || x > kMaxArg)
        throw std::domain_error("bessel_j1: argument outside [0, 50]");
    return static_cast<double>(static_cast<__float128>(x) *
                               ratio_series_q(-static_cast<__float128>(x) * x));
}

}  // namespace rdc
