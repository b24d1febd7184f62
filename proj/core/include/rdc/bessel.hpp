#pragma once

namespace rdc {

/// Modified Bessel function I_1 by ascending power series.
/// Supported argument range [0, 50]; relative accuracy 1e-12 or better.
/// Throws std::domain_error outside the supported range.
double bessel_i1(double x);

/// Bessel function J_1 by ascending power series, same range and accuracy.
/// The alternating series is summed in 128-bit precision so the large-x
/// cancellation does not eat into the result.
double bessel_j1(double x);

/// The entire function q -> I_1(sqrt(q))/sqrt(q), extended through q = 0.
/// For q < 0 it equals J_1(sqrt(-q))/sqrt(-q); at q = 0 the value is 1/2.
/// This is the single evaluator behind both backstepping kernels.
double i1_ratio(double q);

}  // namespace rdc
