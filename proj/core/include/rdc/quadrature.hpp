#pragma once

#include <cmath>
#include <span>
#include <vector>

namespace rdc {

/// Trapezoid weights on a uniform grid of n nodes with spacing dx.
inline std::vector<double> trapezoid_weights(int n, double dx) {
    std::vector<double> w(n, dx);
    w.front() *= 0.5;
    w.back() *= 0.5;
    return w;
}

/// Composite trapezoid of uniformly sampled values.
inline double trapz_uniform(std::span<const double> y, double dx) {
    if (y.size() < 2) return 0.0;
    long double s = 0.5L * (y.front() + y.back());
    for (std::size_t i = 1; i + 1 < y.size(); ++i) s += y[i];
    return static_cast<double>(s * dx);
}

/// Composite trapezoid on a (possibly non-uniform) grid.
inline double trapz(std::span<const double> x, std::span<const double> y) {
    long double s = 0.0L;
    for (std::size_t i = 1; i < x.size(); ++i)
        s += 0.5L * (x[i] - x[i - 1]) * (y[i] + y[i - 1]);
    return static_cast<double>(s);
}

/// L2 norm of grid samples under trapezoid quadrature.
inline double l2_norm_uniform(std::span<const double> u, double dx) {
    long double s = 0.5L * (static_cast<long double>(u.front()) * u.front() +
                            static_cast<long double>(u.back()) * u.back());
    for (std::size_t i = 1; i + 1 < u.size(); ++i)
        s += static_cast<long double>(u[i]) * u[i];
    return std::sqrt(static_cast<double>(s * dx));
}

}  // namespace rdc
