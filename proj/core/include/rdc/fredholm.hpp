#pragma once

#include <span>
#include <vector>

namespace rdc {

/**
 * Rank-one Fredholm transform pair on grid samples over [0,1]:
 *
 *   w(x) = u(x) - (x + gamma k(x)) int_0^1 k(s) u(s) ds
 *   u(x) = w(x) + beta (x + gamma k(x)) int_0^1 k(s) w(s) ds
 *
 * with beta = 1 / (1 - int s k(s) ds - gamma ||k||^2).  Profile and gain
 * samples share one uniform grid.  Because beta is built from the same
 * trapezoid functionals the transforms use, the discrete pair inverts
 * exactly; grid resolution shows up in beta versus its continuum value.
 */
struct FredholmTransform {
    /// Throws std::domain_error when the beta denominator is below tol.
    FredholmTransform(std::span<const double> gain, double gamma, double tol = 1e-10);

    std::vector<double> forward(std::span<const double> profile) const;
    std::vector<double> inverse(std::span<const double> profile) const;
    double beta() const { return beta_; }

private:
    std::vector<double> gain_;
    std::vector<double> shape_;  // x + gamma k(x)
    double gamma_;
    double beta_;
};

/// L2 distance between profile and inverse(forward(profile)).
double fredholm_roundtrip(std::span<const double> profile, std::span<const double> gain,
                          double gamma);

}  // namespace rdc
