#pragma once

#include <span>
#include <vector>

#include "rdc/types.hpp"

namespace rdc {

/// Kernel K(z,s) of the state transform, built on I_1.  The diagonal z = s is
/// the removable point; there the value is -(theta+beta)/(2p) * s.
double kernel_K(double theta, const DesignParams& dp, double p, double z, double s);

/// Inverse-transform kernel L(z,s), same structure on J_1.
double kernel_L(double theta, const DesignParams& dp, double p, double z, double s);

/// Boundary gain function ktilde(x) = K(1, x) for theta > 0, identically 0 for
/// theta <= 0.
double ktilde(double theta, double x, const DesignParams& dp, double p);

/// ktilde sampled on a uniform grid of n nodes over [0,1].
std::vector<double> ktilde_grid(double theta, int n, const DesignParams& dp, double p);

/// Modal gains k_n = int_0^1 ktilde(x) sqrt(2) sin(n pi x) dx, n = 1..N,
/// by composite trapezoid with dp.quad_panels panels.
std::vector<double> modal_gains(double theta, int N, const DesignParams& dp, double p);

/// int_0^1 ktilde(x)^2 dx at the design quadrature resolution.
double ktilde_sq_integral(double theta, const DesignParams& dp, double p);

/// The two-branch damping coefficient of the target-system estimate,
/// gamma = sqrt(1+B) * f(mu, sigma) with mu = sqrt(beta/p).
/// Throws std::domain_error when sigma sits at or above the branch pole.
double gamma_coeff(const DesignParams& dp, double p);

/**
 * Mode-count selection and decay certificate.
 *
 * For theta > 0 picks the smallest N with
 *   gamma * Lbound * sqrt(int ktilde^2 - sum_{n<=N} k_n^2) < 1,
 * where Lbound = 1 + (theta+beta)/(4 p sqrt(3)), and certifies
 *   R = G * Lbound * Kbound / (1 - gamma * tail * Lbound),  omega = sigma * p,
 * with Kbound = 1 + (1/2) sqrt((theta+beta)/(3p)) I_1(sqrt((theta+beta)/p))
 * and G = sqrt(1 + 1/B).
 *
 * For theta <= 0 the schedule is the trivial one: N = 1, zero gain, R = 1,
 * omega = pi^2 p.  Throws std::runtime_error if the search hits dp.n_cap.
 */
GainSchedule select_schedule(double theta, const DesignParams& dp, double p);

/// Forward Volterra transform of a grid-sampled profile (lower-triangular
/// quadrature in the second argument).
std::vector<double> volterra_transform(std::span<const double> profile, double theta,
                                       const DesignParams& dp, double p);

/// Inverse transform built on kernel_L.
std::vector<double> volterra_inverse(std::span<const double> profile, double theta,
                                     const DesignParams& dp, double p);

/// L2 distance between profile and inverse(transform(profile)).
double volterra_roundtrip(std::span<const double> profile, double theta,
                          const DesignParams& dp, double p);

}  // namespace rdc
