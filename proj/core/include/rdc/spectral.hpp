#pragma once

#include <Eigen/Dense>
#include <span>
#include <vector>

#include "rdc/types.hpp"

namespace rdc {

/**
 * Closed-loop matrix of the first n_max modal coefficients a_n under the
 * certainty-equivalence feedback U = (1/c_hat) sum_{n<=N} k_n sqrt(2) a_n:
 *
 *   da/dt = A a,   A = diag(theta - n^2 pi^2 p) + (c/c_hat) g w^T,
 *
 * with g_n = -(-1)^n p n pi and w_n = sqrt(2) k_n (zero past N).  The block
 * past N is driven only through the feedback row, so the matrix is block
 * lower-triangular and the tail inherits its forcing by convolution.
 */
Eigen::MatrixXd closed_loop_matrix(const PlantParams& params, const GainSchedule& gains,
                                   double c_hat, int n_max);

/// Evolve initial modal coefficients a0 (modes 1..n_max) to time t through the
/// matrix exponential of the closed system.  Truncation past n_max neglects a
/// tail bounded by the initial-data energy times exp((theta-(n_max+1)^2 pi^2 p) t).
/// Throws std::invalid_argument when gains.N exceeds a0.size().
std::vector<double> spectral_oracle(const PlantParams& params, const GainSchedule& gains,
                                    double c_hat, std::span<const double> a0, double t);

/// Uniformly sampled closed-loop modal trajectory with its control signal.
struct OracleTrace {
    std::vector<double> times;
    std::vector<std::vector<double>> a;  ///< a[n-1][k], modes 1..n_max
    std::vector<double> U;               ///< applied control
    std::vector<double> norms;           ///< L2 norm sqrt(2 sum a_n^2)
};

OracleTrace sample_oracle_trace(const PlantParams& params, const GainSchedule& gains,
                                double c_hat, std::span<const double> a0, double dt,
                                double t_end);

/// Absolute residual of the sine-series identity for (x - x^3)/6 after
/// n_terms terms.
double series_identity_residual(double x, int n_terms);

}  // namespace rdc
