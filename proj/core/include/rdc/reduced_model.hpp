#pragma once

#include <Eigen/Dense>
#include <span>

#include "rdc/types.hpp"

namespace rdc {

/// Finite-dimensional reduced model: first N modal coefficients in the
/// orthonormal sine basis, single boundary input.
struct ReducedModel {
    int N = 1;
    Eigen::MatrixXd A_open;  ///< -p pi^2 diag(1..N^2) + theta I
    Eigen::VectorXd g;       ///< input column, g_n = -p sqrt(2) (-1)^n n pi
};

/// Smallest N >= 1 with p (N+1)^2 pi^2 > theta (the neglected tail is then
/// open-loop stable).
int select_N_rm(double theta, double p);

ReducedModel make_reduced_model(double theta, double p, int N);

struct ControllabilityReport {
    bool controllable = false;
    int rank = 0;
    double sv_ratio = 0.0;  ///< smallest/largest singular value of the controllability matrix
};

ControllabilityReport controllability_check(const ReducedModel& model, double tol = 1e-10);

/// Single-input pole placement by characteristic-polynomial matching
/// (Ackermann).  Desired poles must be distinct; throws on an uncontrollable
/// pair.  Returns the row k with A_open + g k having the requested spectrum.
Eigen::RowVectorXd pole_place(const ReducedModel& model, std::span<const double> poles);

struct DecayEstimate {
    double R = 1.0;
    double omega = 1.0;
};

/// Empirical decay certificate of a Hurwitz matrix: omega is the spectral
/// abscissa shaved by `margin`, R the supremum of |exp(A t)| exp(omega t)
/// over a dense sweep of [0, 20/omega].  Throws on a non-Hurwitz input.
DecayEstimate estimate_decay(const Eigen::MatrixXd& A_closed, double margin = 0.05);

/**
 * Full reduced-model schedule: default poles -p n^2 pi^2 (n = 1..N), gains by
 * pole placement, certificate from the n_cert-mode coupled closure (feedback
 * block plus driven stable tail) with a 5% pad on R.
 */
GainSchedule reduced_schedule(double theta, double p, int n_cert = 40);

}  // namespace rdc
