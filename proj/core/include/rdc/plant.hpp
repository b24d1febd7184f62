#pragma once

#include <functional>
#include <span>
#include <vector>

#include "rdc/quadrature.hpp"
#include "rdc/types.hpp"

namespace rdc {

/// Trapezoid approximation of a_n(t) = int_0^1 sin(n pi x) u(t,x) dx.
double modal_project(const StateProfile& state, const SpatialGrid& grid, int n);

/// Trapezoid L2 norm of the profile.
double profile_norm(const StateProfile& state, const SpatialGrid& grid);

StateProfile make_profile(const SpatialGrid& grid, double t,
                          const std::function<double(double)>& f);

/**
 * Crank-Nicolson stepper for u_t = p u_xx + theta u with u(t,0) = 0 and a
 * Dirichlet value at x = 1.  The old-level boundary value is read from
 * state.values.back(); the new-level value is either supplied (known input)
 * or resolved self-consistently against a linear feedback functional.
 *
 * Interior solves are tridiagonal (Thomas); the feedback variant adds one
 * scalar bordering equation, so a step stays O(n_points).
 */
class CrankNicolson {
public:
    CrankNicolson(const SpatialGrid& grid, const PlantParams& params);

    /// Advance one step imposing boundary value b_new = c*U at the new level.
    StateProfile step(const StateProfile& state, double b_new, double dt) const;

    /**
     * Advance one step with the implicit boundary relation
     *   u_new[last] = sum_j w[j] * u_new[j],
     * where w is the (already scaled) feedback row: w_j = c * q_j k(x_j) / c_hat
     * with q the trapezoid weights.  Returns the new profile; the resolved
     * boundary value is written to *b_out when non-null.
     */
    StateProfile step_feedback(const StateProfile& state, std::span<const double> w,
                               double dt, double* b_out = nullptr) const;

    const SpatialGrid& grid() const { return grid_; }
    const PlantParams& params() const { return params_; }

private:
    SpatialGrid grid_;
    PlantParams params_;

    void solve_interior(std::span<const double> u, double b_new, double dt,
                        std::vector<double>& out) const;
};

/// Guard shared by every stepping loop.
void check_finite(const StateProfile& state, const SpatialGrid& grid, double blowup_norm);

/// One Crank-Nicolson step under a known control value: imposes the boundary
/// value params.c * u_ctrl at the new level (the old level sits in the state)
/// and runs the blow-up guard on the result.
StateProfile step_fd(const StateProfile& state, const PlantParams& params, double u_ctrl,
                     const SpatialGrid& grid, const SolverConfig& config);

/**
 * Recorded closed-loop data: per-mode coefficients a_n(t_k), their running
 * trapezoid integrals F_n(t_k), the running input integral V(t_k) and the
 * state norm.  F and V are exact trapezoid cumulatives of the recorded
 * samples, so differencing them recovers the per-step increments.
 */
class ModalTrace {
public:
    ModalTrace(int n_modes) : a_(n_modes), f_(n_modes) {}

    void push(double t, std::span<const double> a, double u_ctrl, double norm);
    /// Replace the most recent sample (event-time rollback).
    void replace_last(double t, std::span<const double> a, double u_ctrl, double norm);

    int n_modes() const { return static_cast<int>(a_.size()); }
    std::size_t size() const { return times_.size(); }
    const std::vector<double>& times() const { return times_; }
    const std::vector<double>& a(int n) const { return a_[n - 1]; }  ///< mode index 1-based
    const std::vector<double>& F(int n) const { return f_[n - 1]; }
    const std::vector<double>& V() const { return v_; }
    const std::vector<double>& U() const { return u_; }
    const std::vector<double>& norms() const { return norms_; }

private:
    std::vector<double> times_, v_, u_, norms_;
    std::vector<std::vector<double>> a_, f_;
};

/// Project a profile onto modes 1..n_modes in one sweep.
std::vector<double> modal_coefficients(const StateProfile& state, const SpatialGrid& grid,
                                       int n_modes);

}  // namespace rdc
