#pragma once

#include <string>

#include "rdc/supervisor.hpp"
#include "rdc/types.hpp"

namespace rdc {

/// Observer-based continuous adaptation baseline: a copy of the plant driven
/// by the measured state with norm-weighted output injection, a full-kernel
/// control evaluated at the running estimate, and a gradient update of
/// theta_hat.
struct PassiveConfig {
    double observer_gain = 3.0;     ///< coefficient of the ||u||^2 (u - u_hat) injection
    double adaptation_gain = 200.0; ///< gradient gain of the theta_hat update
    double theta0 = 0.1;

    void validate() const {
        if (!(observer_gain > 0.0))
            throw std::invalid_argument("PassiveConfig: observer_gain must be > 0");
        if (!(adaptation_gain > 0.0))
            throw std::invalid_argument("PassiveConfig: adaptation_gain must be > 0");
    }
};

struct PassiveState {
    StateProfile u_hat;
    double theta_hat = 0.0;
};

/**
 * Co-advance plant and observer by one step:
 *   - plant: u_t = p u_xx + theta u, boundary c U with the full-kernel
 *     feedback at the current theta_hat (zero control for theta_hat <= 0);
 *   - observer: u_hat_t = p u_hat_xx + theta_hat u + g ||u||^2 (u - u_hat),
 *     u_hat(0) = 0, u_hat(1) = U, injection treated implicitly;
 *   - estimate: explicit trapezoid on d theta_hat/dt = g_a int (u - u_hat) u.
 * Returns the applied control value U(t+dt).
 */
double step_passive(StateProfile& u, PassiveState& ps, const PlantParams& truth,
                    const PassiveConfig& cfg, const DesignParams& dp,
                    const SpatialGrid& grid, double dt);

/// Full baseline run; theta_hats carries the continuous estimate.
RunResult run_passive(const PlantParams& truth, const StateProfile& u0,
                      const PassiveConfig& cfg, const DesignParams& dp,
                      const SpatialGrid& grid, const SolverConfig& solver, double horizon,
                      bool keep_profiles = false);

/// Side-by-side metrics of two runs sharing truth and initial data.
struct CompareReport {
    double norm0 = 0.0;
    double peak_a = 0.0, peak_b = 0.0;
    double t_half_a = -1.0, t_half_b = -1.0;    ///< first time ||u|| <= 0.5 ||u0||
    double t_tenth_a = -1.0, t_tenth_b = -1.0;  ///< first time ||u|| <= 0.1 ||u0||
    double final_norm_a = 0.0, final_norm_b = 0.0;
    double final_theta_a = 0.0, final_theta_b = 0.0;
    double max_abs_norm_gap = 0.0;              ///< sup_t |norm_a - norm_b|
};

/// Throws std::invalid_argument when the runs do not share u0 (norm check).
CompareReport compare_runs(const RunResult& a, const RunResult& b);

std::string format_report(const CompareReport& rep);

}  // namespace rdc
