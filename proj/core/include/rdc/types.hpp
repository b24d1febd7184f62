#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace rdc {

inline constexpr double kPi = 3.14159265358979323846;

/// Constants of the boundary-actuated reaction-diffusion plant
/// u_t = p u_xx + theta u on (0,1), u(t,0) = 0, u(t,1) = c U(t).
struct PlantParams {
    double p = 1.0;      ///< diffusion coefficient, > 0
    double theta = 0.0;  ///< reaction coefficient, any real
    double c = 1.0;      ///< high-frequency gain, > 0

    void validate() const {
        if (!(p > 0.0)) throw std::invalid_argument("PlantParams: p must be > 0");
        if (!(c > 0.0)) throw std::invalid_argument("PlantParams: c must be > 0");
        if (!std::isfinite(theta)) throw std::invalid_argument("PlantParams: theta must be finite");
    }
};

/// Uniform grid on [0,1] including both boundary nodes.
struct SpatialGrid {
    int n_points = 100;

    double dx() const { return 1.0 / (n_points - 1); }
    double x(int j) const { return j * dx(); }

    void validate() const {
        if (n_points < 3) throw std::invalid_argument("SpatialGrid: n_points must be >= 3");
    }
};

/// Solution profile u[t] sampled on SpatialGrid nodes.
/// values.front() is always 0; values.back() is the imposed boundary value c*U(t).
struct StateProfile {
    double t = 0.0;
    std::vector<double> values;
};

struct SolverConfig {
    double dt = 1e-4;            ///< time step
    int n_max = 40;              ///< tracked mode count (trajectory output)
    int record_stride = 10;      ///< output sampling stride, in solver steps
    double blowup_norm = 1e12;   ///< abort threshold on the L2 norm
    int n_ident = 5;             ///< mode count recorded for the identifier

    void validate() const {
        if (!(dt > 0.0)) throw std::invalid_argument("SolverConfig: dt must be > 0");
        if (n_max < 1) throw std::invalid_argument("SolverConfig: n_max must be >= 1");
        if (record_stride < 1) throw std::invalid_argument("SolverConfig: record_stride must be >= 1");
        if (n_ident < 1) throw std::invalid_argument("SolverConfig: n_ident must be >= 1");
    }
};

/// Knobs of the kernel-based nominal feedback design.
struct DesignParams {
    double beta = 0.0;    ///< kernel shift, >= 0
    double sigma = 1.0;   ///< decay target, in (0, pi^2 + beta/p)
    double B = 0.1;       ///< Young-inequality weight, > 0
    double M = 1.0;       ///< margin factor of the alternative selection bound, >= 1
    int quad_panels = 10000;  ///< composite-trapezoid panels for gain quadrature
    int n_cap = 200;          ///< hard cap of the mode-count search

    void validate(double p) const {
        if (!(beta >= 0.0)) throw std::invalid_argument("DesignParams: beta must be >= 0");
        if (!(B > 0.0)) throw std::invalid_argument("DesignParams: B must be > 0");
        if (!(M >= 1.0)) throw std::invalid_argument("DesignParams: M must be >= 1");
        if (!(sigma > 0.0 && sigma < kPi * kPi + beta / p))
            throw std::invalid_argument("DesignParams: sigma must lie in (0, pi^2 + beta/p)");
        if (quad_panels < 16) throw std::invalid_argument("DesignParams: quad_panels too small");
    }
};

/// A designed feedback: gains for modes 1..N plus its decay certificate
/// ||u[t]|| <= R exp(-omega t) ||u0||.
struct GainSchedule {
    double theta_hat = 0.0;  ///< reaction coefficient the design assumed
    int N = 1;               ///< number of actuated modes
    std::vector<double> k;   ///< gains k_1..k_N
    double R = 1.0;          ///< overshoot certificate, >= 1
    double omega = 1.0;      ///< decay certificate, > 0
};

/// Current parameter estimates; c_hat stays positive through every update.
struct Estimates {
    double theta_hat = 0.0;
    double c_hat = 1.0;
};

/// Event-trigger knobs: dwell bound T, overshoot slack a, window depth N_tilde.
struct TriggerConfig {
    double T = 0.05;
    double a = 1.0;
    int N_tilde = 1;

    void validate() const {
        if (!(T > 0.0)) throw std::invalid_argument("TriggerConfig: T must be > 0");
        if (!(a > 0.0)) throw std::invalid_argument("TriggerConfig: a must be > 0");
        if (N_tilde < 1) throw std::invalid_argument("TriggerConfig: N_tilde must be >= 1");
    }
};

/// Raised when the state norm exceeds the blow-up guard or turns non-finite.
class BlowUpError : public std::runtime_error {
public:
    BlowUpError(double t, double norm)
        : std::runtime_error("state blow-up at t=" + std::to_string(t) +
                             " (||u||=" + std::to_string(norm) + ")"),
          t_(t), norm_(norm) {}
    double time() const { return t_; }
    double norm() const { return norm_; }

private:
    double t_;
    double norm_;
};

}  // namespace rdc
