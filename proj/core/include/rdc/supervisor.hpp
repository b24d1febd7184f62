#pragma once

#include <span>
#include <string>
#include <vector>

#include "rdc/identifier.hpp"
#include "rdc/plant.hpp"
#include "rdc/types.hpp"

namespace rdc {

struct EventRecord {
    int index = 0;
    double tau = 0.0;
    double mu = 0.0;
    double norm_at_tau = 0.0;
    Estimates before, after;
    std::string reason;    ///< "init" | "timer" | "norm-crossing"
    std::string set_kind;  ///< "none" | "full_plane" | "theta_line" | "singleton" | "degenerate"
    int schedule_N = 0;
    double schedule_R = 0.0;
    std::vector<ModeNormalEqs> diagnostics;  ///< per-mode identifier quantities
};

struct EventLog {
    std::vector<EventRecord> events;
    std::vector<double> times() const {
        std::vector<double> t;
        t.reserve(events.size());
        for (const auto& e : events) t.push_back(e.tau);
        return t;
    }
};

/// Window anchor: the earliest past event time within the look-back horizon,
/// mu_{i+1} = min { tau_j : j <= i, tau_j >= tau_{i+1} - N_tilde T }.
double mu_lookup(std::span<const double> event_times, int i, const TriggerConfig& cfg);

/// Norm-crossing test: fires when norm_now >= R (1+a) norm_at_event with a
/// nonzero reference norm.  The zero-reference case is the caller's timer branch.
bool check_trigger(double norm_now, double norm_at_event, double R, double a);

enum class DesignBackend { Backstepping, ReducedModel };

struct AdaptiveOptions {
    TriggerConfig trigger;
    IdentifierConfig ident;
    DesignParams design;
    DesignBackend backend = DesignBackend::Backstepping;
    bool known_c = false;  ///< identify theta only, treating c as known
};

/// One recorded output channel set; modal holds a_1..a_n_max at the stride.
struct RunResult {
    std::vector<double> times, norms, controls;
    std::vector<double> theta_hats;              ///< per-sample estimate (adaptive/passive)
    std::vector<std::vector<double>> modal;      ///< modal[n-1][k]
    std::vector<StateProfile> profiles;          ///< optional dense dump (stride samples)
    EventLog log;
    ModalTrace trace{1};
    StateProfile final_state;
    double norm0 = 0.0;
    bool blew_up = false;
    double blowup_time = 0.0;
    bool keep_profiles = false;
};

/**
 * The full adaptive closed loop: certainty-equivalence feedback frozen
 * between events, regulation-triggered events (dwell bound T or norm
 * crossing located by linear interpolation), window anchoring, identifier
 * update and gain redesign at every event.
 */
RunResult run_adaptive(const PlantParams& truth, const StateProfile& u0,
                       const Estimates& init, const AdaptiveOptions& opt,
                       const SpatialGrid& grid, const SolverConfig& solver,
                       double horizon, bool keep_profiles = false);

enum class NominalKind { Truncated, FullKernel };

/// Closed loop with known parameters: truncated modal gains or the full
/// kernel feedback.
RunResult run_nominal(const PlantParams& truth, const StateProfile& u0, NominalKind kind,
                      const DesignParams& dp, DesignBackend backend,
                      const SpatialGrid& grid, const SolverConfig& solver, double horizon,
                      bool keep_profiles = false);

/// Uncontrolled plant (U = 0).
RunResult run_open_loop(const PlantParams& truth, const StateProfile& u0,
                        const SpatialGrid& grid, const SolverConfig& solver, double horizon,
                        bool keep_profiles = false);

/// Closed loop under a fixed, caller-supplied schedule (known c).
RunResult run_with_schedule(const PlantParams& truth, const StateProfile& u0,
                            const GainSchedule& sch, const SpatialGrid& grid,
                            const SolverConfig& solver, double horizon,
                            bool keep_profiles = false);

/// Build the discrete feedback row w with U(t) = w . u[t] for a schedule:
/// w_j = q_j k(theta_hat, x_j) / c_hat, q the trapezoid weights.
std::vector<double> feedback_row(const GainSchedule& sch, double c_hat,
                                 const SpatialGrid& grid);

/// Same for the full kernel ktilde(theta, x)/c_hat.
std::vector<double> feedback_row_full_kernel(double theta, double c_hat,
                                             const DesignParams& dp, double p,
                                             const SpatialGrid& grid);

}  // namespace rdc
