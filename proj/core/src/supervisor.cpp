#include "rdc/supervisor.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "rdc/backstepping.hpp"
#include "rdc/reduced_model.hpp"

namespace rdc {

double mu_lookup(std::span<const double> event_times, int i, const TriggerConfig& cfg) {
    if (static_cast<int>(event_times.size()) < i + 2)
        throw std::invalid_argument("mu_lookup: event_times must contain tau_0..tau_{i+1}");
    const double cutoff = event_times[i + 1] - cfg.N_tilde * cfg.T;
    for (int j = 0; j <= i; ++j)
        if (event_times[j] >= cutoff - 1e-12) return event_times[j];
    // tau_i always qualifies since consecutive events are at most T apart
    return event_times[i];
}

bool check_trigger(double norm_now, double norm_at_event, double R, double a) {
    if (!(norm_at_event > 0.0)) return false;
    return norm_now >= R * (1.0 + a) * norm_at_event;
}

std::vector<double> feedback_row(const GainSchedule& sch, double c_hat,
                                 const SpatialGrid& grid) {
    const int m = grid.n_points;
    const double dx = grid.dx();
    std::vector<double> w(m, 0.0);
    const double sqrt2 = std::sqrt(2.0);
    for (int j = 0; j < m; ++j) {
        double kx = 0.0;
        for (int n = 1; n <= sch.N; ++n)
            kx += sch.k[n - 1] * sqrt2 * std::sin(n * kPi * grid.x(j));
        const double q = (j == 0 || j == m - 1) ? 0.5 * dx : dx;
        w[j] = q * kx / c_hat;
    }
    return w;
}

std::vector<double> feedback_row_full_kernel(double theta, double c_hat,
                                             const DesignParams& dp, double p,
                                             const SpatialGrid& grid) {
    const int m = grid.n_points;
    const double dx = grid.dx();
    std::vector<double> w(m, 0.0);
    for (int j = 0; j < m; ++j) {
        const double q = (j == 0 || j == m - 1) ? 0.5 * dx : dx;
        w[j] = q * ktilde(theta, grid.x(j), dp, p) / c_hat;
    }
    return w;
}

namespace {

GainSchedule design_for(double theta, const AdaptiveOptions& opt, double p) {
    if (opt.backend == DesignBackend::ReducedModel) return reduced_schedule(theta, p);
    return select_schedule(theta, opt.design, p);
}

StateProfile lerp_profile(const StateProfile& a, const StateProfile& b, double s) {
    StateProfile out;
    out.t = (1.0 - s) * a.t + s * b.t;
    out.values.resize(a.values.size());
    for (std::size_t j = 0; j < a.values.size(); ++j)
        out.values[j] = (1.0 - s) * a.values[j] + s * b.values[j];
    return out;
}

std::string kind_name(const ClassifyOutcome& oc) {
    if (!oc.set) return "degenerate";
    switch (oc.set->kind) {
        case SetKind::FullPlane: return "full_plane";
        case SetKind::ThetaLine: return "theta_line";
        case SetKind::Singleton: return "singleton";
    }
    return "degenerate";
}

struct Recorder {
    RunResult& out;
    const SpatialGrid& grid;
    const SolverConfig& solver;
    long step_count = 0;

    void sample(const StateProfile& u, double U, double norm, double theta_hat) {
        out.times.push_back(u.t);
        out.norms.push_back(norm);
        out.controls.push_back(U);
        out.theta_hats.push_back(theta_hat);
        const auto a = modal_coefficients(u, grid, solver.n_max);
        for (int n = 0; n < solver.n_max; ++n) out.modal[n].push_back(a[n]);
        if (out.keep_profiles) out.profiles.push_back(u);
    }
};

}  // namespace

RunResult run_adaptive(const PlantParams& truth, const StateProfile& u0,
                       const Estimates& init, const AdaptiveOptions& opt,
                       const SpatialGrid& grid, const SolverConfig& solver,
                       double horizon, bool keep_profiles) {
    truth.validate();
    grid.validate();
    solver.validate();
    opt.trigger.validate();
    if (!(init.c_hat > 0.0)) throw std::invalid_argument("run_adaptive: init c_hat must be > 0");
    if (!(horizon > 0.0)) throw std::invalid_argument("run_adaptive: horizon must be > 0");

    RunResult out;
    out.keep_profiles = keep_profiles;
    out.modal.assign(solver.n_max, {});
    out.trace = ModalTrace(solver.n_ident);

    CrankNicolson cn(grid, truth);
    StateProfile u = u0;
    u.t = 0.0;
    u.values.front() = 0.0;
    check_finite(u, grid, solver.blowup_norm);

    Estimates est = init;
    GainSchedule sch = design_for(est.theta_hat, opt, truth.p);
    std::vector<double> w = feedback_row(sch, est.c_hat, grid);

    auto control_of = [&](const StateProfile& s) {
        double U = 0.0;
        for (std::size_t j = 0; j < w.size(); ++j) U += w[j] * s.values[j];
        return U;
    };

    double norm0 = profile_norm(u, grid);
    out.norm0 = norm0;
    double norm_ref = norm0;
    double tau_i = 0.0;

    Recorder rec{out, grid, solver};
    double U_now = control_of(u);
    out.trace.push(0.0, modal_coefficients(u, grid, solver.n_ident), U_now, norm0);
    rec.sample(u, U_now, norm0, est.theta_hat);

    EventRecord e0;
    e0.index = 0;
    e0.tau = 0.0;
    e0.mu = 0.0;
    e0.norm_at_tau = norm0;
    e0.before = e0.after = est;
    e0.reason = "init";
    e0.set_kind = "none";
    e0.schedule_N = sch.N;
    e0.schedule_R = sch.R;
    out.log.events.push_back(e0);

    double t = 0.0;
    double deadline = opt.trigger.T;
    long step_idx = 0;

    auto handle_event = [&](double tau, const StateProfile& u_event, double norm_event,
                            const std::string& reason) {
        EventRecord er;
        er.index = static_cast<int>(out.log.events.size());
        er.tau = tau;
        er.norm_at_tau = norm_event;
        er.before = est;
        er.reason = reason;

        auto times = out.log.times();
        times.push_back(tau);
        er.mu = mu_lookup(times, er.index - 1, opt.trigger);

        const Window win = make_window(out.trace, er.mu, tau);
        if (opt.known_c) {
            const double th = update_theta_known_c(win, est.theta_hat, truth.p, truth.c,
                                                   opt.ident);
            er.set_kind = (th == est.theta_hat) ? "full_plane" : "theta_line";
            est.theta_hat = th;
        } else {
            const auto eqs = assemble_normal_equations(win, truth.p);
            er.diagnostics = eqs.modes;
            const auto oc = classify_set(eqs, opt.ident);
            er.set_kind = kind_name(oc);
            if (oc.set) est = update_estimates(est, *oc.set);
        }
        er.after = est;

        // Redesign only when the estimate moved; a failed design keeps the
        // previous schedule.
        if (est.theta_hat != er.before.theta_hat || est.c_hat != er.before.c_hat) {
            try {
                sch = design_for(est.theta_hat, opt, truth.p);
                w = feedback_row(sch, est.c_hat, grid);
            } catch (const std::exception&) {
                er.set_kind += " (design failed, schedule kept)";
            }
        }
        er.schedule_N = sch.N;
        er.schedule_R = sch.R;
        out.log.events.push_back(er);

        tau_i = tau;
        norm_ref = norm_event;
        deadline = tau + opt.trigger.T;
        // record the post-event control on the same sample time
        const double U_new = control_of(u_event);
        out.trace.push(tau, modal_coefficients(u_event, grid, solver.n_ident), U_new,
                       norm_event);
    };

    const double eps_t = 1e-12;
    while (t < horizon - eps_t) {
        const double dt_step = std::min({solver.dt, deadline - t, horizon - t});
        double b_new = 0.0;
        StateProfile u_next = cn.step_feedback(u, w, dt_step, &b_new);
        try {
            check_finite(u_next, grid, solver.blowup_norm);
        } catch (const BlowUpError& ex) {
            out.blew_up = true;
            out.blowup_time = ex.time();
            out.final_state = std::move(u_next);
            return out;  // partial artifacts stay usable
        }
        const double norm_prev = profile_norm(u, grid);
        const double norm_next = profile_norm(u_next, grid);
        const double thr = sch.R * (1.0 + opt.trigger.a) * norm_ref;

        if (norm_ref > 0.0 && norm_next >= thr && norm_prev < thr) {
            // Norm crossing inside the step: interpolate the crossing time and
            // state, roll back to it, and fire the event there.
            const double s = (thr - norm_prev) / (norm_next - norm_prev);
            StateProfile u_star = lerp_profile(u, u_next, s);
            const double tau = u_star.t;
            const double norm_star = profile_norm(u_star, grid);
            const double U_star = control_of(u_star);
            out.trace.push(tau, modal_coefficients(u_star, grid, solver.n_ident), U_star,
                           norm_star);
            handle_event(tau, u_star, norm_star, "norm-crossing");
            u = std::move(u_star);
            t = tau;
            ++step_idx;
            continue;
        }

        u = std::move(u_next);
        t = u.t;
        ++step_idx;
        double U_rec = b_new / truth.c;
        out.trace.push(t, modal_coefficients(u, grid, solver.n_ident), U_rec, norm_next);

        // Estimates switch at the event instant, so a sample landing on it
        // carries the post-event values.
        if (std::abs(t - deadline) <= eps_t && t < horizon - eps_t) {
            handle_event(t, u, norm_next, "timer");
            U_rec = control_of(u);
        }
        if (step_idx % solver.record_stride == 0 || t >= horizon - eps_t)
            rec.sample(u, U_rec, norm_next, est.theta_hat);
    }
    out.final_state = u;
    return out;
}

namespace {

RunResult run_fixed_feedback(const PlantParams& truth, const StateProfile& u0,
                             const std::vector<double>& w, double theta_label,
                             const SpatialGrid& grid, const SolverConfig& solver,
                             double horizon, bool keep_profiles) {
    RunResult out;
    out.keep_profiles = keep_profiles;
    out.modal.assign(solver.n_max, {});
    out.trace = ModalTrace(solver.n_ident);

    CrankNicolson cn(grid, truth);
    StateProfile u = u0;
    u.t = 0.0;
    u.values.front() = 0.0;
    check_finite(u, grid, solver.blowup_norm);
    out.norm0 = profile_norm(u, grid);

    Recorder rec{out, grid, solver};
    auto control_of = [&](const StateProfile& s) {
        double U = 0.0;
        for (std::size_t j = 0; j < w.size(); ++j) U += w[j] * s.values[j];
        return U;
    };
    double U_now = control_of(u);
    out.trace.push(0.0, modal_coefficients(u, grid, solver.n_ident), U_now, out.norm0);
    rec.sample(u, U_now, out.norm0, theta_label);

    double t = 0.0;
    long step_idx = 0;
    const double eps_t = 1e-12;
    while (t < horizon - eps_t) {
        const double dt_step = std::min(solver.dt, horizon - t);
        double b_new = 0.0;
        u = cn.step_feedback(u, w, dt_step, &b_new);
        try {
            check_finite(u, grid, solver.blowup_norm);
        } catch (const BlowUpError& ex) {
            out.blew_up = true;
            out.blowup_time = ex.time();
            out.final_state = u;
            return out;  // partial artifacts stay usable
        }
        t = u.t;
        ++step_idx;
        const double norm = profile_norm(u, grid);
        const double U_rec = b_new / truth.c;
        out.trace.push(t, modal_coefficients(u, grid, solver.n_ident), U_rec, norm);
        if (step_idx % solver.record_stride == 0 || t >= horizon - eps_t)
            rec.sample(u, U_rec, norm, theta_label);
    }
    out.final_state = u;
    return out;
}

}  // namespace

RunResult run_nominal(const PlantParams& truth, const StateProfile& u0, NominalKind kind,
                      const DesignParams& dp, DesignBackend backend,
                      const SpatialGrid& grid, const SolverConfig& solver, double horizon,
                      bool keep_profiles) {
    std::vector<double> w;
    if (kind == NominalKind::FullKernel) {
        w = feedback_row_full_kernel(truth.theta, truth.c, dp, truth.p, grid);
    } else if (backend == DesignBackend::ReducedModel) {
        w = feedback_row(reduced_schedule(truth.theta, truth.p), truth.c, grid);
    } else {
        w = feedback_row(select_schedule(truth.theta, dp, truth.p), truth.c, grid);
    }
    return run_fixed_feedback(truth, u0, w, truth.theta, grid, solver, horizon,
                              keep_profiles);
}

RunResult run_open_loop(const PlantParams& truth, const StateProfile& u0,
                        const SpatialGrid& grid, const SolverConfig& solver, double horizon,
                        bool keep_profiles) {
    std::vector<double> w(grid.n_points, 0.0);
    return run_fixed_feedback(truth, u0, w, truth.theta, grid, solver, horizon,
                              keep_profiles);
}

RunResult run_with_schedule(const PlantParams& truth, const StateProfile& u0,
                            const GainSchedule& sch, const SpatialGrid& grid,
                            const SolverConfig& solver, double horizon,
                            bool keep_profiles) {
    const auto w = feedback_row(sch, truth.c, grid);
    return run_fixed_feedback(truth, u0, w, sch.theta_hat, grid, solver, horizon,
                              keep_profiles);
}

}  // namespace rdc
