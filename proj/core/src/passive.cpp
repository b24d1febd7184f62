#include "rdc/passive.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "rdc/backstepping.hpp"
#include "rdc/quadrature.hpp"

namespace rdc {

namespace {

double inner_product(const SpatialGrid& grid, const std::vector<double>& a,
                     const std::vector<double>& b) {
    const double dx = grid.dx();
    long double s = 0.5L * (static_cast<long double>(a.front()) * b.front() +
                            static_cast<long double>(a.back()) * b.back());
    for (int j = 1; j + 1 < grid.n_points; ++j)
        s += static_cast<long double>(a[j]) * b[j];
    return static_cast<double>(s * dx);
}

// Observer step: Crank-Nicolson in diffusion with the injection shift lambda
// kept implicit on both levels and the source (theta_hat + lambda) u held at
// the time midpoint.  Boundary: u_hat(1) = U at the new level.
void observer_step(StateProfile& uh, const std::vector<double>& u_mid, double theta_hat,
                   double lambda, double U_new, const PlantParams& truth,
                   const SpatialGrid& grid, double dt) {
    const int m = grid.n_points;
    const int ni = m - 2;
    const double dx = grid.dx();
    const double r = truth.p * dt / (2.0 * dx * dx);
    const double diag = 1.0 + 2.0 * r + 0.5 * dt * lambda;

    std::vector<double> rhs(ni);
    for (int j = 0; j < ni; ++j)
        rhs[j] = (1.0 - 2.0 * r - 0.5 * dt * lambda) * uh.values[j + 1] +
                 r * (uh.values[j] + uh.values[j + 2]) +
                 dt * (theta_hat + lambda) * u_mid[j + 1];
    rhs[ni - 1] += r * U_new;

    std::vector<double> cp(ni), dp(ni);
    cp[0] = -r / diag;
    dp[0] = rhs[0] / diag;
    for (int j = 1; j < ni; ++j) {
        const double den = diag + r * cp[j - 1];
        cp[j] = -r / den;
        dp[j] = (rhs[j] + r * dp[j - 1]) / den;
    }
    std::vector<double> sol(ni);
    sol[ni - 1] = dp[ni - 1];
    for (int j = ni - 2; j >= 0; --j) sol[j] = dp[j] - cp[j] * sol[j + 1];

    uh.t += dt;
    uh.values.front() = 0.0;
    uh.values.back() = U_new;
    for (int j = 0; j < ni; ++j) uh.values[j + 1] = sol[j];
}

}  // namespace

double step_passive(StateProfile& u, PassiveState& ps, const PlantParams& truth,
                    const PassiveConfig& cfg, const DesignParams& dp,
                    const SpatialGrid& grid, double dt) {
    cfg.validate();
    CrankNicolson cn(grid, truth);

    // control kernel at the current estimate; zero for theta_hat <= 0
    std::vector<double> w(grid.n_points, 0.0);
    if (ps.theta_hat > 0.0) {
        const double dx = grid.dx();
        for (int j = 0; j < grid.n_points; ++j) {
            const double q = (j == 0 || j == grid.n_points - 1) ? 0.5 * dx : dx;
            w[j] = q * ktilde(ps.theta_hat, grid.x(j), dp, truth.p) / truth.c;
        }
    }

    const std::vector<double> u_old = u.values;
    const double err_old = inner_product(grid, u_old, u_old) -
                           inner_product(grid, ps.u_hat.values, u_old);

    double b_new = 0.0;
    u = cn.step_feedback(u, w, dt, &b_new);
    const double U_new = b_new / truth.c;

    std::vector<double> u_mid(grid.n_points);
    for (int j = 0; j < grid.n_points; ++j) u_mid[j] = 0.5 * (u_old[j] + u.values[j]);
    const double lambda = cfg.observer_gain * inner_product(grid, u_mid, u_mid);

    observer_step(ps.u_hat, u_mid, ps.theta_hat, lambda, U_new, truth, grid, dt);

    const double err_new = inner_product(grid, u.values, u.values) -
                           inner_product(grid, ps.u_hat.values, u.values);
    ps.theta_hat += 0.5 * dt * cfg.adaptation_gain * (err_old + err_new);
    return U_new;
}

RunResult run_passive(const PlantParams& truth, const StateProfile& u0,
                      const PassiveConfig& cfg, const DesignParams& dp,
                      const SpatialGrid& grid, const SolverConfig& solver, double horizon,
                      bool keep_profiles) {
    truth.validate();
    grid.validate();
    solver.validate();
    cfg.validate();

    RunResult out;
    out.keep_profiles = keep_profiles;
    out.modal.assign(solver.n_max, {});
    out.trace = ModalTrace(solver.n_ident);

    StateProfile u = u0;
    u.t = 0.0;
    u.values.front() = 0.0;
    PassiveState ps;
    ps.u_hat = u;  // observer starts on the plant state
    ps.theta_hat = cfg.theta0;

    out.norm0 = profile_norm(u, grid);
    auto record = [&](double U) {
        out.times.push_back(u.t);
        out.norms.push_back(profile_norm(u, grid));
        out.controls.push_back(U);
        out.theta_hats.push_back(ps.theta_hat);
        const auto a = modal_coefficients(u, grid, solver.n_max);
        for (int n = 0; n < solver.n_max; ++n) out.modal[n].push_back(a[n]);
        if (keep_profiles) out.profiles.push_back(u);
    };
    record(0.0);

    double t = 0.0;
    long step_idx = 0;
    const double eps_t = 1e-12;
    while (t < horizon - eps_t) {
        const double dt_step = std::min(solver.dt, horizon - t);
        double U_new = 0.0;
        try {
            U_new = step_passive(u, ps, truth, cfg, dp, grid, dt_step);
            check_finite(u, grid, solver.blowup_norm);
        } catch (const BlowUpError& ex) {
            out.blew_up = true;
            out.blowup_time = ex.time();
            out.final_state = u;
            return out;
        }
        t = u.t;
        ++step_idx;
        if (step_idx % solver.record_stride == 0 || t >= horizon - eps_t) record(U_new);
    }
    out.final_state = u;
    return out;
}

namespace {

double first_time_below(const RunResult& r, double level) {
    for (std::size_t i = 0; i < r.times.size(); ++i)
        if (r.norms[i] <= level) return r.times[i];
    return -1.0;
}

}  // namespace

CompareReport compare_runs(const RunResult& a, const RunResult& b) {
    if (std::abs(a.norm0 - b.norm0) > 1e-9 * std::max(1.0, a.norm0))
        throw std::invalid_argument("compare_runs: runs do not share the initial condition");
    CompareReport rep;
    rep.norm0 = a.norm0;
    for (double n : a.norms) rep.peak_a = std::max(rep.peak_a, n);
    for (double n : b.norms) rep.peak_b = std::max(rep.peak_b, n);
    rep.t_half_a = first_time_below(a, 0.5 * rep.norm0);
    rep.t_half_b = first_time_below(b, 0.5 * rep.norm0);
    rep.t_tenth_a = first_time_below(a, 0.1 * rep.norm0);
    rep.t_tenth_b = first_time_below(b, 0.1 * rep.norm0);
    rep.final_norm_a = a.norms.back();
    rep.final_norm_b = b.norms.back();
    rep.final_theta_a = a.theta_hats.empty() ? 0.0 : a.theta_hats.back();
    rep.final_theta_b = b.theta_hats.empty() ? 0.0 : b.theta_hats.back();
    const std::size_t K = std::min(a.norms.size(), b.norms.size());
    for (std::size_t i = 0; i < K; ++i)
        rep.max_abs_norm_gap = std::max(rep.max_abs_norm_gap,
                                        std::abs(a.norms[i] - b.norms[i]));
    return rep;
}

std::string format_report(const CompareReport& rep) {
    std::ostringstream os;
    os << "norm0 = " << rep.norm0 << "\n"
       << "peak_a = " << rep.peak_a << "\n"
       << "peak_b = " << rep.peak_b << "\n"
       << "t_half_a = " << rep.t_half_a << "\n"
       << "t_half_b = " << rep.t_half_b << "\n"
       << "t_tenth_a = " << rep.t_tenth_a << "\n"
       << "t_tenth_b = " << rep.t_tenth_b << "\n"
       << "final_norm_a = " << rep.final_norm_a << "\n"
       << "final_norm_b = " << rep.final_norm_b << "\n"
       << "final_theta_a = " << rep.final_theta_a << "\n"
       << "final_theta_b = " << rep.final_theta_b << "\n"
       << "max_abs_norm_gap = " << rep.max_abs_norm_gap << "\n";
    return os.str();
}

}  // namespace rdc
