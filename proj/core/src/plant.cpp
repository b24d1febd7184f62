#include "rdc/plant.hpp"

#include <cmath>
#include <stdexcept>

namespace rdc {

double modal_project(const StateProfile& state, const SpatialGrid& grid, int n) {
    if (n < 1) throw std::invalid_argument("modal_project: mode index must be >= 1");
    const int m = grid.n_points;
    const double dx = grid.dx();
    long double s = 0.0L;
    // sin(n pi x) vanishes at both boundary nodes, so the half weights drop out.
    for (int j = 1; j + 1 < m; ++j)
        s += std::sin(n * kPi * grid.x(j)) * static_cast<long double>(state.values[j]);
    return static_cast<double>(s * dx);
}

std::vector<double> modal_coefficients(const StateProfile& state, const SpatialGrid& grid,
                                       int n_modes) {
    std::vector<double> out(n_modes);
    for (int n = 1; n <= n_modes; ++n) out[n - 1] = modal_project(state, grid, n);
    return out;
}

double profile_norm(const StateProfile& state, const SpatialGrid& grid) {
    return l2_norm_uniform(state.values, grid.dx());
}

StateProfile make_profile(const SpatialGrid& grid, double t,
                          const std::function<double(double)>& f) {
    StateProfile s;
    s.t = t;
    s.values.resize(grid.n_points);
    for (int j = 0; j < grid.n_points; ++j) s.values[j] = f(grid.x(j));
    s.values.front() = 0.0;
    return s;
}

void check_finite(const StateProfile& state, const SpatialGrid& grid, double blowup_norm) {
    const double nrm = profile_norm(state, grid);
    if (!std::isfinite(nrm) || nrm > blowup_norm) throw BlowUpError(state.t, nrm);
}

CrankNicolson::CrankNicolson(const SpatialGrid& grid, const PlantParams& params)
    : grid_(grid), params_(params) {
    grid_.validate();
    params_.validate();
}

// Tridiagonal solve of the interior rows
//   -r u_{j-1} + (1+2r-q) u_j - r u_{j+1} = rhs_j
// with rhs assembled from the old level and the new-level boundary value.
void CrankNicolson::solve_interior(std::span<const double> u, double b_new, double dt,
                                   std::vector<double>& out) const {
    const int m = grid_.n_points;
    const int ni = m - 2;
    const double dx = grid_.dx();
    const double r = params_.p * dt / (2.0 * dx * dx);
    const double q = params_.theta * dt / 2.0;
    const double diag = 1.0 + 2.0 * r - q;

    std::vector<double> cp(ni), dp(ni);
    std::vector<double> rhs(ni);
    for (int j = 0; j < ni; ++j)
        rhs[j] = (1.0 - 2.0 * r + q) * u[j + 1] + r * (u[j] + u[j + 2]);
    rhs[ni - 1] += r * b_new;  // old-level boundary already entered through u[m-1]

    cp[0] = -r / diag;
    dp[0] = rhs[0] / diag;
    for (int j = 1; j < ni; ++j) {
        const double den = diag + r * cp[j - 1];
        cp[j] = -r / den;
        dp[j] = (rhs[j] + r * dp[j - 1]) / den;
    }
    out.resize(ni);
    out[ni - 1] = dp[ni - 1];
    for (int j = ni - 2; j >= 0; --j) out[j] = dp[j] - cp[j] * out[j + 1];
}

StateProfile CrankNicolson::step(const StateProfile& state, double b_new, double dt) const {
    const int m = grid_.n_points;
    StateProfile next;
    next.t = state.t + dt;
    next.values.resize(m);
    next.values.front() = 0.0;
    next.values.back() = b_new;
    std::vector<double> interior;
    solve_interior(state.values, b_new, dt, interior);
    for (int j = 0; j < m - 2; ++j) next.values[j + 1] = interior[j];
    return next;
}

StateProfile CrankNicolson::step_feedback(const StateProfile& state, std::span<const double> w,
                                          double dt, double* b_out) const {
    const int m = grid_.n_points;
    // Superposition: u_new = v + b z where v solves the step with boundary 0
    // and z is the response to boundary value 1.
    std::vector<double> v_int, z_int;
    solve_interior(state.values, 0.0, dt, v_int);
    {
        // z solves the homogeneous step (old level 0) with unit new boundary.
        const double dx = grid_.dx();
        const double r = params_.p * dt / (2.0 * dx * dx);
        const double q = params_.theta * dt / 2.0;
        const double diag = 1.0 + 2.0 * r - q;
        const int ni = m - 2;
        std::vector<double> cp(ni), dp(ni);
        cp[0] = -r / diag;
        dp[0] = 0.0;
        for (int j = 1; j < ni; ++j) {
            const double den = diag + r * cp[j - 1];
            cp[j] = -r / den;
            dp[j] = (r * dp[j - 1] + (j == ni - 1 ? r : 0.0)) / den;
        }
        z_int.resize(ni);
        z_int[ni - 1] = dp[ni - 1];
        for (int j = ni - 2; j >= 0; --j) z_int[j] = dp[j] - cp[j] * z_int[j + 1];
    }

    // Boundary equation: b = <w, v> + b <w, z> with z[last] = 1, v[last] = 0.
    double wv = 0.0, wz = w.back() * 1.0;
    for (int j = 0; j < m - 2; ++j) {
        wv += w[j + 1] * v_int[j];
        wz += w[j + 1] * z_int[j];
    }
    const double den = 1.0 - wz;
    if (std::abs(den) < 1e-12)
        throw std::runtime_error("step_feedback: singular boundary closure");
    const double b = wv / den;

    StateProfile next;
    next.t = state.t + dt;
    next.values.resize(m);
    next.values.front() = 0.0;
    next.values.back() = b;
    for (int j = 0; j < m - 2; ++j) next.values[j + 1] = v_int[j] + b * z_int[j];
    if (b_out) *b_out = b;
    return next;
}

StateProfile step_fd(const StateProfile& state, const PlantParams& params, double u_ctrl,
                     const SpatialGrid& grid, const SolverConfig& config) {
    CrankNicolson cn(grid, params);
    StateProfile next = cn.step(state, params.c * u_ctrl, config.dt);
    check_finite(next, grid, config.blowup_norm);
    return next;
}

void ModalTrace::push(double t, std::span<const double> a, double u_ctrl, double norm) {
    if (!times_.empty()) {
        const double dt = t - times_.back();
        for (std::size_t n = 0; n < a_.size(); ++n)
            f_[n].push_back(f_[n].back() + 0.5 * dt * (a_[n].back() + a[n]));
        v_.push_back(v_.back() + 0.5 * dt * (u_.back() + u_ctrl));
    } else {
        for (auto& f : f_) f.push_back(0.0);
        v_.push_back(0.0);
    }
    times_.push_back(t);
    for (std::size_t n = 0; n < a_.size(); ++n) a_[n].push_back(a[n]);
    u_.push_back(u_ctrl);
    norms_.push_back(norm);
}

void ModalTrace::replace_last(double t, std::span<const double> a, double u_ctrl, double norm) {
    times_.pop_back();
    for (auto& an : a_) an.pop_back();
    for (auto& f : f_) f.pop_back();
    v_.pop_back();
    u_.pop_back();
    norms_.pop_back();
    push(t, a, u_ctrl, norm);
}

}  // namespace rdc
