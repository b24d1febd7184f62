#include "rdc/backstepping.hpp"

#include <cmath>
#include <stdexcept>

#include "rdc/bessel.hpp"
#include "rdc/quadrature.hpp"

namespace rdc {

double kernel_K(double theta, const DesignParams& dp, double p, double z, double s) {
    const double lam = (theta + dp.beta) / p;
    return -lam * s * i1_ratio(lam * (z * z - s * s));
}

double kernel_L(double theta, const DesignParams& dp, double p, double z, double s) {
    const double lam = (theta + dp.beta) / p;
    return -lam * s * i1_ratio(-lam * (z * z - s * s));
}

double ktilde(double theta, double x, const DesignParams& dp, double p) {
    if (theta <= 0.0) return 0.0;
    return kernel_K(theta, dp, p, 1.0, x);
}

std::vector<double> ktilde_grid(double theta, int n, const DesignParams& dp, double p) {
    std::vector<double> out(n);
    const double dx = 1.0 / (n - 1);
    for (int j = 0; j < n; ++j) out[j] = ktilde(theta, j * dx, dp, p);
    return out;
}

std::vector<double> modal_gains(double theta, int N, const DesignParams& dp, double p) {
    if (N < 1) throw std::invalid_argument("modal_gains: N must be >= 1");
    const int m = dp.quad_panels + 1;
    const double dx = 1.0 / dp.quad_panels;
    const auto kt = ktilde_grid(theta, m, dp, p);
    std::vector<double> gains(N, 0.0);
    if (theta <= 0.0) return gains;
    const double sqrt2 = std::sqrt(2.0);
    for (int n = 1; n <= N; ++n) {
        long double s = 0.0L;  // endpoints vanish: kt(.)sin at 0, sin(n pi) at 1
        for (int j = 1; j + 1 < m; ++j)
            s += kt[j] * sqrt2 * std::sin(n * kPi * j * dx);
        gains[n - 1] = static_cast<double>(s * dx);
    }
    return gains;
}

double ktilde_sq_integral(double theta, const DesignParams& dp, double p) {
    const int m = dp.quad_panels + 1;
    const double dx = 1.0 / dp.quad_panels;
    const auto kt = ktilde_grid(theta, m, dp, p);
    long double s = 0.5L * (static_cast<long double>(kt.front()) * kt.front() +
                            static_cast<long double>(kt.back()) * kt.back());
    for (int j = 1; j + 1 < m; ++j) s += static_cast<long double>(kt[j]) * kt[j];
    return static_cast<double>(s * dx);
}

double gamma_coeff(const DesignParams& dp, double p) {
    const double mu = std::sqrt(dp.beta / p);
    const double pole = kPi * kPi + mu * mu;
    if (!(dp.sigma < pole))
        throw std::domain_error("gamma_coeff: sigma at or above the branch pole");
    const double pre = std::sqrt(1.0 + dp.B);
    if (mu > 0.0) {
        return pre * (kPi * kPi + mu * mu) * std::sqrt(std::sinh(2.0 * mu) - 2.0 * mu) /
               (2.0 * std::sqrt(mu) * (pole - dp.sigma) * std::sinh(mu));
    }
    return pre * kPi * kPi / (std::sqrt(3.0) * (kPi * kPi - dp.sigma));
}

GainSchedule select_schedule(double theta, const DesignParams& dp, double p) {
    dp.validate(p);
    GainSchedule sch;
    sch.theta_hat = theta;
    if (theta <= 0.0) {
        sch.N = 1;
        sch.k = {0.0};
        sch.R = 1.0;
        sch.omega = kPi * kPi * p;
        return sch;
    }

    const double gamma = gamma_coeff(dp, p);
    const double lam = (theta + dp.beta) / p;
    const double l_bound = 1.0 + (theta + dp.beta) / (4.0 * p * std::sqrt(3.0));
    const double k_bound = 1.0 + 0.5 * std::sqrt(lam / 3.0) * bessel_i1(std::sqrt(lam));
    const double g_const = std::sqrt(1.0 + 1.0 / dp.B);
    const double k2 = ktilde_sq_integral(theta, dp, p);

    // Grow the gain set until the truncation tail clears the certificate bound.
    const int m = dp.quad_panels + 1;
    const double dx = 1.0 / dp.quad_panels;
    const auto kt = ktilde_grid(theta, m, dp, p);
    const double sqrt2 = std::sqrt(2.0);
    std::vector<double> gains;
    double sum_sq = 0.0;
    for (int N = 1; N <= dp.n_cap; ++N) {
        long double s = 0.0L;
        for (int j = 1; j + 1 < m; ++j)
            s += kt[j] * sqrt2 * std::sin(N * kPi * j * dx);
        gains.push_back(static_cast<double>(s * dx));
        sum_sq += gains.back() * gains.back();
        const double tail = std::sqrt(std::max(k2 - sum_sq, 0.0));
        if (gamma * l_bound * tail < 1.0) {
            sch.N = N;
            sch.k = gains;
            sch.R = g_const * l_bound * k_bound / (1.0 - gamma * tail * l_bound);
            sch.omega = dp.sigma * p;
            return sch;
        }
    }
    throw std::runtime_error("select_schedule: mode-count search exhausted the cap");
}

namespace {

std::vector<double> volterra_apply(std::span<const double> profile, double theta,
                                   const DesignParams& dp, double p, bool inverse) {
    const int m = static_cast<int>(profile.size());
    const double dx = 1.0 / (m - 1);
    std::vector<double> out(m);
    for (int i = 0; i < m; ++i) {
        const double z = i * dx;
        long double acc = 0.0L;
        // trapezoid over [0, z] on the grid prefix
        for (int j = 0; j <= i; ++j) {
            const double s = j * dx;
            const double ker = inverse ? kernel_L(theta, dp, p, z, s)
                                       : kernel_K(theta, dp, p, z, s);
            const double w = (j == 0 || j == i) ? 0.5 * dx : dx;
            acc += w * ker * profile[j];
        }
        out[i] = inverse ? profile[i] + static_cast<double>(acc)
                         : profile[i] - static_cast<double>(acc);
    }
    return out;
}

}  // namespace

std::vector<double> volterra_transform(std::span<const double> profile, double theta,
                                       const DesignParams& dp, double p) {
    return volterra_apply(profile, theta, dp, p, false);
}

std::vector<double> volterra_inverse(std::span<const double> profile, double theta,
                                     const DesignParams& dp, double p) {
    return volterra_apply(profile, theta, dp, p, true);
}

double volterra_roundtrip(std::span<const double> profile, double theta,
                          const DesignParams& dp, double p) {
    const auto v = volterra_transform(profile, theta, dp, p);
    const auto back = volterra_inverse(v, theta, dp, p);
    const double dx = 1.0 / (profile.size() - 1);
    std::vector<double> diff(profile.size());
    for (std::size_t i = 0; i < profile.size(); ++i) diff[i] = back[i] - profile[i];
    return l2_norm_uniform(diff, dx);
}

}  // namespace rdc
