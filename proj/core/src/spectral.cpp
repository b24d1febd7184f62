#include "rdc/spectral.hpp"

#include <cmath>
#include <stdexcept>
#include <unsupported/Eigen/MatrixFunctions>

namespace rdc {

Eigen::MatrixXd closed_loop_matrix(const PlantParams& params, const GainSchedule& gains,
                                   double c_hat, int n_max) {
    if (gains.N > n_max)
        throw std::invalid_argument("closed_loop_matrix: schedule N exceeds n_max");
    if (!(c_hat > 0.0))
        throw std::invalid_argument("closed_loop_matrix: c_hat must be > 0");
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(n_max, n_max);
    const double sqrt2 = std::sqrt(2.0);
    for (int i = 1; i <= n_max; ++i)
        A(i - 1, i - 1) = params.theta - i * i * kPi * kPi * params.p;
    for (int i = 1; i <= n_max; ++i) {
        const double g_i = -((i % 2 == 0) ? 1.0 : -1.0) * params.p * i * kPi;
        for (int n = 1; n <= gains.N; ++n)
            A(i - 1, n - 1) += (params.c / c_hat) * g_i * sqrt2 * gains.k[n - 1];
    }
    return A;
}

std::vector<double> spectral_oracle(const PlantParams& params, const GainSchedule& gains,
                                    double c_hat, std::span<const double> a0, double t) {
    const int n_max = static_cast<int>(a0.size());
    const Eigen::MatrixXd A = closed_loop_matrix(params, gains, c_hat, n_max);
    Eigen::VectorXd v(n_max);
    for (int i = 0; i < n_max; ++i) v(i) = a0[i];
    const Eigen::MatrixXd E = (A * t).exp();
    Eigen::VectorXd out = E * v;
    return std::vector<double>(out.data(), out.data() + n_max);
}

OracleTrace sample_oracle_trace(const PlantParams& params, const GainSchedule& gains,
                                double c_hat, std::span<const double> a0, double dt,
                                double t_end) {
    const int n_max = static_cast<int>(a0.size());
    const Eigen::MatrixXd A = closed_loop_matrix(params, gains, c_hat, n_max);
    const Eigen::MatrixXd E = (A * dt).exp();
    Eigen::VectorXd w = Eigen::VectorXd::Zero(n_max);
    const double sqrt2 = std::sqrt(2.0);
    for (int n = 1; n <= gains.N; ++n) w(n - 1) = sqrt2 * gains.k[n - 1] / c_hat;

    const int steps = static_cast<int>(std::llround(t_end / dt));
    OracleTrace tr;
    tr.a.assign(n_max, {});
    Eigen::VectorXd a(n_max);
    for (int i = 0; i < n_max; ++i) a(i) = a0[i];
    for (int k = 0; k <= steps; ++k) {
        tr.times.push_back(k * dt);
        for (int i = 0; i < n_max; ++i) tr.a[i].push_back(a(i));
        tr.U.push_back(w.dot(a));
        tr.norms.push_back(std::sqrt(2.0 * a.squaredNorm()));
        if (k < steps) a = E * a;
    }
    return tr;
}

double series_identity_residual(double x, int n_terms) {
    if (n_terms < 1) throw std::invalid_argument("series_identity_residual: n_terms >= 1");
    // L_n phi_n(x) / (n^2 pi^2) with L_n = -(-1)^n sqrt(2)/(n pi)
    long double sum = 0.0L;
    for (int n = 1; n <= n_terms; ++n) {
        const double sgn = (n % 2 == 0) ? 1.0 : -1.0;
        sum += -sgn * 2.0L * std::sin(n * kPi * x) / (static_cast<long double>(n) * n * n * kPi * kPi * kPi);
    }
    const long double closed = (static_cast<long double>(x) - static_cast<long double>(x) * x * x) / 6.0L;
    return static_cast<double>(std::fabs(static_cast<double>(sum - closed)));
}

}  // namespace rdc
