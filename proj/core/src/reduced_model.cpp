#include "rdc/reduced_model.hpp"

#include <cmath>
#include <stdexcept>
#include <unsupported/Eigen/MatrixFunctions>

namespace rdc {

int select_N_rm(double theta, double p) {
    int N = 1;
    while (!(p * (N + 1.0) * (N + 1.0) * kPi * kPi > theta)) ++N;
    return N;
}

ReducedModel make_reduced_model(double theta, double p, int N) {
    if (N < 1) throw std::invalid_argument("make_reduced_model: N must be >= 1");
    ReducedModel m;
    m.N = N;
    m.A_open = Eigen::MatrixXd::Zero(N, N);
    m.g = Eigen::VectorXd::Zero(N);
    for (int n = 1; n <= N; ++n) {
        m.A_open(n - 1, n - 1) = theta - p * n * n * kPi * kPi;
        m.g(n - 1) = -p * std::sqrt(2.0) * ((n % 2 == 0) ? 1.0 : -1.0) * n * kPi;
    }
    return m;
}

ControllabilityReport controllability_check(const ReducedModel& model, double tol) {
    const int N = model.N;
    Eigen::MatrixXd C(N, N);
    Eigen::VectorXd col = model.g;
    for (int j = 0; j < N; ++j) {
        C.col(j) = col;
        col = model.A_open * col;
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(C);
    const auto& sv = svd.singularValues();
    ControllabilityReport rep;
    rep.sv_ratio = sv(sv.size() - 1) / sv(0);
    rep.rank = 0;
    for (int i = 0; i < sv.size(); ++i)
        if (sv(i) > tol * sv(0)) ++rep.rank;
    rep.controllable = (rep.rank == N);
    return rep;
}

Eigen::RowVectorXd pole_place(const ReducedModel& model, std::span<const double> poles) {
    const int N = model.N;
    if (static_cast<int>(poles.size()) != N)
        throw std::invalid_argument("pole_place: need exactly N poles");
    for (std::size_t i = 0; i < poles.size(); ++i) {
        if (!(poles[i] < 0.0)) throw std::invalid_argument("pole_place: poles must be stable");
        for (std::size_t j = i + 1; j < poles.size(); ++j)
            if (poles[i] == poles[j])
                throw std::invalid_argument("pole_place: poles must be distinct");
    }
    const auto rep = controllability_check(model);
    if (!rep.controllable)
        throw std::invalid_argument("pole_place: pair (A, g) is not controllable");

    // Desired characteristic polynomial, monic; coeff[j] multiplies s^{N-j}.
    std::vector<double> coeff(N + 1, 0.0);
    coeff[0] = 1.0;
    int deg = 0;
    for (int i = 0; i < N; ++i) {
        ++deg;
        for (int j = deg; j >= 1; --j) coeff[j] -= poles[i] * coeff[j - 1];
    }
    // q(A) = sum_j coeff[j] A^{N-j}
    Eigen::MatrixXd qA = Eigen::MatrixXd::Zero(N, N);
    Eigen::MatrixXd Ap = Eigen::MatrixXd::Identity(N, N);
    for (int pw = 0; pw <= N; ++pw) {
        qA += coeff[N - pw] * Ap;
        if (pw < N) Ap = model.A_open * Ap;
    }

    Eigen::MatrixXd C(N, N);
    Eigen::VectorXd col = model.g;
    for (int j = 0; j < N; ++j) {
        C.col(j) = col;
        col = model.A_open * col;
    }
    Eigen::RowVectorXd eN = Eigen::RowVectorXd::Zero(N);
    eN(N - 1) = 1.0;
    // k = -e_N C^{-1} q(A): then A + g k has the requested spectrum.
    Eigen::RowVectorXd k = -eN * C.partialPivLu().solve(qA);
    return k;
}

DecayEstimate estimate_decay(const Eigen::MatrixXd& A_closed, double margin) {
    Eigen::EigenSolver<Eigen::MatrixXd> es(A_closed);
    double abscissa = -1e300;
    for (int i = 0; i < A_closed.rows(); ++i)
        abscissa = std::max(abscissa, es.eigenvalues()(i).real());
    if (!(abscissa < 0.0)) throw std::invalid_argument("estimate_decay: matrix is not Hurwitz");
    DecayEstimate d;
    d.omega = -abscissa * (1.0 - margin);
    const double t_end = 20.0 / d.omega;
    const int sweep = 400;
    double r = 1.0;
    for (int i = 1; i <= sweep; ++i) {
        const double t = t_end * i / sweep;
        const Eigen::MatrixXd E = (A_closed * t).exp();
        Eigen::JacobiSVD<Eigen::MatrixXd> svd(E);
        r = std::max(r, svd.singularValues()(0) * std::exp(d.omega * t));
    }
    d.R = r;
    return d;
}

GainSchedule reduced_schedule(double theta, double p, int n_cert) {
    const int N = select_N_rm(theta, p);
    const auto model = make_reduced_model(theta, p, N);
    std::vector<double> poles(N);
    for (int n = 1; n <= N; ++n) poles[n - 1] = -p * n * n * kPi * kPi;
    const Eigen::RowVectorXd k = pole_place(model, poles);

    // Certificate on the coupled n_cert-mode closure: the actuated block plus
    // the stable tail it drives.
    const int M = std::max(n_cert, N);
    Eigen::MatrixXd big = Eigen::MatrixXd::Zero(M, M);
    for (int n = 1; n <= M; ++n) big(n - 1, n - 1) = theta - p * n * n * kPi * kPi;
    for (int i = 1; i <= M; ++i) {
        const double g_i = -p * std::sqrt(2.0) * ((i % 2 == 0) ? 1.0 : -1.0) * i * kPi;
        for (int n = 1; n <= N; ++n) big(i - 1, n - 1) += g_i * k(n - 1);
    }
    const auto cert = estimate_decay(big);

    GainSchedule sch;
    sch.theta_hat = theta;
    sch.N = N;
    sch.k.assign(k.data(), k.data() + N);
    sch.R = std::max(1.0, cert.R) * 1.05;
    sch.omega = cert.omega;
    return sch;
}

}  // namespace rdc
