#include "rdc/identifier.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace rdc {

namespace {

double interp(const std::vector<double>& ts, const std::vector<double>& ys, double t) {
    auto it = std::lower_bound(ts.begin(), ts.end(), t);
    if (it == ts.begin()) return ys.front();
    if (it == ts.end()) return ys.back();
    const std::size_t i = it - ts.begin();
    const double t0 = ts[i - 1], t1 = ts[i];
    if (t1 == t0) return ys[i];
    const double s = (t - t0) / (t1 - t0);
    return (1.0 - s) * ys[i - 1] + s * ys[i];
}

double mode_sign(int n) { return (n % 2 == 0) ? 1.0 : -1.0; }  // (-1)^n

}  // namespace

Window make_window(const ModalTrace& trace, double mu, double tau) {
    if (!(tau > mu) || mu < 0.0)
        throw std::invalid_argument("make_window: need tau > mu >= 0");
    const auto& ts = trace.times();
    if (ts.empty() || mu < ts.front() - 1e-12 || tau > ts.back() + 1e-12)
        throw std::invalid_argument("make_window: [mu, tau] not covered by the trace");

    Window w;
    w.mu = mu;
    w.tau = tau;
    const int nm = trace.n_modes();
    w.a.resize(nm);
    w.F.resize(nm);

    auto push_at = [&](double t, std::size_t idx_or_interp, bool exact) {
        w.times.push_back(t);
        for (int n = 1; n <= nm; ++n) {
            if (exact) {
                w.a[n - 1].push_back(trace.a(n)[idx_or_interp]);
                w.F[n - 1].push_back(trace.F(n)[idx_or_interp]);
            } else {
                w.a[n - 1].push_back(interp(ts, trace.a(n), t));
                w.F[n - 1].push_back(interp(ts, trace.F(n), t));
            }
        }
        if (exact)
            w.V.push_back(trace.V()[idx_or_interp]);
        else
            w.V.push_back(interp(ts, trace.V(), t));
    };

    const double eps = 1e-12 * std::max(1.0, tau);
    std::size_t i0 = std::lower_bound(ts.begin(), ts.end(), mu - eps) - ts.begin();
    if (i0 < ts.size() && std::abs(ts[i0] - mu) <= eps) {
        push_at(mu, i0, true);
        ++i0;
    } else {
        push_at(mu, 0, false);
    }
    double sup = 0.0;
    std::size_t i = i0;
    for (; i < ts.size() && ts[i] < tau - eps; ++i) {
        push_at(ts[i], i, true);
        sup = std::max(sup, trace.norms()[i]);
    }
    if (i < ts.size() && std::abs(ts[i] - tau) <= eps) {
        push_at(tau, i, true);
        sup = std::max(sup, trace.norms()[i]);
    } else {
        push_at(tau, 0, false);
    }
    // endpoint norms: interpolate coarsely from neighbors
    sup = std::max(sup, interp(ts, trace.norms(), mu));
    sup = std::max(sup, interp(ts, trace.norms(), tau));
    w.sup_norm = sup;
    return w;
}

FGJ fgj_eval(const Window& w, int n, double t, double s, double p) {
    if (t < w.mu - 1e-12 || t > w.tau + 1e-12 || s < w.mu - 1e-12 || s > w.tau + 1e-12)
        throw std::invalid_argument("fgj_eval: t or s outside the window");
    const double at = interp(w.times, w.a[n - 1], t);
    const double as = interp(w.times, w.a[n - 1], s);
    const double Ft = interp(w.times, w.F[n - 1], t);
    const double Fs = interp(w.times, w.F[n - 1], s);
    const double Vt = interp(w.times, w.V, t);
    const double Vs = interp(w.times, w.V, s);
    FGJ r;
    r.g = Ft - Fs;
    r.f = (at - as) + n * n * kPi * kPi * p * r.g;
    r.j = -mode_sign(n) * p * n * kPi * (Vt - Vs);
    return r;
}

namespace {

// trapezoid weights of the (possibly non-uniform) window grid
std::vector<double> window_weights(const std::vector<double>& ts) {
    const std::size_t K = ts.size();
    std::vector<double> w(K, 0.0);
    for (std::size_t i = 0; i + 1 < K; ++i) {
        const double h = ts[i + 1] - ts[i];
        w[i] += 0.5 * h;
        w[i + 1] += 0.5 * h;
    }
    return w;
}

struct Channels {
    // Phi(t) = a_n + n^2 pi^2 p F_n;  G(t) = F_n;  J(t) = -(-1)^n p n pi V
    std::vector<double> Phi, G, J;
};

Channels mode_channels(const Window& w, int n, double p) {
    const std::size_t K = w.times.size();
    Channels ch;
    ch.Phi.resize(K);
    ch.G.resize(K);
    ch.J.resize(K);
    const double jc = -mode_sign(n) * p * n * kPi;
    for (std::size_t k = 0; k < K; ++k) {
        ch.G[k] = w.F[n - 1][k];
        ch.Phi[k] = w.a[n - 1][k] + n * n * kPi * kPi * p * ch.G[k];
        ch.J[k] = jc * w.V[k];
    }
    return ch;
}

}  // namespace

ModeNormalEqs normal_equations(const Window& w, int n, double p) {
    const auto ch = mode_channels(w, n, p);
    const auto wt = window_weights(w.times);
    const std::size_t K = w.times.size();
    const long double L = w.length();

    long double iP = 0, iG = 0, iJ = 0, iPG = 0, iPJ = 0, iGG = 0, iGJ = 0, iJJ = 0;
    for (std::size_t k = 0; k < K; ++k) {
        const long double q = wt[k];
        const long double P = ch.Phi[k], G = ch.G[k], J = ch.J[k];
        iP += q * P;
        iG += q * G;
        iJ += q * J;
        iPG += q * P * G;
        iPJ += q * P * J;
        iGG += q * G * G;
        iGJ += q * G * J;
        iJJ += q * J * J;
    }
    ModeNormalEqs eq;
    eq.H1 = static_cast<double>(2.0L * (L * iPG - iP * iG));
    eq.H2 = static_cast<double>(2.0L * (L * iPJ - iP * iJ));
    eq.Q1 = static_cast<double>(2.0L * (L * iGG - iG * iG));
    eq.Q2 = static_cast<double>(2.0L * (L * iGJ - iG * iJ));
    eq.Q3 = static_cast<double>(2.0L * (L * iJJ - iJ * iJ));
    return eq;
}

ModeNormalEqs normal_equations_direct(const Window& w, int n, double p) {
    const auto ch = mode_channels(w, n, p);
    const auto wt = window_weights(w.times);
    const std::size_t K = w.times.size();
    long double H1 = 0, H2 = 0, Q1 = 0, Q2 = 0, Q3 = 0;
    for (std::size_t it = 0; it < K; ++it) {
        for (std::size_t is = 0; is < K; ++is) {
            const long double q = static_cast<long double>(wt[it]) * wt[is];
            const long double f = (ch.Phi[it] - ch.Phi[is]);
            const long double g = (ch.G[it] - ch.G[is]);
            const long double j = (ch.J[it] - ch.J[is]);
            H1 += q * f * g;
            H2 += q * f * j;
            Q1 += q * g * g;
            Q2 += q * g * j;
            Q3 += q * j * j;
        }
    }
    ModeNormalEqs eq;
    eq.H1 = static_cast<double>(H1);
    eq.H2 = static_cast<double>(H2);
    eq.Q1 = static_cast<double>(Q1);
    eq.Q2 = static_cast<double>(Q2);
    eq.Q3 = static_cast<double>(Q3);
    return eq;
}

NormalEqs assemble_normal_equations(const Window& w, double p) {
    NormalEqs out;
    out.modes.resize(w.n_modes());
    for (int n = 1; n <= w.n_modes(); ++n) out.modes[n - 1] = normal_equations(w, n, p);
    const double L = w.length();
    out.scale = L * L * std::max(1.0, std::pow(w.sup_norm, 4.0));
    return out;
}

ClassifyOutcome classify_set(const NormalEqs& eqs, const IdentifierConfig& cfg) {
    const double tol = cfg.eps_q * eqs.scale;
    const int nm = std::min<int>(cfg.n_modes, static_cast<int>(eqs.modes.size()));

    double max_q1 = 0.0, max_q3 = 0.0;
    for (int n = 1; n <= nm; ++n) {
        max_q1 = std::max(max_q1, eqs.modes[n - 1].Q1);
        max_q3 = std::max(max_q3, eqs.modes[n - 1].Q3);
    }

    ClassifyOutcome out;
    if (max_q1 <= tol) {
        out.set = ParamSet{SetKind::FullPlane, 0.0, 0.0};
        return out;
    }
    if (max_q3 <= tol) {
        for (int n = 1; n <= nm; ++n) {
            const auto& m = eqs.modes[n - 1];
            if (m.Q1 > tol) {
                out.set = ParamSet{SetKind::ThetaLine, m.H1 / m.Q1, 0.0};
                return out;
            }
        }
    }

    // Stacked 2x2 systems across modes with usable g-energy.
    std::vector<int> used;
    for (int n = 1; n <= nm; ++n)
        if (eqs.modes[n - 1].Q1 > tol) used.push_back(n);
    Eigen::MatrixXd A(2 * used.size(), 2);
    Eigen::VectorXd b(2 * used.size());
    for (std::size_t i = 0; i < used.size(); ++i) {
        const auto& m = eqs.modes[used[i] - 1];
        A(2 * i, 0) = m.Q1;
        A(2 * i, 1) = m.Q2;
        b(2 * i) = m.H1;
        A(2 * i + 1, 0) = m.Q2;
        A(2 * i + 1, 1) = m.Q3;
        b(2 * i + 1) = m.H2;
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(A, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto& sv = svd.singularValues();
    if (sv(1) < cfg.sv_ratio * sv(0)) {
        out.diagnostic = "stacked system rank-deficient (sv ratio " +
                         std::to_string(sv(1) / sv(0)) + ")";
        return out;
    }
    const Eigen::Vector2d sol = svd.solve(b);
    if (!(sol(1) > 0.0)) {
        out.diagnostic = "stacked solve produced non-positive gain estimate";
        return out;
    }
    out.set = ParamSet{SetKind::Singleton, sol(0), sol(1)};
    return out;
}

Estimates update_estimates(const Estimates& prev, const ParamSet& set) {
    switch (set.kind) {
        case SetKind::FullPlane:
            return prev;
        case SetKind::ThetaLine:
            return Estimates{set.theta_star, prev.c_hat};
        case SetKind::Singleton:
            return Estimates{set.theta_star, set.c_star};
    }
    return prev;
}

double update_theta_known_c(const Window& w, double prev_theta, double p, double c,
                            const IdentifierConfig& cfg) {
    const auto wt = window_weights(w.times);
    const std::size_t K = w.times.size();
    const long double L = w.length();
    const int nm = std::min<int>(cfg.n_modes, w.n_modes());

    double sup4 = std::max(1.0, std::pow(w.sup_norm, 4.0));
    const double tol = cfg.eps_q * w.length() * w.length() * sup4;

    for (int n = 1; n <= nm; ++n) {
        // Phi(t) = a_n + (-1)^n c p n pi V + n^2 pi^2 p F_n, so Phi-differences
        // equal theta times F-differences along the true trajectory.
        const double vc = mode_sign(n) * c * p * n * kPi;
        long double iP = 0, iG = 0, iPG = 0, iGG = 0;
        for (std::size_t k = 0; k < K; ++k) {
            const long double G = w.F[n - 1][k];
            const long double P =
                w.a[n - 1][k] + vc * w.V[k] + n * n * kPi * kPi * p * G;
            const long double q = wt[k];
            iP += q * P;
            iG += q * G;
            iPG += q * P * G;
            iGG += q * G * G;
        }
        const double Q = static_cast<double>(2.0L * (L * iGG - iG * iG));
        const double H = static_cast<double>(2.0L * (L * iPG - iP * iG));
        if (Q > tol) return H / Q;
    }
    return prev_theta;
}

}  // namespace rdc
