#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rdc/plant.hpp"
#include "rdc/types.hpp"

namespace rdc {

/**
 * Identification window: the recorded trace restricted to [mu, tau], with
 * linearly interpolated samples inserted at both endpoints when they fall
 * between recording instants.
 */
struct Window {
    double mu = 0.0;
    double tau = 0.0;
    double sup_norm = 0.0;                ///< sup of ||u|| over the window
    std::vector<double> times;
    std::vector<std::vector<double>> a;   ///< a[n-1][k]
    std::vector<std::vector<double>> F;   ///< running integral of a_n
    std::vector<double> V;                ///< running integral of U

    int n_modes() const { return static_cast<int>(a.size()); }
    double length() const { return tau - mu; }
};

Window make_window(const ModalTrace& trace, double mu, double tau);

struct FGJ {
    double f = 0.0, g = 0.0, j = 0.0;
};

/// Evaluate the window functionals at an arbitrary pair (t, s) in [mu, tau]:
///   f_n(t,s) = a_n(t) - a_n(s) + n^2 pi^2 p (F_n(t) - F_n(s))
///   g_n(t,s) = F_n(t) - F_n(s)
///   j_n(t,s) = -(-1)^n p n pi (V(t) - V(s))
/// with a, F, V linearly interpolated between samples.
FGJ fgj_eval(const Window& w, int n, double t, double s, double p);

/// Per-mode second-moment integrals of (f, g, j) over the window square.
struct ModeNormalEqs {
    double H1 = 0.0, H2 = 0.0, Q1 = 0.0, Q2 = 0.0, Q3 = 0.0;
};

/// Separable reduction: every entry is a double integral of a product of
/// time-difference factors, and
///   int int (X(t)-X(s))(Y(t)-Y(s)) ds dt = 2 (L int XY - int X int Y).
ModeNormalEqs normal_equations(const Window& w, int n, double p);

/// Direct O(K^2) double trapezoid over the sample grid; cross-check path.
ModeNormalEqs normal_equations_direct(const Window& w, int n, double p);

struct NormalEqs {
    std::vector<ModeNormalEqs> modes;  ///< modes 1..n
    double scale = 1.0;                ///< L^2 max(1, sup||u||^4), Q-vanishing reference
};

NormalEqs assemble_normal_equations(const Window& w, double p);

enum class SetKind { FullPlane, ThetaLine, Singleton };

/// Solution set of the stacked per-mode normal equations in the (theta, c)
/// plane: the whole plane, a theta-line, or a single point.
struct ParamSet {
    SetKind kind = SetKind::FullPlane;
    double theta_star = 0.0;  ///< valid for ThetaLine and Singleton
    double c_star = 0.0;      ///< valid for Singleton
};

struct IdentifierConfig {
    int n_modes = 5;        ///< modes entering the stacked solve
    double eps_q = 1e-10;   ///< Q-vanishing tolerance, relative to NormalEqs::scale
    double sv_ratio = 1e-8; ///< rank tolerance of the stacked least-squares solve
};

struct ClassifyOutcome {
    std::optional<ParamSet> set;  ///< nullopt: degenerate window, keep estimates
    std::string diagnostic;
};

ClassifyOutcome classify_set(const NormalEqs& eqs, const IdentifierConfig& cfg);

/// Projection update: FullPlane keeps both estimates, ThetaLine replaces
/// theta only, Singleton replaces both.  Keeps c_hat > 0.
Estimates update_estimates(const Estimates& prev, const ParamSet& set);

/// Known-c variant: the input term folds into f and a single ratio per mode
/// recovers theta; uses the smallest mode whose g-energy clears the tolerance.
double update_theta_known_c(const Window& w, double prev_theta, double p, double c,
                            const IdentifierConfig& cfg);

}  // namespace rdc
