#include <doctest.h>

#include <cmath>

#include "rdc/backstepping.hpp"
#include "rdc/plant.hpp"
#include "rdc/spectral.hpp"
#include "rdc/supervisor.hpp"

using namespace rdc;

TEST_CASE("zero gains decouple into exponential modes") {
    PlantParams pp{1.0, 3.0, 1.0};
    GainSchedule sch;
    sch.N = 1;
    sch.k = {0.0};
    std::vector<double> a0 = {0.7, -0.3, 0.11, 0.05};
    const double t = 0.13;
    const auto at = spectral_oracle(pp, sch, 1.0, a0, t);
    for (int n = 1; n <= 4; ++n) {
        const double exact = std::exp((3.0 - n * n * kPi * kPi) * t) * a0[n - 1];
        CHECK(at[n - 1] == doctest::Approx(exact).epsilon(1e-12));
    }
}

TEST_CASE("zero time is the identity") {
    PlantParams pp{1.0, 11.0, 1.0};
    GainSchedule sch = select_schedule(11.0, DesignParams{}, 1.0);
    std::vector<double> a0 = {0.5, 0.25, -0.1};
    a0.resize(25, 0.01);
    const auto at = spectral_oracle(pp, sch, 1.0, a0, 0.0);
    for (std::size_t i = 0; i < a0.size(); ++i)
        CHECK(at[i] == doctest::Approx(a0[i]).epsilon(1e-14));
}

TEST_CASE("schedule wider than the tracked modes is rejected") {
    PlantParams pp{1.0, 11.0, 1.0};
    GainSchedule sch;
    sch.N = 5;
    sch.k = {1, 1, 1, 1, 1};
    std::vector<double> a0 = {1.0, 0.0};
    CHECK_THROWS_AS(spectral_oracle(pp, sch, 1.0, a0, 0.1), std::invalid_argument);
}

TEST_CASE("closed-loop FD solution converges to the oracle at second order") {
    const DesignParams dp;
    const auto sch = select_schedule(11.0, dp, 1.0);
    PlantParams truth{1.0, 11.0, 1.0};
    const double horizon = 0.25;
    const int n_modes = 30;

    // oracle seeded with high-resolution modal data of the shared IC
    SpatialGrid fine{4001};
    const auto u0_fine = make_profile(fine, 0.0, [](double x) {
        return std::sqrt(2.0) * std::sin(kPi * x) + x * x - x * x * x;
    });
    const auto a0 = modal_coefficients(u0_fine, fine, n_modes);
    const auto a_ref = spectral_oracle(truth, sch, 1.0, a0, horizon);

    auto fd_error = [&](int m, double dt) {
        SpatialGrid grid{m};
        SolverConfig solver;
        solver.dt = dt;
        solver.record_stride = 1 << 20;  // endpoints only
        solver.n_max = n_modes;
        const auto u0 = make_profile(grid, 0.0, [](double x) {
            return std::sqrt(2.0) * std::sin(kPi * x) + x * x - x * x * x;
        });
        const auto res = run_nominal(truth, u0, NominalKind::Truncated, dp,
                                     DesignBackend::Backstepping, grid, solver, horizon);
        const auto a_fd = modal_coefficients(res.final_state, grid, n_modes);
        double err2 = 0.0;
        for (int n = 0; n < n_modes; ++n) {
            const double d = a_fd[n] - a_ref[n];
            err2 += d * d;
        }
        return std::sqrt(err2);
    };

    const double e_coarse = fd_error(100, 2e-4);
    const double e_fine = fd_error(199, 1e-4);
    const double ratio = e_coarse / e_fine;
    CHECK(ratio > 3.0);
    CHECK(ratio < 5.5);
}

TEST_CASE("sine-series identity residuals") {
    CHECK(series_identity_residual(0.0, 50) == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(series_identity_residual(1.0, 50) == doctest::Approx(0.0).epsilon(1e-15));
    const double r1000 = series_identity_residual(0.5, 1000);
    CHECK(r1000 < 1e-4);
    // closed form at x = 0.5 is 0.0625; envelope shrinks under term doubling
    double prev = series_identity_residual(0.5, 250);
    for (int n : {500, 1000, 2000, 4000}) {
        const double r = series_identity_residual(0.5, n);
        CHECK(r < prev);
        prev = r;
    }
}
