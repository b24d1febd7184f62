#include <doctest.h>

#include <cmath>

#include "rdc/plant.hpp"
#include "rdc/quadrature.hpp"

using namespace rdc;

namespace {

StateProfile sine_ic(const SpatialGrid& g, double amp = 1.0) {
    return make_profile(g, 0.0,
                        [amp](double x) { return amp * std::sqrt(2.0) * std::sin(kPi * x); });
}

}  // namespace

TEST_CASE("zero state with zero input is invariant") {
    SpatialGrid grid{100};
    PlantParams pp{1.0, 11.0, 1.0};
    CrankNicolson cn(grid, pp);
    StateProfile u = make_profile(grid, 0.0, [](double) { return 0.0; });
    for (int k = 0; k < 50; ++k) u = cn.step(u, 0.0, 1e-3);
    CHECK(profile_norm(u, grid) == 0.0);
}

TEST_CASE("modal projection on the orthonormal basis") {
    SpatialGrid grid{1001};
    const auto u = sine_ic(grid);
    CHECK(modal_project(u, grid, 1) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-6));
    CHECK(modal_project(u, grid, 2) == doctest::Approx(0.0).epsilon(1e-10));
}

TEST_CASE("modal projection of x^2 - x^3 against the quadrature oracle") {
    // frozen from a 1e6-point reference quadrature
    const double golden = 0.06450306886639897836884;
    SpatialGrid grid{2001};
    const auto u = make_profile(grid, 0.0, [](double x) { return x * x - x * x * x; });
    CHECK(modal_project(u, grid, 1) == doctest::Approx(golden).epsilon(1e-6));
}

TEST_CASE("boundary pinning is exact") {
    SpatialGrid grid{80};
    PlantParams pp{1.0, 5.0, 2.0};
    CrankNicolson cn(grid, pp);
    StateProfile u = sine_ic(grid);
    const double U = 0.37;
    u = cn.step(u, pp.c * U, 1e-4);
    CHECK(u.values.front() == 0.0);
    CHECK(u.values.back() == pp.c * U);

    SUBCASE("the single-step wrapper carries the gain into the boundary") {
        SolverConfig cfg;
        cfg.dt = 1e-4;
        const auto next = step_fd(u, pp, U, grid, cfg);
        CHECK(next.values.back() == pp.c * U);
        CHECK(next.t == doctest::Approx(u.t + cfg.dt));
    }
}

TEST_CASE("pure heat mode decays at the continuum rate") {
    SpatialGrid grid{200};
    PlantParams pp{1.0, 0.0, 1.0};
    CrankNicolson cn(grid, pp);
    StateProfile u = sine_ic(grid);
    const double a0 = modal_project(u, grid, 1);
    const double dt = 2.5e-5, t_end = 0.1;
    for (int k = 0; k < static_cast<int>(t_end / dt); ++k) u = cn.step(u, 0.0, dt);
    const double expected = std::exp(-kPi * kPi * t_end) * a0;
    CHECK(modal_project(u, grid, 1) == doctest::Approx(expected).epsilon(2e-4));
}

TEST_CASE("open-loop growth rate matches theta - pi^2") {
    SpatialGrid grid{100};
    PlantParams pp{1.0, 11.0, 1.0};
    CrankNicolson cn(grid, pp);
    StateProfile u = sine_ic(grid);
    const double dt = 1e-4;
    const double a_start = modal_project(u, grid, 1);
    for (int k = 0; k < 10000; ++k) u = cn.step(u, 0.0, dt);
    const double a_end = modal_project(u, grid, 1);
    const double rate = std::log(a_end / a_start) / 1.0;
    CHECK(rate == doctest::Approx(11.0 - kPi * kPi).epsilon(2e-3));
    CHECK(a_end > a_start);  // confirmed unstable
}

TEST_CASE("free modal decay converges at second order") {
    // halving dx and dt cuts the a_1 error by about 4
    auto mode_error = [](int m, double dt) {
        SpatialGrid grid{m};
        PlantParams pp{1.0, 3.0, 1.0};
        CrankNicolson cn(grid, pp);
        StateProfile u = sine_ic(grid);
        const double a0 = modal_project(u, grid, 1);
        const double t_end = 0.2;
        for (int k = 0; k < static_cast<int>(std::llround(t_end / dt)); ++k)
            u = cn.step(u, 0.0, dt);
        const double exact = std::exp((3.0 - kPi * kPi) * t_end) * a0;
        return std::abs(modal_project(u, grid, 1) - exact);
    };
    const double e1 = mode_error(51, 4e-4);
    const double e2 = mode_error(101, 1e-4);
    const double ratio = e1 / e2;
    CHECK(ratio > 2.8);
    CHECK(ratio < 6.0);
}

TEST_CASE("trace cumulatives difference back to the samples") {
    ModalTrace tr(2);
    const double dt = 0.1;
    std::vector<double> a(2);
    for (int k = 0; k <= 10; ++k) {
        a[0] = std::sin(0.3 * k);
        a[1] = std::cos(0.2 * k);
        tr.push(k * dt, a, 0.5 * k, 1.0);
    }
    for (int k = 1; k <= 10; ++k) {
        const double dF = tr.F(1)[k] - tr.F(1)[k - 1];
        const double mid = 0.5 * dt * (tr.a(1)[k] + tr.a(1)[k - 1]);
        CHECK(dF == doctest::Approx(mid).epsilon(1e-15));
        const double dV = tr.V()[k] - tr.V()[k - 1];
        CHECK(dV == doctest::Approx(0.5 * dt * (tr.U()[k] + tr.U()[k - 1])).epsilon(1e-15));
    }
    CHECK(tr.F(1)[0] == 0.0);
    CHECK(tr.V()[0] == 0.0);
}

TEST_CASE("blow-up guard fires on runaway states") {
    SpatialGrid grid{50};
    StateProfile u = sine_ic(grid, 1e13);
    CHECK_THROWS_AS(check_finite(u, grid, 1e12), BlowUpError);
    StateProfile bad = sine_ic(grid);
    bad.values[10] = std::nan("");
    CHECK_THROWS_AS(check_finite(bad, grid, 1e12), BlowUpError);
}

TEST_CASE("feedback step closes the boundary equation exactly") {
    SpatialGrid grid{100};
    PlantParams pp{1.0, 11.0, 1.0};
    CrankNicolson cn(grid, pp);
    StateProfile u = sine_ic(grid);
    // arbitrary feedback row
    std::vector<double> w(grid.n_points);
    const double dx = grid.dx();
    for (int j = 0; j < grid.n_points; ++j)
        w[j] = ((j == 0 || j == grid.n_points - 1) ? 0.5 * dx : dx) * 0.8 *
               std::sin(2.0 * kPi * grid.x(j));
    double b = 0.0;
    u = cn.step_feedback(u, w, 1e-4, &b);
    double lhs = 0.0;
    for (int j = 0; j < grid.n_points; ++j) lhs += w[j] * u.values[j];
    CHECK(u.values.back() == doctest::Approx(b).epsilon(1e-15));
    CHECK(lhs == doctest::Approx(b).epsilon(1e-12));
}
