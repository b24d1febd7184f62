#include <doctest.h>

#include <cmath>

#include "rdc/passive.hpp"
#include "rdc/scenario.hpp"

using namespace rdc;

namespace {

StateProfile paper_ic(const SpatialGrid& g) {
    return make_profile(g, 0.0, [](double x) {
        return std::sqrt(2.0) * std::sin(kPi * x) + x * x - x * x * x;
    });
}

}  // namespace

TEST_CASE("matched observer freezes the estimate to leading order") {
    SpatialGrid grid{80};
    PlantParams truth{1.0, 11.0, 1.0};
    PassiveConfig cfg;
    StateProfile u = paper_ic(grid);
    PassiveState ps{u, 5.0};
    const double dt = 1e-4;
    step_passive(u, ps, truth, cfg, DesignParams{}, grid, dt);
    // u_hat(0) = u(0): the update integrand starts at zero, so the first move
    // is second order in dt
    CHECK(std::abs(ps.theta_hat - 5.0) < cfg.adaptation_gain * dt * dt * 50.0);
}

TEST_CASE("vanishing adaptation gain keeps theta constant") {
    SpatialGrid grid{60};
    PlantParams truth{1.0, 11.0, 1.0};
    SolverConfig solver;
    solver.dt = 2e-4;
    PassiveConfig cfg;
    cfg.adaptation_gain = 1e-12;
    cfg.theta0 = 3.0;
    const auto r = run_passive(truth, paper_ic(grid), cfg, DesignParams{}, grid, solver, 0.2);
    for (double th : r.theta_hats) CHECK(th == doctest::Approx(3.0).epsilon(1e-9));
}

TEST_CASE("observer tracks the plant when the estimate is the truth") {
    SpatialGrid grid{80};
    PlantParams truth{1.0, 11.0, 1.0};
    PassiveConfig cfg;
    cfg.adaptation_gain = 1e-12;  // hold theta_hat at the true value
    cfg.theta0 = 11.0;
    StateProfile u = paper_ic(grid);
    PassiveState ps{u, cfg.theta0};
    const double dt = 1e-4;
    double max_gap = 0.0;
    for (int k = 0; k < 2000; ++k) {
        step_passive(u, ps, truth, cfg, DesignParams{}, grid, dt);
        std::vector<double> diff(u.values.size());
        for (std::size_t j = 0; j < diff.size(); ++j)
            diff[j] = u.values[j] - ps.u_hat.values[j];
        max_gap = std::max(max_gap, l2_norm_uniform(diff, grid.dx()));
    }
    CHECK(max_gap < 5e-3 * profile_norm(paper_ic(grid), grid));
}

TEST_CASE("frozen true estimate reproduces the full-kernel nominal loop") {
    SpatialGrid grid{80};
    PlantParams truth{1.0, 11.0, 1.0};
    SolverConfig solver;
    solver.dt = 1e-4;
    solver.record_stride = 20;
    PassiveConfig cfg;
    cfg.adaptation_gain = 1e-12;
    cfg.theta0 = 11.0;
    const auto pr = run_passive(truth, paper_ic(grid), cfg, DesignParams{}, grid, solver, 0.5);
    const auto nr = run_nominal(truth, paper_ic(grid), NominalKind::FullKernel, DesignParams{},
                                DesignBackend::Backstepping, grid, solver, 0.5);
    REQUIRE(pr.times.size() == nr.times.size());
    for (std::size_t i = 0; i < pr.times.size(); ++i)
        CHECK(pr.norms[i] == doctest::Approx(nr.norms[i]).epsilon(1e-9));
}

TEST_CASE("comparison report on identical runs is all zeros") {
    SpatialGrid grid{60};
    PlantParams truth{1.0, 11.0, 1.0};
    SolverConfig solver;
    solver.dt = 2e-4;
    const auto a = run_nominal(truth, paper_ic(grid), NominalKind::Truncated, DesignParams{},
                               DesignBackend::Backstepping, grid, solver, 0.3);
    const auto rep = compare_runs(a, a);
    CHECK(rep.peak_a == rep.peak_b);
    CHECK(rep.t_tenth_a == rep.t_tenth_b);
    CHECK(rep.max_abs_norm_gap == 0.0);
}

TEST_CASE("comparison rejects mismatched initial data") {
    SpatialGrid grid{60};
    PlantParams truth{1.0, 11.0, 1.0};
    SolverConfig solver;
    solver.dt = 2e-4;
    const auto a = run_nominal(truth, paper_ic(grid), NominalKind::Truncated, DesignParams{},
                               DesignBackend::Backstepping, grid, solver, 0.2);
    auto u2 = paper_ic(grid);
    for (auto& v : u2.values) v *= 2.0;
    const auto b = run_nominal(truth, u2, NominalKind::Truncated, DesignParams{},
                               DesignBackend::Backstepping, grid, solver, 0.2);
    CHECK_THROWS_AS(compare_runs(a, b), std::invalid_argument);
}
