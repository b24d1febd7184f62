#include <doctest.h>

#include <cmath>
#include <random>

#include "rdc/backstepping.hpp"
#include "rdc/plant.hpp"
#include "rdc/quadrature.hpp"
#include "rdc/supervisor.hpp"

using namespace rdc;

namespace {

// k_n for theta = 11, beta = 0, p = 1, frozen from a 40-digit quadrature oracle.
constexpr double kGains11[20] = {
    -5.3285213915808240425, 1.3511728218112823926,  -0.85664091879047290705,
    0.6318998562083996647,  -0.50172824934304193566, 0.4164172362432067643,
    -0.35606343631921377422, 0.31106656762339364932, -0.27620671215790361321,
    0.24839538098221273905, -0.2256859716200893693,  0.20678967845634534265,
    -0.19081881889203510401, 0.17714181539213327714, -0.16529692851792923506,
    0.15493869833580589454, -0.14580347152327215986, 0.13768651719303663385,
    -0.13042642384132195113, 0.12389420877176276618};

constexpr double kKtildeSq11 = 32.72311711334656197776;

const DesignParams kDp{};  // beta 0, sigma 1, B 0.1

}  // namespace

TEST_CASE("kernel diagonal is the removable-singularity value") {
    CHECK(kernel_K(11.0, kDp, 1.0, 0.5, 0.5) == doctest::Approx(-2.75).epsilon(1e-13));
    CHECK(kernel_L(11.0, kDp, 1.0, 0.5, 0.5) == doctest::Approx(-2.75).epsilon(1e-13));
}

TEST_CASE("kernels vanish with a zero prefactor") {
    DesignParams dp = kDp;
    CHECK(kernel_K(0.0, dp, 1.0, 0.8, 0.3) == 0.0);
    CHECK(kernel_L(0.0, dp, 1.0, 0.8, 0.3) == 0.0);
}

TEST_CASE("kernel golden value at (z,s) = (1, 0.5)") {
    // -11 * 0.5 * I1(sqrt(8.25))/sqrt(8.25), frozen from the oracle
    CHECK(kernel_K(11.0, kDp, 1.0, 1.0, 0.5) ==
          doctest::Approx(-6.746871332674040589079).epsilon(1e-12));
}

TEST_CASE("ktilde branches") {
    CHECK(ktilde(-3.0, 0.4, kDp, 1.0) == 0.0);
    CHECK(ktilde(11.0, 0.0, kDp, 1.0) == 0.0);
    CHECK(ktilde(11.0, 0.5, kDp, 1.0) ==
          doctest::Approx(kernel_K(11.0, kDp, 1.0, 1.0, 0.5)).epsilon(1e-15));
}

TEST_CASE("kernels agree to first order for small theta+beta") {
    const double th = 1e-3;
    const double K = kernel_K(th, kDp, 1.0, 0.9, 0.2);
    const double L = kernel_L(th, kDp, 1.0, 0.9, 0.2);
    CHECK(std::abs(K - L) <= 1e-3 * std::abs(K));
}

TEST_CASE("modal gains against the frozen quadrature oracle") {
    SUBCASE("high-resolution quadrature hits the oracle values") {
        DesignParams fine = kDp;
        fine.quad_panels = 400000;
        const auto g = modal_gains(11.0, 20, fine, 1.0);
        for (int n = 0; n < 20; ++n)
            CHECK(g[n] == doctest::Approx(kGains11[n]).epsilon(2e-7));
    }
    SUBCASE("default resolution stays within its quadrature error model") {
        const auto g = modal_gains(11.0, 20, kDp, 1.0);
        for (int n = 0; n < 20; ++n) {
            // composite-trapezoid error grows like (n pi h)^2
            const double tol = 1e-7 + 5e-9 * (n + 1.0) * (n + 1.0) * kPi * kPi;
            CHECK(std::abs(g[n] - kGains11[n]) < tol);
        }
    }
    SUBCASE("zero for theta <= 0") {
        const auto z = modal_gains(-2.0, 5, kDp, 1.0);
        for (double v : z) CHECK(v == 0.0);
    }
}

TEST_CASE("gain energy obeys the basis inequality") {
    const double k2 = ktilde_sq_integral(11.0, kDp, 1.0);
    CHECK(k2 == doctest::Approx(kKtildeSq11).epsilon(1e-8));
    const auto g = modal_gains(11.0, 30, kDp, 1.0);
    double sum = 0.0, prev_tail = k2;
    for (int n = 0; n < 30; ++n) {
        sum += g[n] * g[n];
        CHECK(sum <= k2 * (1.0 + 1e-12));
        const double tail = k2 - sum;
        CHECK(tail <= prev_tail + 1e-14);  // monotone truncation energy
        prev_tail = tail;
    }
}

TEST_CASE("gamma coefficient, both branches") {
    CHECK(gamma_coeff(kDp, 1.0) == doctest::Approx(0.673800316417501278135).epsilon(1e-14));
    DesignParams mu1 = kDp;
    mu1.beta = 1.0;
    CHECK(gamma_coeff(mu1, 1.0) == doctest::Approx(0.6268206001480874416612).epsilon(1e-13));
    SUBCASE("grows with B") {
        DesignParams b10 = kDp;
        b10.B = 10.0;
        CHECK(gamma_coeff(b10, 1.0) > gamma_coeff(kDp, 1.0));
    }
    SUBCASE("pole guard") {
        DesignParams bad = kDp;
        bad.sigma = kPi * kPi;
        CHECK_THROWS_AS(gamma_coeff(bad, 1.0), std::exception);
    }
}

TEST_CASE("mode-count selection reproduces the reference table") {
    const std::pair<double, int> table[] = {
        {0.1, 1}, {3.0, 1}, {5.0, 2},  {6.0, 3},  {7.0, 5},          {8.0, 7},
        {9.0, 10}, {kPi * kPi, 13}, {10.0, 14}, {11.0, 19}, {12.0, 25}};
    int prev_n = 0;
    for (const auto& [th, n_expect] : table) {
        const auto sch = select_schedule(th, kDp, 1.0);
        CHECK(sch.N == n_expect);
        CHECK(sch.N >= prev_n);  // nondecreasing over the grid
        CHECK(sch.R >= 1.0);
        CHECK(sch.omega == doctest::Approx(1.0));
        prev_n = sch.N;
    }
    SUBCASE("quadrature refinement does not move the counts") {
        DesignParams fine = kDp;
        fine.quad_panels = 20000;
        for (const auto& [th, n_expect] : table)
            CHECK(select_schedule(th, fine, 1.0).N == n_expect);
    }
}

TEST_CASE("selection for nonpositive theta is the trivial schedule") {
    const auto sch = select_schedule(-5.0, kDp, 1.0);
    CHECK(sch.N == 1);
    CHECK(sch.R == 1.0);
    CHECK(sch.omega == doctest::Approx(kPi * kPi));
    CHECK(sch.k == std::vector<double>{0.0});
}

TEST_CASE("mode-count search cap is an error, not a loop") {
    DesignParams harsh = kDp;
    harsh.sigma = kPi * kPi - 1e-7;  // gamma explodes near the pole
    harsh.quad_panels = 500;
    harsh.n_cap = 50;
    CHECK_THROWS_AS(select_schedule(11.0, harsh, 1.0), std::runtime_error);
}

TEST_CASE("volterra transform round-trip") {
    SUBCASE("identity cases") {
        std::vector<double> prof(101);
        for (int i = 0; i <= 100; ++i)
            prof[i] = std::sqrt(2.0) * std::sin(kPi * i / 100.0);
        DesignParams dp = kDp;
        CHECK(volterra_roundtrip(prof, 0.0, dp, 1.0) == doctest::Approx(0.0).epsilon(1e-15));
        std::vector<double> zero(101, 0.0);
        CHECK(volterra_roundtrip(zero, 11.0, dp, 1.0) == 0.0);
    }
    SUBCASE("quantitative at 1000 points, second-order refinement") {
        auto dist = [](int pts) {
            std::vector<double> prof(pts);
            for (int i = 0; i < pts; ++i)
                prof[i] = std::sqrt(2.0) * std::sin(kPi * i / (pts - 1.0));
            return volterra_roundtrip(prof, 11.0, kDp, 1.0);
        };
        const double d1000 = dist(1000);
        CHECK(d1000 < 1e-3);  // profile norm is 1
        const double d2000 = dist(2000);
        CHECK(d1000 / d2000 > 2.5);
    }
}

TEST_CASE("decay certificate holds on simulated nominal loops") {
    std::mt19937 rng(20240817);
    std::uniform_real_distribution<double> coef(-1.0, 1.0);
    SpatialGrid grid{60};
    SolverConfig solver;
    solver.dt = 2e-4;
    solver.record_stride = 5;
    for (double theta : {-2.0, 0.5, 6.0}) {
        PlantParams truth{1.0, theta, 1.0};
        for (int trial = 0; trial < 3; ++trial) {
            const double c1 = coef(rng), c2 = coef(rng), c3 = coef(rng);
            const auto u0 = make_profile(grid, 0.0, [&](double x) {
                return c1 * std::sin(kPi * x) + c2 * std::sin(2 * kPi * x) +
                       c3 * (x * x - x * x * x);
            });
            const auto sch = select_schedule(theta, kDp, 1.0);
            const auto res = run_nominal(truth, u0, NominalKind::Truncated, kDp,
                                         DesignBackend::Backstepping, grid, solver, 1.0);
            for (std::size_t i = 0; i < res.times.size(); ++i) {
                const double bound =
                    sch.R * std::exp(-sch.omega * res.times[i]) * res.norm0;
                CHECK(res.norms[i] <= bound * (1.0 + 1e-6) + 1e-12);
            }
        }
    }
}
